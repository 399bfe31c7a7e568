#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wgqed/scatter_exact.hpp"

namespace wgqed {

inline constexpr std::string_view kSpectrumHeader = "delta_omega,re_r,im_r,R,phase,T,loss";

// Spectrum as CSV: fixed header, 12 significant digits, LF line endings.
std::string spectrum_csv(const Spectrum& spectrum);

// Generic table with the same number formatting.
std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

// Parses a spectrum CSV and checks every row: R = re^2 + im^2, phase in
// (-pi, pi], 0 <= R, T <= 1 and loss = 1 - R - T >= 0, all to the printed
// precision. Throws Error naming the offending line.
std::vector<ScatterPoint> read_spectrum_csv(std::string_view text);

// Writes to a sibling temporary file and renames it over the target, so a
// reader never sees a partial file. Creates missing parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace wgqed
