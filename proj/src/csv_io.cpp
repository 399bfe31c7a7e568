#include "wgqed/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

constexpr double kRowTol = 1e-9;

void append_number(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  out += buf;
}

void append_row(std::string& out, const double* values, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (i) out += ',';
    append_number(out, values[i]);
  }
  out += '\n';
}

std::vector<double> split_numbers(std::string_view line, std::size_t line_no) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t comma = line.find(',', start);
    const std::string cell(line.substr(start, comma == std::string_view::npos ? line.npos
                                                                               : comma - start));
    char* end = nullptr;
    const double x = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) {
      throw Error("line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
    }
    out.push_back(x);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string spectrum_csv(const Spectrum& spectrum) {
  std::string out(kSpectrumHeader);
  out += '\n';
  for (const auto& p : spectrum.points) {
    const double row[] = {p.delta_omega, p.r.real(), p.r.imag(), p.R, p.phase, p.T, p.loss};
    append_row(out, row, std::size(row));
  }
  return out;
}

std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& r : rows) append_row(out, r.data(), r.size());
  return out;
}

std::vector<ScatterPoint> read_spectrum_csv(std::string_view text) {
  std::vector<ScatterPoint> points;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!header_seen) {
      if (line != kSpectrumHeader) throw Error("line 1: unexpected spectrum header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto v = split_numbers(line, line_no);
    if (v.size() != 7) throw Error("line " + std::to_string(line_no) + ": expected 7 columns");
    ScatterPoint p;
    p.delta_omega = v[0];
    p.r = cd(v[1], v[2]);
    p.R = v[3];
    p.phase = v[4];
    p.T = v[5];
    p.loss = v[6];
    auto bad = [&](const char* what) {
      throw Error("line " + std::to_string(line_no) + ": " + what);
    };
    if (std::abs(p.R - std::norm(p.r)) > kRowTol) bad("R differs from |r|^2");
    if (!(p.phase > -kPi - kRowTol && p.phase <= kPi + kRowTol)) bad("phase outside (-pi, pi]");
    if (p.R < -kRowTol || p.R > 1.0 + kRowTol) bad("R outside [0, 1]");
    if (p.T < -kRowTol || p.T > 1.0 + kRowTol) bad("T outside [0, 1]");
    if (p.loss < -kRowTol) bad("negative loss");
    if (std::abs(p.R + p.T + p.loss - 1.0) > kRowTol) bad("R + T + loss differs from 1");
    if (p.R > kRowTol && std::abs(p.phase - std::arg(p.r)) > 1e-6 &&
        std::abs(std::abs(p.phase - std::arg(p.r)) - 2.0 * kPi) > 1e-6) {
      bad("phase differs from arg r");
    }
    points.push_back(p);
  }
  if (!header_seen) throw Error("empty spectrum file");
  return points;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace wgqed
