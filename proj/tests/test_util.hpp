#pragma once

#include <cmath>
#include <random>

#include "wgqed/core_model.hpp"

namespace wgqed::testing {

// Random separation in (0, 0.5) kept at least `margin` away from the Bragg points.
inline double random_separation(std::mt19937_64& rng, double margin = 0.01) {
  std::uniform_real_distribution<double> dist(margin, 0.5 - margin);
  return dist(rng);
}

// Irregular chain: random gaps, detunings, couplings and (optionally) loss.
inline EmitterChain random_chain(std::mt19937_64& rng, int max_n, bool lossless) {
  std::uniform_int_distribution<int> n_dist(1, max_n);
  std::uniform_real_distribution<double> gap(0.02, 0.6);
  std::uniform_real_distribution<double> detuning(-1.0, 1.0);
  std::uniform_real_distribution<double> coupling(0.3, 2.0);
  std::uniform_real_distribution<double> loss(0.0, 0.2);
  const int n = n_dist(rng);
  std::vector<Emitter> atoms;
  double z = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j > 0) z += gap(rng);
    atoms.push_back({z, detuning(rng), coupling(rng), lossless ? 0.0 : loss(rng)});
  }
  return EmitterChain(std::move(atoms));
}

}  // namespace wgqed::testing
