#include <cmath>
#include <random>

#include "doctest.h"
#include "test_util.hpp"

#include "wgqed/engines.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/scatter_classical.hpp"

using namespace wgqed;

TEST_SUITE("scatter-classical") {

TEST_CASE("single atom closed forms") {
  const MirrorCoefficients on = single_atom_rt(0.0, 1.0, 0.0);
  CHECK(std::abs(on.r - cd(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(on.t) < 1e-15);

  const MirrorCoefficients half = single_atom_rt(0.5, 1.0, 0.0);
  CHECK(std::norm(half.r) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::norm(half.t) == doctest::Approx(0.5).epsilon(1e-14));

  const MirrorCoefficients lossy = single_atom_rt(0.0, 1.0, 0.01);
  CHECK(std::abs(lossy.r - cd(-1.0 / 1.01, 0.0)) < 1e-15);

  // Closed forms at an arbitrary point.
  const double dw = 0.37, g = 1.3, loss = 0.07;
  const cd denom(g + loss, -2.0 * dw);
  const MirrorCoefficients m = single_atom_rt(dw, g, loss);
  CHECK(std::abs(m.r + g / denom) < 1e-15);
  CHECK(std::abs(m.t + cd(loss, -2.0 * dw) / denom) < 1e-15);
  CHECK(forward_transmission(m) == -m.t);
  CHECK_THROWS_AS(single_atom_rt(0.0, 0.0, 0.0), InvalidParameter);
}

TEST_CASE("property: lossless single atom conserves flux") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> w(-20.0, 20.0);
  std::uniform_real_distribution<double> g(0.1, 5.0);
  for (int i = 0; i < 500; ++i) {
    const MirrorCoefficients m = single_atom_rt(w(rng), g(rng), 0.0);
    CHECK(std::abs(std::norm(m.r) + std::norm(m.t) - 1.0) < 1e-14);
    const MirrorCoefficients l = single_atom_rt(w(rng), g(rng), 0.3);
    CHECK(std::norm(l.r) + std::norm(l.t) <= 1.0 + 1e-12);
  }
}

TEST_CASE("recurrence examples") {
  CHECK(std::abs(recurrence_reflection(build_uniform_chain(2, 0.25), 0.0) - cd(-1.0, 0.0)) < 1e-14);
  for (double w : {-2.0, -0.3, 0.0, 0.7}) {
    CHECK(recurrence_reflection(build_uniform_chain(1, 0.25), w) == single_atom_rt(w, 1.0, 0.0).r);
  }
  const EmitterChain five = build_uniform_chain(5, 0.25);
  for (double w = -5.0; w <= 5.0; w += 0.25) {
    CHECK(std::abs(recurrence_reflection(five, w + 1e-3) - reflection_exact(five, w + 1e-3)) < 1e-9);
  }
}

TEST_CASE("transfer matrix examples") {
  CHECK(TwoPortMatrix::identity().m12 == cd(0.0));
  CHECK(TwoPortMatrix::identity().m22 == cd(1.0));

  const MirrorCoefficients bragg = transfer_matrix_rt(build_uniform_chain(5, 0.5), 0.0);
  CHECK(std::norm(bragg.r) == doctest::Approx(1.0).epsilon(1e-12));

  // Two atoms: closed Fabry-Perot sum referenced to the first atom.
  const EmitterChain pair = build_uniform_chain(2, 0.25);
  for (double w = -3.0; w <= 3.0; w += 0.1) {
    const MirrorCoefficients m = single_atom_rt(w, 1.0, 0.0);
    const cd fp = fabry_perot_reflection(m, m, 0.5 * kPi);
    CHECK(std::abs(transfer_matrix_rt(pair, w).r - fp) < 1e-12);
    CHECK(std::abs(recurrence_reflection(pair, w) - fp) < 1e-12);
  }
}

TEST_CASE("matching matrix diverges at full reflection") {
  CHECK_THROWS_AS(matching_matrix(single_atom_rt(0.0, 1.0, 0.0)), ResonantDivergence);
  const TwoPortMatrix p = propagation_matrix(0.3);
  CHECK(std::abs(p.m11 - std::polar(1.0, 0.3)) < 1e-15);
  CHECK(std::abs(p.m22 - std::polar(1.0, -0.3)) < 1e-15);
  CHECK(std::abs(p.determinant() - 1.0) < 1e-15);
}

TEST_CASE("unscaled ensemble product agrees with the scaled one off resonance") {
  const EmitterChain c = build_uniform_chain(4, 0.17);
  for (double w : {-1.3, 0.4, 2.2}) {
    const TwoPortMatrix m = ensemble_transfer_matrix(c, w);
    const MirrorCoefficients rt = transfer_matrix_rt(c, w);
    // Same intensities; the amplitudes differ only by the reference plane.
    CHECK(std::norm(m.m12 / m.m22) == doctest::Approx(std::norm(rt.r)).epsilon(1e-12));
    CHECK(std::norm(1.0 / m.m22) == doctest::Approx(std::norm(rt.t)).epsilon(1e-12));
  }
}

TEST_CASE("property: flux-conserving two-port has unit-modulus determinant") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> w(-10.0, 10.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  for (int i = 0; i < 300; ++i) {
    double x = w(rng);
    if (std::abs(x) < 1e-6) x = 1e-3;
    const TwoPortMatrix cell = matching_matrix(single_atom_rt(x, 1.0, 0.0)) * propagation_matrix(phase(rng));
    CHECK(std::abs(std::abs(cell.determinant()) - 1.0) < 1e-10);
  }
}

TEST_CASE("property: classical engines reproduce the exact amplitudes") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> n_dist(1, 20);
  std::uniform_real_distribution<double> w(-10.0, 10.0);
  double worst_rec = 0.0, worst_tm = 0.0, worst_t = 0.0, worst_rec_t = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const EmitterChain c = build_uniform_chain(n_dist(rng), testing::random_separation(rng));
    const double x = w(rng);
    const Amplitudes exact = scatter_exact(c, x);
    const Amplitudes rec = recurrence_rt(c, x);
    const MirrorCoefficients tm = transfer_matrix_rt(c, x);
    worst_rec = std::max(worst_rec, std::abs(exact.r - rec.r));
    worst_rec_t = std::max(worst_rec_t, std::abs(exact.t - rec.t));
    worst_tm = std::max(worst_tm, std::abs(exact.r - tm.r));
    worst_t = std::max(worst_t, std::abs(exact.t - tm.t));
  }
  CHECK(worst_rec < 1e-9);
  CHECK(worst_rec_t < 1e-9);
  CHECK(worst_tm < 1e-9);
  CHECK(worst_t < 1e-9);
}

TEST_CASE("property: irregular lossy chains agree across engines") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> w(-4.0, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const EmitterChain c = testing::random_chain(rng, 15, false);
    const double x = w(rng);
    const Amplitudes exact = scatter_exact(c, x);
    for (Engine e : {Engine::Recurrence, Engine::TransferMatrix, Engine::Modal}) {
      const Amplitudes a = Scatterer(c, PhaseModel::rigid(), e).amplitudes(x);
      CHECK(std::abs(a.r - exact.r) < 1e-8);
      CHECK(std::abs(a.t - exact.t) < 1e-8);
    }
  }
}

TEST_CASE("dispersive phase model is honoured by every engine") {
  const EmitterChain c = build_modulated_chain(6, 0.21, 0.2);
  const PhaseModel model = PhaseModel::dispersive(20.0);
  for (double x : {-3.0, -0.5, 0.8, 2.5}) {
    const Amplitudes exact = scatter_exact(c, x, model);
    CHECK(std::abs(exact.r - scatter_exact(c, x).r) > 1e-6);
    for (Engine e : kAllEngines) {
      const Amplitudes a = Scatterer(c, model, e).amplitudes(x);
      CHECK(std::abs(a.r - exact.r) < 1e-9);
      CHECK(std::abs(a.t - exact.t) < 1e-9);
    }
  }
}

TEST_CASE("periodic fast path matches the general product") {
  const Emitter atom{0.0, 0.0, 1.0, 0.0};
  for (int n : {1, 2, 3, 7, 16, 33}) {
    const EmitterChain c = build_uniform_chain(n, 0.137);
    const cd gap = spatial_phase(PhaseModel::rigid(), 0.0, 0.137);
    for (double x : {-2.1, 0.3, 1.7}) {
      const Amplitudes fast = periodic_transfer_rt(atom, n, gap, x);
      const MirrorCoefficients slow = transfer_matrix_rt(c, x);
      CHECK(std::abs(fast.r - slow.r) < 1e-10);
      CHECK(std::abs(std::abs(fast.t) - std::abs(slow.t)) < 1e-10);
      const Amplitudes cached = Scatterer(c, PhaseModel::rigid(), Engine::TransferMatrix).amplitudes(x);
      CHECK(std::abs(cached.r - slow.r) < 1e-10);
      CHECK(std::abs(cached.t - slow.t) < 1e-10);
    }
  }
}

TEST_CASE("engine names round-trip") {
  for (Engine e : kAllEngines) CHECK(parse_engine(to_string(e)) == e);
  CHECK_FALSE(parse_engine("bogus").has_value());
}

}  // TEST_SUITE
