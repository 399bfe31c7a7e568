#include <cmath>
#include <random>

#include "doctest.h"
#include "test_util.hpp"

#include "wgqed/eigen_band.hpp"
#include "wgqed/errors.hpp"

using namespace wgqed;

namespace {

EigenmodeSet modes(const EmitterChain& c) {
  return eigenmodes(build_heff(c), incident_vector(c, PhaseModel::rigid(), 0.0));
}

}  // namespace

TEST_SUITE("eigen-band") {

TEST_CASE("effective Hamiltonian examples") {
  const ComplexMatrix h1 = build_heff(build_uniform_chain(1, 0.25)).h;
  CHECK(std::abs(h1(0, 0) - cd(0.0, -0.5)) < 1e-15);

  const ComplexMatrix h2 = build_heff(build_uniform_chain(2, 0.25)).h;
  CHECK(std::abs(h2(0, 1) - cd(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(h2(1, 0) - cd(0.5, 0.0)) < 1e-15);

  const ComplexMatrix h5 = build_heff(build_uniform_chain(5, 0.5)).h;
  for (int j = 0; j < 5; ++j) {
    for (int l = 0; l < 5; ++l) {
      if (j == l) continue;
      const double sign = (std::abs(j - l) % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(h5(j, l) - cd(0.0, -0.5 * sign)) < 1e-14);
    }
  }

  const EmitterChain lossy = build_modulated_chain(3, 0.2, 0.5, 1.0, 0.1);
  const ComplexMatrix with = build_heff(lossy, PhaseModel::rigid(), true).h;
  const ComplexMatrix without = build_heff(lossy, PhaseModel::rigid(), false).h;
  for (int j = 0; j < 3; ++j) {
    CHECK(with(j, j).imag() == doctest::Approx(-0.55));
    CHECK(without(j, j).imag() == doctest::Approx(-0.5));
    CHECK(with(j, j).real() == doctest::Approx(lossy[j].delta));
  }
}

TEST_CASE("eigenmode examples") {
  const EigenmodeSet two = modes(build_uniform_chain(2, 0.25));
  REQUIRE(two.modes.size() == 2);
  CHECK(std::abs(two.modes[0].lambda - cd(-0.5, -0.5)) < 1e-12);
  CHECK(std::abs(two.modes[1].lambda - cd(0.5, -0.5)) < 1e-12);

  const EigenmodeSet bragg = modes(build_uniform_chain(5, 0.5));
  int bright = 0, dark = 0;
  for (const auto& m : bragg.modes) {
    if (std::abs(-m.lambda.imag() - 2.5) < 1e-8) ++bright;
    if (-m.lambda.imag() < 1e-8) ++dark;
  }
  CHECK(bright == 1);
  CHECK(dark == 4);

  const EigenmodeSet one = modes(build_uniform_chain(1, 0.25));
  REQUIRE(one.modes.size() == 1);
  CHECK(std::abs(one.modes[0].lambda - cd(0.0, -0.5)) < 1e-15);
  CHECK(one.modes[0].radiance == Radiance::Boundary);
}

TEST_CASE("radiance classification") {
  CHECK(classify_radiance(cd(0.0, -0.6)) == Radiance::Superradiant);
  CHECK(classify_radiance(cd(0.0, -0.4)) == Radiance::Subradiant);
  CHECK(classify_radiance(cd(1.0, -0.5 - 5e-10)) == Radiance::Boundary);
  CHECK(std::string(to_string(Radiance::Superradiant)) == "superradiant");
}

TEST_CASE("modal reflection examples") {
  CHECK(std::abs(reflection_modal(build_uniform_chain(1, 0.25), 0.0) - cd(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(reflection_modal(build_uniform_chain(2, 0.25), 0.0) - cd(-1.0, 0.0)) < 1e-12);
  const EmitterChain five = build_uniform_chain(5, 0.25);
  for (double w = -5.0; w <= 5.0; w += 0.1) {
    CHECK(std::abs(reflection_modal(five, w) - reflection_exact(five, w)) < 1e-8);
  }
}

TEST_CASE("dispersion and band gap examples") {
  const double q = 0.5 * kPi;
  CHECK(dispersion(q, 0.0) == doctest::Approx(0.5));
  CHECK(dispersion(q, kPi) == doctest::Approx(-0.5));
  CHECK(dispersion(q, 2.0 * kPi / 3.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(dispersion(q, q), DispersionPole);

  const GapReport quarter = bandgap(q);
  CHECK(quarter.width == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(quarter.edge_upper == doctest::Approx(0.5));
  CHECK(quarter.edge_lower == doctest::Approx(-0.5));
  CHECK(std::abs(quarter.center()) < 1e-14);
  CHECK(bandgap(kTwoPi * 0.024).width == doctest::Approx(6.66).epsilon(0.01 / 6.66));
  CHECK_THROWS_AS(bandgap(0.0), BraggDivergence);
  CHECK_THROWS_AS(bandgap(kPi), BraggDivergence);
}

TEST_CASE("property: gap width matches the band edges") {
  for (int i = 1; i < 200; ++i) {
    const double kd = kPi * i / 200.0;
    const GapReport g = bandgap(kd);
    CHECK(std::abs(g.width - (g.edge_upper - g.edge_lower)) < 1e-12 * std::max(1.0, g.width));
    CHECK(std::abs(g.width - 1.0 / std::sin(kd)) < 1e-12 * std::max(1.0, g.width));
    CHECK(g.edge_upper == doctest::Approx(dispersion(kd, 0.0)));
    CHECK(g.edge_lower == doctest::Approx(dispersion(kd, kPi)));
  }
}

TEST_CASE("property: trace identity, passivity and bilinear orthonormality") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const bool lossless = trial % 2 == 0;
    const EmitterChain c = testing::random_chain(rng, 20, lossless);
    const ComplexMatrix h = build_heff(c).h;
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    const EigenmodeSet set = eigenmodes({h}, incident_vector(c, PhaseModel::rigid(), 0.0));
    cd sum = 0.0;
    double decay = 0.0;
    for (const auto& m : set.modes) {
      sum += m.lambda;
      decay += -m.lambda.imag();
      CHECK(-m.lambda.imag() >= -1e-10);
    }
    CHECK(std::abs(sum - h.trace()) < 1e-10);
    if (lossless) {
      double expected = 0.0;
      for (const auto& a : c.atoms()) expected += 0.5 * a.gamma1d;
      CHECK(std::abs(decay - expected) < 1e-10);
    }
    if (set.near_defective) continue;
    const std::size_t n = set.modes.size();
    ComplexMatrix completeness = ComplexMatrix::Zero(c.size(), c.size());
    for (std::size_t a = 0; a < n; ++a) {
      completeness += set.modes[a].v * set.modes[a].v.transpose();
      for (std::size_t b = 0; b < n; ++b) {
        const cd dot = set.modes[a].v.cwiseProduct(set.modes[b].v).sum();
        CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-8);
      }
    }
    const auto n_int = static_cast<Eigen::Index>(c.size());
    CHECK((completeness - ComplexMatrix::Identity(n_int, n_int)).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("property: Bragg chains have one bright mode") {
  for (int n : {2, 3, 5, 8, 13}) {
    for (double d : {0.5, 1.0}) {
      const EigenmodeSet set = modes(build_uniform_chain(n, d));
      int bright = 0, dark = 0;
      for (const auto& m : set.modes) {
        if (std::abs(-m.lambda.imag() - 0.5 * n) < 1e-8) ++bright;
        if (-m.lambda.imag() < 1e-8) ++dark;
      }
      CHECK(bright == 1);
      CHECK(dark == n - 1);
    }
  }
}

TEST_CASE("property: eigenchannel sum agrees with the exact amplitudes") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> w(-6.0, 6.0);
  for (int trial = 0; trial < 100; ++trial) {
    const EmitterChain c = build_uniform_chain(1 + trial % 20, testing::random_separation(rng));
    const ModalScatterer modal(c, PhaseModel::rigid());
    for (int k = 0; k < 5; ++k) {
      const double x = w(rng);
      const Amplitudes a = modal(x);
      const Amplitudes e = scatter_exact(c, x);
      CHECK(std::abs(a.r - e.r) < 1e-8);
      CHECK(std::abs(a.t - e.t) < 1e-8);
    }
  }
}

TEST_CASE("near-defective Hamiltonians are refused") {
  // [[a, b], [b, -a]] with b = i a is a Jordan block: v^T v = 0.
  ComplexMatrix h(2, 2);
  h << cd(1.0, 0.0), cd(0.0, 1.0), cd(0.0, 1.0), cd(-1.0, 0.0);
  ComplexVector psi(2);
  psi << 1.0, 0.0;
  const EigenmodeSet set = eigenmodes({h}, psi);
  CHECK(set.near_defective);
  CHECK(set.min_bilinear_norm < 1e-8);
}

}  // TEST_SUITE
