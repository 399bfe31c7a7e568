#include <cmath>
#include <random>

#include "doctest.h"

#include "wgqed/core_model.hpp"
#include "wgqed/errors.hpp"

using namespace wgqed;

TEST_SUITE("core-model") {

TEST_CASE("uniform chain positions") {
  const EmitterChain one = build_uniform_chain(1, 0.5);
  REQUIRE(one.size() == 1);
  CHECK(one[0].z == 0.0);
  CHECK(one[0].delta == 0.0);
  CHECK(one.reference() == Reference::Resonance);

  const EmitterChain five = build_uniform_chain(5, 0.25);
  const double expected[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t j = 0; j < 5; ++j) CHECK(five[j].z == doctest::Approx(expected[j]));

  const EmitterChain fifty = build_uniform_chain(50, 0.01);
  CHECK(fifty.size() == 50);
  CHECK(fifty.length() == doctest::Approx(0.49).epsilon(1e-12));
}

TEST_CASE("modulated chain detunings") {
  const EmitterChain c = build_modulated_chain(5, 0.25, 0.4);
  const double expected[] = {0.8, 0.4, 0.0, -0.4, -0.8};
  for (std::size_t j = 0; j < 5; ++j) CHECK(c[j].delta == doctest::Approx(expected[j]));
  CHECK(c.reference() == Reference::CentralAtom);

  const EmitterChain three = build_modulated_chain(3, 0.25, 1.0);
  CHECK(three[0].delta == 1.0);
  CHECK(three[1].delta == 0.0);
  CHECK(three[2].delta == -1.0);

  CHECK(build_modulated_chain(5, 0.25, 0.0) == build_uniform_chain(5, 0.25));

  const EmitterChain even = build_modulated_chain(4, 0.25, 1.0);
  CHECK(even[0].delta == 1.5);
  CHECK(even[3].delta == -1.5);
}

TEST_CASE("builder preconditions") {
  CHECK_THROWS_AS(build_uniform_chain(0, 0.25), InvalidParameter);
  CHECK_THROWS_AS(build_uniform_chain(3, 0.0), InvalidParameter);
  CHECK_THROWS_AS(build_uniform_chain(3, -0.1), InvalidParameter);
  CHECK_THROWS_AS(build_uniform_chain(3, 0.25, 0.0), InvalidParameter);
  CHECK_THROWS_AS(build_uniform_chain(3, 0.25, 1.0, -0.1), InvalidParameter);
  CHECK_THROWS_AS(build_modulated_chain(0, 0.25, 0.4), InvalidParameter);
  try {
    build_uniform_chain(3, -1.0);
    FAIL("expected an exception");
  } catch (const InvalidParameter& e) {
    CHECK(e.field() == "d");
  }
}

TEST_CASE("chain invariants are enforced") {
  CHECK_THROWS_AS(EmitterChain({}), InvalidParameter);
  CHECK_THROWS_AS(EmitterChain({{0.0, 0, 1, 0}, {0.0, 0, 1, 0}}), InvalidParameter);
  CHECK_THROWS_AS(EmitterChain({{0.5, 0, 1, 0}, {0.2, 0, 1, 0}}), InvalidParameter);
  CHECK_THROWS_AS(EmitterChain({{0.0, 0, 0, 0}}), InvalidParameter);
  CHECK_THROWS_AS(EmitterChain({{0.0, 0, 1, -1}}), InvalidParameter);
  CHECK_THROWS_AS(EmitterChain({{NAN, 0, 1, 0}}), InvalidParameter);
}

TEST_CASE("chain helpers") {
  const EmitterChain c = build_modulated_chain(3, 0.2, 0.5, 2.0, 0.1);
  CHECK_FALSE(c.lossless());
  CHECK(c.uniform_spacing().value() == doctest::Approx(0.2));
  CHECK(c.detuning_spread() == doctest::Approx(0.5));
  const EmitterChain lossless = c.with_loss(0.0);
  CHECK(lossless.lossless());
  const EmitterChain rev = c.reversed();
  CHECK(rev[0].z == 0.0);
  CHECK(rev[0].delta == doctest::Approx(-0.5));
  CHECK(rev[2].z == doctest::Approx(0.4));
  CHECK(rev.reversed() == c);
  CHECK_FALSE(EmitterChain({{0, 0, 1, 0}, {0.1, 0, 1, 0}, {0.3, 0, 1, 0}}).uniform_spacing());
}

TEST_CASE("frequency grid") {
  const FrequencyGrid g = FrequencyGrid::linspace(-3, 3, 601);
  CHECK(g.size() == 601);
  CHECK(g[0] == -3.0);
  CHECK(g[600] == 3.0);
  CHECK(g[300] == doctest::Approx(0.0));
  CHECK(FrequencyGrid::linspace(0, 0, 1).size() == 1);
  CHECK_THROWS_AS(FrequencyGrid({0.0, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(FrequencyGrid({1.0, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(FrequencyGrid({0.0, INFINITY}), InvalidParameter);
  CHECK_THROWS_AS(FrequencyGrid::linspace(0, 1, 0), InvalidParameter);
}

TEST_CASE("spatial phase examples") {
  const cd half = spatial_phase(PhaseModel::rigid(), 0.7, 0.5);
  CHECK(std::abs(half - cd(-1.0, 0.0)) < 1e-14);
  const cd quarter = spatial_phase(PhaseModel::rigid(), 3.0, 0.25);
  CHECK(std::abs(quarter - cd(0.0, 1.0)) < 1e-14);
  const cd disp = spatial_phase(PhaseModel::dispersive(1e6), 0.0, 0.25);
  CHECK(std::abs(disp - cd(0.0, 1.0)) < 1e-14);
  CHECK_THROWS_AS(PhaseModel::dispersive(0.0), InvalidParameter);
  CHECK_THROWS_AS(PhaseModel::dispersive(-5.0), InvalidParameter);
}

TEST_CASE("property: builders produce valid chains") {
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> n_dist(1, 40);
  std::uniform_real_distribution<double> d_dist(1e-3, 2.0);
  std::uniform_real_distribution<double> g_dist(0.01, 10.0);
  std::uniform_real_distribution<double> delta_dist(-3.0, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = n_dist(rng);
    const double d = d_dist(rng);
    const double g = g_dist(rng);
    const double loss = g_dist(rng) * 0.1;
    const EmitterChain c = build_modulated_chain(n, d, delta_dist(rng), g, loss);
    REQUIRE(c.size() == static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < c.size(); ++j) {
      CHECK(c[j].gamma1d > 0.0);
      CHECK(c[j].gamma_ext >= 0.0);
      if (j > 0) CHECK(c[j].z > c[j - 1].z);
    }
    const EmitterChain u = build_uniform_chain(n, d, g, loss);
    CHECK(build_modulated_chain(n, d, 0.0, g, loss) == u);
  }
}

TEST_CASE("property: phase modulus and rigid independence of detuning") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  std::uniform_real_distribution<double> ratio(1.0, 1e6);
  for (int i = 0; i < 500; ++i) {
    const double distance = dist(rng);
    CHECK(std::abs(std::abs(spatial_phase(PhaseModel::dispersive(ratio(rng)), dist(rng),
                                          distance)) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(spatial_phase(PhaseModel::rigid(), 0.0, distance)) - 1.0) < 1e-14);
  }
  const double distance = 0.3141;
  const cd ref = spatial_phase(PhaseModel::rigid(), 0.0, distance);
  for (int i = 0; i < 100; ++i) CHECK(spatial_phase(PhaseModel::rigid(), dist(rng), distance) == ref);
}

}  // TEST_SUITE
