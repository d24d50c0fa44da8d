#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

#include "cryomram/errors.hpp"
#include "cryomram/physics.hpp"

using namespace cryomram;
using physics::MaterialAnchors;

namespace {

physics::MaterialDeck room_deck() { return physics::calibrate_deck({0.66, 1.58, 1.3e-3}, 300.0); }

}  // namespace

TEST_CASE("constants are positive CODATA values") {
  const auto& c = physics::codata();
  CHECK(c.e == oracle::kE);
  CHECK(c.mu0 == oracle::kMu0);
  CHECK(c.gamma0 == oracle::kGamma0);
  CHECK(c.muB == oracle::kMuB);
  CHECK(c.kB == oracle::kKb);
}

TEST_CASE("77 K material values from the room-temperature anchors") {
  const auto d = room_deck();
  CHECK(physics::polarization_at(d, 77.0) == doctest::Approx(0.73).epsilon(0.005 / 0.73));
  CHECK(physics::saturation_magnetization_at(d, 77.0) == doctest::Approx(1.80).epsilon(0.01 / 1.80));
  CHECK(physics::anisotropy_at(d, 77.0) == doctest::Approx(1.73e-3).epsilon(0.02));
}

TEST_CASE("closed-form inversion oracle") {
  const auto d = room_deck();
  const double p0 = oracle::polarization_0k(0.66, 300.0);
  CHECK(d.P0 == doctest::Approx(p0).epsilon(1e-15));
  CHECK(physics::polarization_at(d, 77.0) == p0 * (1.0 - 2e-5 * std::pow(77.0, 1.5)));

  const double ms0 = oracle::ms_0k(1.58, 300.0);
  CHECK(ms0 == doctest::Approx(1.834).epsilon(1e-3));
  const double ms77 = ms0 * (1.0 - std::pow(77.0 / 1120.0, 1.5));
  CHECK(ms77 == doctest::Approx(1.801).epsilon(1e-3));
  CHECK(physics::saturation_magnetization_at(d, 77.0) == doctest::Approx(ms77).epsilon(1e-14));

  const double ki77 = 1.3e-3 * std::pow(ms77 / 1.58, 2.18);
  CHECK(ki77 == doctest::Approx(1.727e-3).epsilon(1e-3));
  CHECK(physics::anisotropy_at(d, 77.0) == doctest::Approx(ki77).epsilon(1e-13));
}

TEST_CASE("zero-temperature identities") {
  const auto d = room_deck();
  CHECK(physics::polarization_at(d, 0.0) == d.P0);
  CHECK(physics::saturation_magnetization_at(d, 0.0) == d.Ms0);
  CHECK(physics::anisotropy_at(d, 0.0) == d.Ki0);

  const auto z = physics::calibrate_deck({0.5, 1.2, 1e-3}, 0.0);
  CHECK(z.P0 == 0.5);
  CHECK(z.Ms0 == 1.2);
  CHECK(z.Ki0 == 1e-3);
}

TEST_CASE("domain errors") {
  const auto d = room_deck();
  CHECK_THROWS_AS(physics::polarization_at(d, -1.0), DomainError);
  CHECK_THROWS_AS(physics::polarization_at(d, 401.0), DomainError);
  CHECK_THROWS_AS(physics::saturation_magnetization_at(d, std::nan("")), DomainError);
  auto hot = d;
  hot.Tstar = 350.0;
  CHECK_THROWS_AS(physics::saturation_magnetization_at(hot, 360.0), DomainError);
  CHECK_THROWS_AS(physics::anisotropy_at(hot, 360.0), DomainError);
}

TEST_CASE("calibration errors") {
  CHECK_THROWS_AS(physics::calibrate_deck({0.99, 1.58, 1.3e-3}, 300.0), CalibrationError);
  CHECK_THROWS_AS(physics::calibrate_deck({0.66, -1.0, 1.3e-3}, 300.0), CalibrationError);
  CHECK_THROWS_AS(physics::calibrate_deck({1.2, 1.58, 1.3e-3}, 300.0), CalibrationError);
}

TEST_CASE("deck validation") {
  auto d = room_deck();
  CHECK_NOTHROW(physics::validate(d));
  d.alpha = 0.3;
  CHECK_THROWS_AS(physics::validate(d), Error);
  d = room_deck();
  d.beta = 1e-3;  // P turns negative well inside [0, 400] K
  CHECK_THROWS_AS(physics::validate(d), Error);
}

TEST_CASE("property: laws strictly decrease on a dense grid") {
  gen::Source g(11);
  for (int k = 0; k < 25; ++k) {
    const MaterialAnchors a{g.uniform(0.3, 0.7), g.uniform(0.8, 2.0), g.uniform(0.5e-3, 2e-3)};
    const auto d = physics::calibrate_deck(a, g.uniform(50.0, 350.0));
    double p = 2.0, m = 10.0, ki = 1.0;
    for (double t = 0.0; t <= 400.0; t += 0.5) {
      const double pn = physics::polarization_at(d, t);
      const double mn = physics::saturation_magnetization_at(d, t);
      const double kn = physics::anisotropy_at(d, t);
      if (t > 0.0) {
        REQUIRE(pn < p);
        REQUIRE(mn < m);
        REQUIRE(kn < ki);
      }
      p = pn;
      m = mn;
      ki = kn;
    }
  }
}

TEST_CASE("property: calibration round trip at the anchor") {
  gen::Source g(12);
  for (int k = 0; k < 200; ++k) {
    const MaterialAnchors a{g.uniform(0.3, 0.7), g.uniform(0.8, 2.0), g.uniform(0.5e-3, 2e-3)};
    const double ta = g.uniform(0.0, 400.0);
    const auto d = physics::calibrate_deck(a, ta);
    REQUIRE(std::abs(physics::polarization_at(d, ta) / a.polarization - 1.0) < 1e-12);
    REQUIRE(std::abs(physics::saturation_magnetization_at(d, ta) / a.ms_tesla - 1.0) < 1e-12);
    REQUIRE(std::abs(physics::anisotropy_at(d, ta) / a.ki - 1.0) < 1e-12);
  }
}

TEST_CASE("property: K_i tracks Ms to the deck exponent") {
  gen::Source g(13);
  for (int k = 0; k < 100; ++k) {
    physics::MaterialDeck fit;
    fit.ki_exponent = g.uniform(1.5, 3.0);
    const auto d = physics::calibrate_deck({g.uniform(0.3, 0.7), g.uniform(0.8, 2.0), g.uniform(0.5e-3, 2e-3)},
                                           300.0, fit);
    const double t = g.uniform(0.0, 400.0);
    const double lhs = physics::anisotropy_at(d, t) / d.Ki0;
    const double rhs = std::pow(physics::saturation_magnetization_at(d, t) / d.Ms0, fit.ki_exponent);
    REQUIRE(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}
