#include <algorithm>
#include <cmath>
#include <vector>

#include "decks.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

#include "cryomram/device.hpp"
#include "cryomram/errors.hpp"
#include "cryomram/rng.hpp"
#include "cryomram/switching.hpp"

using namespace cryomram;
using namespace cryomram::switching;

namespace {

MacrospinDevice cold13() { return macrospin_from(decks::dmtj13(), 77.0); }
MacrospinDevice cold40() { return macrospin_from(decks::dmtj40(), 77.0); }

std::vector<double> switching_times(const std::vector<SwitchingSample>& s) {
  std::vector<double> t;
  for (const auto& x : s) {
    if (x.switched) t.push_back(x.t_switch);
  }
  std::sort(t.begin(), t.end());
  return t;
}

/// Kolmogorov-Smirnov distance between sorted samples and a CDF.
template <class Cdf>
double ks_distance(const std::vector<double>& sorted, Cdf cdf) {
  double d = 0.0;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double f = cdf(sorted[k]);
    d = std::max({d, std::abs(f - (k + 1.0) / n), std::abs(f - k / n)});
  }
  return d;
}

double quantile(const std::vector<double>& sorted, double q) {
  return sorted[static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1))];
}

}  // namespace

TEST_CASE("macrospin parameters") {
  const auto m = cold13();
  CHECK(m.precession_rate() == doctest::Approx(oracle::kGamma0 * oracle::kMu0 * m.h_k_eff).epsilon(1e-12));
  CHECK(m.relaxation_time() == doctest::Approx((1.0 + 0.03 * 0.03) / (0.03 * m.precession_rate())).epsilon(1e-12));
  CHECK(m.delta == doctest::Approx(60.0).epsilon(0.01));
}

TEST_CASE("initial angle follows the thermal cone") {
  for (double delta : {5.0, 60.0}) {
    // Reference CDF of sin(t) exp(-delta sin^2 t) on [0, pi/2] by Simpson.
    const int n = 4000;
    std::vector<double> grid(n + 1), cdf(n + 1, 0.0);
    auto f = [&](double t) { return std::sin(t) * std::exp(-delta * std::sin(t) * std::sin(t)); };
    const double h = 0.5 * oracle::kPi / n;
    for (int k = 0; k <= n; ++k) grid[k] = k * h;
    for (int k = 1; k <= n; ++k) {
      const double a = grid[k - 1], b = grid[k];
      cdf[k] = cdf[k - 1] + (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    for (auto& c : cdf) c /= cdf.back();
    auto ref = [&](double t) {
      const auto k = std::min<std::size_t>(static_cast<std::size_t>(t / h), n - 1);
      const double w = (t - grid[k]) / h;
      return cdf[k] + w * (cdf[k + 1] - cdf[k]);
    };

    PhiloxStream rng(5, 0);
    std::vector<double> s(20000);
    for (auto& x : s) x = sample_initial_angle(delta, rng);
    std::sort(s.begin(), s.end());
    CHECK(s.front() >= 0.0);
    CHECK(s.back() <= 0.5 * oracle::kPi);
    CHECK(ks_distance(s, ref) < 0.015);
  }
}

TEST_CASE("simulate_switch is deterministic and thread-invariant") {
  SwitchingProblem p{cold13(), 20e-6, 5e-9, 99};
  const auto a = simulate_switch(p, 3);
  const auto b = simulate_switch(p, 3);
  CHECK(a.switched == b.switched);
  CHECK(a.t_switch == b.t_switch);
  CHECK(a.initial_angle == b.initial_angle);

  const auto one = simulate_trials(p, 64, 1);
  const auto four = simulate_trials(p, 64, 4);
  for (std::size_t k = 0; k < one.size(); ++k) {
    REQUIRE(one[k].t_switch == four[k].t_switch);
    REQUIRE(one[k].t_switch == simulate_switch(p, k).t_switch);
  }
  CHECK(one[3].t_switch == a.t_switch);

  p.seed = 100;
  CHECK(simulate_switch(p, 3).t_switch != a.t_switch);
}

TEST_CASE("property: switched samples respect t_max and the norm contract") {
  gen::Source g(31);
  for (int k = 0; k < 12; ++k) {
    auto m = g.integer(0, 1) ? cold13() : cold40();
    SwitchingProblem p{m, (g.integer(0, 1) ? 1.0 : -1.0) * g.uniform(1.2, 6.0) * m.i_c, g.uniform(0.5e-9, 5e-9),
                       g.seed(), g.uniform(0.5e-12, 2e-12)};
    for (const auto& s : simulate_trials(p, 200)) {
      if (s.switched) REQUIRE(s.t_switch <= p.t_max);
      REQUIRE(s.t_switch >= 0.0);
      REQUIRE(s.max_norm_error < 1e-6);
      REQUIRE(s.max_norm_correction < p.norm_rejection);
    }
  }
}

TEST_CASE("MC switching times match the ballistic distribution at i >= 2 I_c") {
  for (const auto& m : {cold13(), cold40()}) {
    for (double drive : {2.0, 3.0}) {
      const double i = drive * m.i_c;
      SwitchingProblem p{m, i, 40e-9, 17};
      const auto t = switching_times(simulate_trials(p, 3000));
      REQUIRE(t.size() == 3000);
      const double d = ks_distance(t, [&](double x) { return 1.0 - precessional_wer(m, i, x); });
      CAPTURE(drive);
      CHECK(d < 0.1);
    }
  }
}

TEST_CASE("property: analytic and MC pulse widths agree at feasible error rates") {
  gen::Source g(32);
  for (int k = 0; k < 5; ++k) {
    auto deck = g.integer(0, 1) ? decks::dmtj13() : decks::dmtj40();
    deck.geometry.diameter *= g.uniform(0.8, 1.2);
    deck.material.alpha = g.uniform(0.02, 0.04);
    const double temp = g.uniform(60.0, 150.0);
    const auto m = macrospin_from(deck, temp);
    const double i = g.uniform(2.0, 4.0) * m.i_c;
    SwitchingProblem p{m, i, 60e-9, g.seed()};
    const auto s = simulate_trials(p, 10000);
    for (double wer : {1e-2, 1e-3}) {
      const double mc = empirical_pulse_for_wer(s, wer);
      const double an = pulse_for_wer(m, i, wer);
      CAPTURE(k);
      CAPTURE(wer);
      CHECK(std::abs(an / mc - 1.0) < 0.3);
    }
  }
}

TEST_CASE("median switching time at 20 uA, 13 nm") {
  const auto m = cold13();
  SwitchingProblem p{m, 20e-6, 5e-9, 4};
  const auto t = switching_times(simulate_trials(p, 4000));
  const double median = quantile(t, 0.5);
  CHECK(median == doctest::Approx(pulse_for_wer(m, 20e-6, 0.5)).epsilon(0.05));
  // The 1e-7 pulse sits a factor ~4 above the median for delta = 60.
  CHECK(pulse_for_wer(m, 20e-6, 1e-7) / median == doctest::Approx(3.9).epsilon(0.1));
}

TEST_CASE("pulse widths for WER = 1e-7 at 20 uA") {
  const double t13 = pulse_for_wer(cold13(), 20e-6, 1e-7);
  const double t40 = pulse_for_wer(cold40(), 20e-6, 1e-7);
  CHECK(t13 > 0.68e-9 / 2.0);
  CHECK(t13 < 0.68e-9 * 2.0);
  CHECK(t40 > 27.8e-9 / 2.0);
  CHECK(t40 < 27.8e-9 * 2.0);
}

TEST_CASE("pulse_for_wer inverts the analytic WER and is monotone") {
  const auto m = cold13();
  for (double i : {5e-6, 20e-6, 40e-6}) {
    for (double w : {0.5, 1e-3, 1e-7, 1e-12}) {
      const double t = pulse_for_wer(m, i, w);
      CHECK(analytic_wer(m, i, t) == doctest::Approx(w).epsilon(1e-6));
    }
    CHECK(pulse_for_wer(m, i, 1e-9) > pulse_for_wer(m, i, 1e-7));
  }
  CHECK(pulse_for_wer(m, 10e-6, 1e-7) > pulse_for_wer(m, 20e-6, 1e-7));
  CHECK(pulse_for_wer(m, -20e-6, 1e-7) == pulse_for_wer(m, 20e-6, 1e-7));

  // Sub-critical currents fall back to thermal activation.
  WerMethod used{};
  analytic_wer(m, 0.5 * m.i_c, 1e-9, {}, &used);
  CHECK(used == WerMethod::Activation);
  analytic_wer(m, 2.0 * m.i_c, 1e-9, {}, &used);
  CHECK(used == WerMethod::Analytic);

  CHECK_THROWS_AS(pulse_for_wer(m, 1.01 * m.i_c, 1e-9, PulseOptions{1e-9, {}}), NumericalError);
  CHECK_THROWS_AS(pulse_for_wer(m, 20e-6, 0.7), DomainError);
}

TEST_CASE("property: ballistic WER is monotone in t_p and |i|") {
  gen::Source g(33);
  for (int k = 0; k < 200; ++k) {
    const auto m = g.integer(0, 1) ? cold13() : cold40();
    const double i1 = g.uniform(1.05, 10.0) * m.i_c;
    const double i2 = i1 * g.uniform(1.0, 2.0);
    const double t1 = g.uniform(0.0, 5e-9);
    const double t2 = t1 + g.uniform(0.0, 5e-9);
    const double w = precessional_wer(m, i1, t1);
    REQUIRE(w >= 0.0);
    REQUIRE(w <= 1.0);
    REQUIRE(precessional_wer(m, i1, t2) <= w);
    REQUIRE(precessional_wer(m, i2, t1) <= w);
  }
}

TEST_CASE("linearized and full ballistic forms meet at large overdrive") {
  const auto m = cold13();
  const double i = 50.0 * m.i_c;
  const double t = pulse_for_wer(m, i, 1e-7);
  CHECK(linear_precessional_wer(m, i, t) == doctest::Approx(1e-7).epsilon(0.3));
}

TEST_CASE("hybrid WER curve") {
  const auto m = cold13();
  std::vector<double> grid;
  for (int k = 1; k <= 40; ++k) grid.push_back(k * 0.025e-9);
  WerOptions opt;
  opt.seed = 8;
  const auto c = wer_curve(m, 20e-6, grid, 10000, 1e-9, opt);
  REQUIRE(c.points.size() == grid.size());
  CHECK(c.method == WerMethod::Hybrid);
  CHECK(c.points.front().method == WerMethod::MonteCarlo);
  CHECK(c.points.back().method == WerMethod::Analytic);
  for (std::size_t k = 0; k < c.points.size(); ++k) {
    const auto& p = c.points[k];
    CHECK(p.wer >= 0.0);
    CHECK(p.wer <= 1.0);
    CHECK(p.ci_low <= p.wer);
    CHECK(p.ci_high >= p.wer);
    if (k > 0) CHECK(p.wer <= c.points[k - 1].wer);
    if (p.method == WerMethod::MonteCarlo) CHECK(p.wer >= 10.0 / 10000.0);
  }
  CHECK(c.points.back().wer < 1e-9);

  CHECK_THROWS_AS(wer_curve(m, 20e-6, grid, 9999, 1e-9), DomainError);
  const auto sub = wer_curve(m, 0.5 * m.i_c, grid, 10000, 1e-9, opt);
  CHECK(sub.method == WerMethod::Activation);
}

TEST_CASE("MC WER does not rise with current") {
  const auto m = cold13();
  const double tp = 0.5e-9;
  WerPoint prev{};
  prev.ci_high = 1.0;
  for (double i : {6e-6, 9e-6, 13e-6, 20e-6}) {
    SwitchingProblem p{m, i, tp, 12};
    const auto w = empirical_wer(simulate_trials(p, 4000), tp);
    CHECK(w.wer <= prev.ci_high);
    prev = w;
  }
}

TEST_CASE("Clopper-Pearson bounds") {
  std::vector<SwitchingSample> s(1000);
  for (auto& x : s) {
    x.switched = true;
    x.t_switch = 1e-9;
  }
  const auto zero = empirical_wer(s, 2e-9);
  CHECK(zero.wer == 0.0);
  CHECK(zero.ci_low == 0.0);
  CHECK(zero.ci_high == doctest::Approx(1.0 - std::pow(0.025, 1.0 / 1000.0)).epsilon(1e-9));
  const auto all = empirical_wer(s, 0.5e-9);
  CHECK(all.wer == 1.0);
  CHECK(all.ci_high == 1.0);
  CHECK(all.ci_low == doctest::Approx(std::pow(0.025, 1.0 / 1000.0)).epsilon(1e-9));
}

TEST_CASE("read disturb") {
  const auto m = cold13();
  const double tau = 1e-9 * std::exp(m.delta);
  CHECK(read_disturb_rate(m, 0.0, 1e-9) == doctest::Approx(-std::expm1(-1e-9 / tau)).epsilon(1e-12));
  CHECK(read_disturb_rate(m, 0.0, 1e-9) < 1e-20);
  CHECK_THROWS_AS(read_disturb_rate(m, m.i_c, 1e-9), DomainError);

  const double i13 = max_read_current(m, 1e-9, 1e-9);
  const double i40 = max_read_current(cold40(), 1e-9, 1e-9);
  CHECK(i13 == doctest::Approx(1.91e-6).epsilon(0.25));
  CHECK(i40 == doctest::Approx(14.6e-6).epsilon(0.25));
  CHECK(i40 > i13);
  CHECK(read_disturb_rate(m, i13, 1e-9) == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK(max_read_current(m, 1.0 - 1e-12, 1e-9) > 0.95 * m.i_c);
  CHECK(max_read_current(m, 1.0 - 1e-12, 1e-9) < m.i_c);
}

TEST_CASE("property: read disturb rises with current and pulse width") {
  gen::Source g(34);
  for (int k = 0; k < 300; ++k) {
    const auto m = g.integer(0, 1) ? cold13() : cold40();
    const double i1 = g.uniform(0.0, 0.99) * m.i_c;
    const double i2 = g.uniform(i1 / m.i_c, 0.995) * m.i_c;
    const double t1 = g.log_uniform(1e-10, 1e-6);
    const double t2 = t1 * g.uniform(1.0, 10.0);
    REQUIRE(read_disturb_rate(m, i1, t1) <= read_disturb_rate(m, i2, t1));
    REQUIRE(read_disturb_rate(m, i1, t1) <= read_disturb_rate(m, i1, t2));
  }
}
