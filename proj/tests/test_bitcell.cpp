#include <algorithm>
#include <cmath>
#include <vector>

#include "decks.hpp"
#include "doctest.h"
#include "generators.hpp"

#include "cryomram/bitcell.hpp"
#include "cryomram/deck_io.hpp"
#include "cryomram/errors.hpp"

using namespace cryomram;
using namespace cryomram::bitcell;
using device::ResistanceState;

namespace {

AccessTransistorModel access() { return io::load_transistor_deck(decks::path("access_nmos65.yaml")); }
VariabilityDeck variability() { return io::load_variability_deck(decks::path("variability.yaml")); }

double rel(double a, double b) { return std::abs(a / b - 1.0); }

struct Table2 {
  WriteAnalysis w;
  ReadAnalysis r;
};

const Table2& table2(bool small) {
  static const Table2 t40{write_analysis(decks::dmtj40(), access(), variability(), {}, 10000),
                          read_analysis(decks::dmtj40(), access(), variability(), {}, 10000)};
  static const Table2 t13{write_analysis(decks::dmtj13(), access(), variability(), {}, 10000),
                          read_analysis(decks::dmtj13(), access(), variability(), {}, 10000)};
  return small ? t13 : t40;
}

}  // namespace

TEST_CASE("shipped access transistor meets the cryogenic shifts") {
  const auto m = access();
  CHECK(on_current(m.cold) / on_current(m.warm) == doctest::Approx(1.30).epsilon(0.05 / 1.30));
  const double off = off_current(m.cold) / off_current(m.warm);
  CHECK(rel(off, std::pow(10.0, -1.3)) < 0.25);
  CHECK(&m.at(77.0) == &m.cold);
  CHECK(&m.at(300.5) == &m.warm);
  CHECK_THROWS_AS(m.at(150.0), DomainError);
}

TEST_CASE("built-in transistor sets match the shipped deck") {
  const auto m = access();
  CHECK(on_current(nmos65_77k()) == doctest::Approx(on_current(m.cold)).epsilon(1e-12));
  CHECK(off_current(nmos65_300k()) == doctest::Approx(off_current(m.warm)).epsilon(1e-12));
}

TEST_CASE("drain current basics") {
  const auto p = nmos65_77k();
  CHECK(drain_current(p, 1.2, 0.0) == 0.0);
  CHECK(drain_current(p, 1.2, -0.3) < 0.0);
  CHECK(drain_current(p, 1.2, 0.6, 2.0) == doctest::Approx(2.0 * drain_current(p, 1.2, 0.6)).epsilon(1e-14));
  CHECK(drain_current(p, 1.2, 0.6, 1.0, 0.05) < drain_current(p, 1.2, 0.6));
  double prev = 0.0;
  for (double v = 0.01; v <= 1.2; v += 0.01) {
    const double i = drain_current(p, 1.2, v);
    CHECK(i > prev);
    prev = i;
  }
}

TEST_CASE("zero bias gives zero current") {
  const auto op = solve_bitcell(decks::dmtj40(), access(), 77.0, 1.2, 0.4, 0.4, ResistanceState::Low);
  CHECK(op.i_cell == 0.0);
  CHECK(op.v_dmtj == 0.0);
}

TEST_CASE("linear resistor with the access device in deep triode") {
  const auto p = nmos65_77k();
  const double r = 10e3;
  const double v = 0.05;
  const auto op = solve_series([&](double u) { return u / r; }, p, 1.2, v, 0.0);
  // Small-signal channel resistance of the alpha-power law at V_ds -> 0.
  const double ov = 1.2 - 0.532;
  const double i_dsat = 1.9355e-4 * std::pow(ov, 1.2);
  const double v_dsat = 0.7835 * std::pow(ov, 0.6);
  const double r_lin = v_dsat / (2.0 * i_dsat);
  CHECK(rel(op.i_cell, v / (r + r_lin)) < 0.01);
  CHECK(op.v_dmtj + op.v_ds == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("property: bitcell operating points obey Kirchhoff") {
  gen::Source g(41);
  const auto m = access();
  for (int k = 0; k < 40; ++k) {
    const auto d = g.integer(0, 1) ? decks::dmtj40() : decks::dmtj13();
    const auto st = g.integer(0, 1) ? ResistanceState::Low : ResistanceState::High;
    const double bl = g.uniform(0.0, 1.2);
    const double sl = g.uniform(0.0, 1.2);
    const auto op = solve_bitcell(d, m, 77.0, 1.2, bl, sl, st, g.uniform(-0.05, 0.05));
    REQUIRE(op.v_dmtj + op.v_ds == doctest::Approx(bl - sl).epsilon(1e-9));
    if (std::abs(bl - sl) > 1e-3) {
      const double i_dev = device::device_resistance(d, st, 77.0, op.v_dmtj).current;
      REQUIRE(std::abs(i_dev / op.i_cell - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("write currents at 77 K") {
  const auto m = access();
  const BitcellConfig cfg;
  const double lh = write_point(decks::dmtj40(), m, cfg, Transition::LowToHigh).i_cell;
  const double hl = write_point(decks::dmtj40(), m, cfg, Transition::HighToLow).i_cell;
  CHECK(rel(std::abs(lh), 54.9e-6) < 0.15);
  CHECK(rel(std::abs(hl), 92.6e-6) < 0.15);
  CHECK(std::abs(hl) > std::abs(lh));
}

TEST_CASE("write energy equals a trapezoidal re-integration") {
  const auto d = decks::dmtj40();
  const auto m = access();
  const BitcellConfig cfg;
  const auto s = write_sample(d, m, cfg);
  REQUIRE_FALSE(s.failed);
  // Supply power sampled along the pulse for each transition; the cell sits
  // at its pre-switching operating point for the whole pulse.
  auto integrate = [&](double bl, double sl, ResistanceState st) {
    const int n = 200;
    double e = 0.0;
    double prev = 0.0;
    for (int k = 0; k <= n; ++k) {
      const auto op = solve_bitcell(d, m, 77.0, cfg.vdd, bl, sl, st);
      const double p = cfg.vdd * std::abs(op.i_cell);
      if (k > 0) e += 0.5 * (p + prev) * s.t_p / n;
      prev = p;
    }
    return e;
  };
  const double oracle = 0.5 * (integrate(0.0, 1.2, ResistanceState::Low) + integrate(1.2, 0.0, ResistanceState::High));
  CHECK(rel(s.energy, oracle) < 0.01);
}

TEST_CASE("zero variability collapses the distributions") {
  VariabilityDeck v;
  v.sigma_over_mu_area = 0.0;
  v.sigma_over_mu_thickness = 0.0;
  v.transistor_vth_sigma = 0.0;
  const auto d = decks::dmtj13();
  const auto w = write_analysis(d, access(), v, {}, 200);
  CHECK(w.t_p_6sigma == doctest::Approx(w.nominal.t_p).epsilon(1e-12));
  CHECK(w.t_p_max == doctest::Approx(w.nominal.t_p).epsilon(1e-12));
  CHECK(w.t_p_sigma == doctest::Approx(0.0));
  const auto r = read_analysis(d, access(), v, {}, 200);
  CHECK(r.v_sm_3sigma == doctest::Approx(r.v_sm_nominal).epsilon(1e-9));
}

TEST_CASE("Monte Carlo is reproducible from the seed") {
  const auto d = decks::dmtj13();
  BitcellConfig one;
  one.threads = 1;
  BitcellConfig many;
  many.threads = 3;
  const auto a = write_analysis(d, access(), variability(), one, 300);
  const auto b = write_analysis(d, access(), variability(), many, 300);
  CHECK(a.t_p_6sigma == b.t_p_6sigma);
  CHECK(a.t_p_median == b.t_p_median);
  for (std::size_t k = 0; k < a.samples.size(); ++k) REQUIRE(a.samples[k].t_p == b.samples[k].t_p);

  auto v = variability();
  v.rng_seed = 99;
  CHECK(write_analysis(d, access(), v, one, 300).t_p_6sigma != a.t_p_6sigma);
}

TEST_CASE("property: wider area spread never narrows the t_p tail") {
  gen::Source g(42);
  for (int k = 0; k < 5; ++k) {
    auto v = variability();
    v.rng_seed = g.seed();
    const auto d = g.integer(0, 1) ? decks::dmtj13() : decks::dmtj40();
    const auto base = write_analysis(d, access(), v, {}, 2000);
    v.sigma_over_mu_area *= 2.0;
    const auto wide = write_analysis(d, access(), v, {}, 2000);
    CAPTURE(k);
    CHECK(wide.t_p_6sigma - wide.t_p_median >= base.t_p_6sigma - base.t_p_median);
  }
}

TEST_CASE("bitcell metrics at 77 K") {
  const auto& big = table2(false);
  const auto& small = table2(true);
  CHECK(big.w.failed == 0);
  CHECK(small.w.failed == 0);

  CHECK(small.w.t_p_6sigma / big.w.t_p_6sigma == doctest::Approx(0.16).epsilon(0.25));
  const double er = small.w.energy_avg / big.w.energy_avg;
  CHECK(er > 0.084 / 2.0);
  CHECK(er < 0.084 * 2.0);

  CHECK(rel(big.r.v_sm_nominal, 146.3e-3) < 0.25);
  CHECK(rel(big.r.v_sm_3sigma, 67.7e-3) < 0.25);
  CHECK(small.r.v_sm_nominal / big.r.v_sm_nominal == doctest::Approx(0.47).epsilon(0.15));
  CHECK(rel(big.r.lrs_eff, 8.3e3) < 0.25);
  CHECK(rel(big.r.hrs_eff, 18.3e3) < 0.25);
  CHECK(rel(small.r.lrs_eff, 20.8e3) < 0.25);
  CHECK(rel(small.r.hrs_eff, 56.1e3) < 0.25);

  for (const auto* t : {&big, &small}) {
    CHECK(t->r.v_sm_3sigma < t->r.v_sm_nominal);
    CHECK_FALSE(t->r.sense_failure);
    CHECK(t->w.nominal.i_hl > t->w.nominal.i_lh);
    CHECK(t->w.t_p_6sigma > t->w.t_p_median);
  }
}

TEST_CASE("read margin vanishes with the read current") {
  const auto r = read_analysis(decks::dmtj40(), access(), variability(), {}, 0, 1e-12);
  CHECK(std::abs(r.v_sm_nominal) < 1e-7);
}

TEST_CASE("read power is i_read times the mean bitcell voltage") {
  const auto& t = table2(true).r;
  CHECK(t.read_power == doctest::Approx(t.i_read * 0.5 * (t.v_lrs + t.v_hrs)).epsilon(1e-12));
}

TEST_CASE("exported deck") {
  const BitcellConfig cfg;
  const auto& t = table2(true);
  const auto rep = make_report("dmtj13", cfg, t.w, t.r, 10000);
  const auto deck = export_bitcell_deck(rep);
  CHECK(deck.i_read == doctest::Approx(1.91e-6).epsilon(0.25));
  CHECK(deck.t_write == doctest::Approx(0.75e-9).epsilon(0.25));
  CHECK(deck.t_write == rep.t_p_6sigma);

  const auto back = bitcell_deck_from_json(to_json(deck));
  CHECK(back.name == deck.name);
  CHECK(back.i_write == deck.i_write);
  CHECK(back.t_write == deck.t_write);
  CHECK(back.write_energy == deck.write_energy);
  CHECK(back.i_read == deck.i_read);
  CHECK(back.read_power == deck.read_power);
  CHECK(back.lrs_eff == deck.lrs_eff);
  CHECK(back.hrs_eff == deck.hrs_eff);
  CHECK(back.v_sense == deck.v_sense);
  CHECK(back.cell_area_f2 == deck.cell_area_f2);

  auto bad = deck;
  bad.write_energy = -1e-15;
  CHECK_THROWS_AS(validate(bad), Error);
  CHECK_THROWS_AS(bitcell_deck_from_json(to_json(bad)), Error);
}

TEST_CASE("shipped bitcell decks load") {
  const auto d13 = io::load_bitcell_deck(decks::path("mram13.json"));
  const auto d40 = io::load_bitcell_deck(decks::path("mram40.json"));
  CHECK(d13.t_write < d40.t_write);
  CHECK(d13.i_read < d40.i_read);
}
