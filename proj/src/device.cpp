#include "cryomram/device.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "cryomram/errors.hpp"

namespace cryomram::device {

namespace {

using physics::codata;

constexpr double kSiReferenceTemperature = 300.0;

BarrierState top_state(ResistanceState s) {
  return s == ResistanceState::Low ? BarrierState::Parallel : BarrierState::Antiparallel;
}

BarrierState bottom_state(ResistanceState s) {
  return s == ResistanceState::Low ? BarrierState::Antiparallel : BarrierState::Parallel;
}

/// mu0*Ms in tesla and Ms in A/m.
struct Magnetization {
  double tesla;
  double amps_per_metre;
};

Magnetization magnetization(const DeviceDeck& deck, double temperature) {
  const double ms_t = physics::saturation_magnetization_at(deck.material, temperature);
  return {ms_t, ms_t / codata().mu0};
}

}  // namespace

const char* to_string(ResistanceState s) { return s == ResistanceState::Low ? "LRS" : "HRS"; }

const char* to_string(Regime r) {
  return r == Regime::SingleDomain ? "single-domain" : "domain-wall";
}

double DeviceGeometry::area() const noexcept {
  const double r = 0.5 * diameter;
  return std::numbers::pi * r * r;
}

void validate(const DeviceGeometry& g) {
  if (!(g.diameter > 0.0)) throw ConfigError("diameter must be positive");
  if (!(g.t_fl > 0.0)) throw ConfigError("free-layer thickness must be positive");
  if (!(g.t_ox_bottom > 0.0)) throw ConfigError("bottom barrier thickness must be positive");
  if (!(g.t_ox_top > g.t_ox_bottom)) {
    throw ConfigError("top barrier must be thicker than the bottom barrier");
  }
}

void validate(const BarrierElectrical& b) {
  if (!(b.g_t > 0.0)) throw ConfigError("barrier g_t must be positive");
  if (!(b.g_si >= 0.0)) throw ConfigError("barrier g_si must be non-negative");
  if (!(b.v_h > 0.0)) throw ConfigError("barrier v_h must be positive");
}

double cylinder_demag_difference(double thickness, double diameter) {
  if (!(thickness > 0.0 && diameter > 0.0)) throw DomainError("cylinder dimensions must be positive");
  const double aspect = thickness / diameter;
  const double nz = 1.0 / (2.0 * aspect / std::sqrt(std::numbers::pi) + 1.0);
  const double nxy = 0.5 * (1.0 - nz);
  return nz - nxy;
}

double DemagModel::evaluate(const DeviceGeometry& g) const {
  if (mode == Mode::Fixed) return value;
  return cylinder_demag_difference(g.t_fl, g.diameter) + offset;
}

void validate(const DeviceDeck& d) {
  physics::validate(d.material);
  validate(d.geometry);
  validate(d.top);
  validate(d.bottom);
  const double n = d.demag.evaluate(d.geometry);
  if (!(n > 0.0 && n < 1.0)) throw ConfigError("N_Z - N_XY must lie in (0, 1)");
  if (!(d.max_bias > 0.0)) throw ConfigError("max_bias must be positive");
}

double inelastic_conductance(const BarrierElectrical& b, double temperature) {
  if (b.g_si_exponent == 0.0) return b.g_si;
  return b.g_si * std::pow(temperature / kSiReferenceTemperature, b.g_si_exponent);
}

double barrier_tmr0(const BarrierElectrical& b, double polarization, double temperature) {
  const double p2 = polarization * polarization;
  const double si_ratio = inelastic_conductance(b, temperature) / b.g_t;
  return 2.0 * p2 / ((1.0 - p2) + si_ratio);
}

double barrier_conductance(const BarrierElectrical& b, BarrierState state, double polarization,
                           double temperature, double v_ox, double max_bias) {
  if (!(std::abs(v_ox) <= max_bias)) {
    throw DomainError("barrier bias " + std::to_string(v_ox) + " V exceeds limit " +
                      std::to_string(max_bias) + " V");
  }
  const double p2 = polarization * polarization;
  const double g_si = inelastic_conductance(b, temperature);
  const double g_parallel = b.g_t * (1.0 + p2) + g_si;
  if (state == BarrierState::Parallel) return g_parallel;
  const double x = v_ox / b.v_h;
  const double tmr = barrier_tmr0(b, polarization, temperature) / (1.0 + x * x);
  return g_parallel / (1.0 + tmr);
}

SeriesSolution device_resistance(const DeviceDeck& deck, ResistanceState state,
                                 double temperature, double v_applied,
                                 const SeriesSolverOptions& options) {
  const double p = physics::polarization_at(deck.material, temperature);
  const auto r_top = [&](double v) {
    return 1.0 / barrier_conductance(deck.top, top_state(state), p, temperature, v, deck.max_bias);
  };
  const auto r_bottom = [&](double v) {
    return 1.0 / barrier_conductance(deck.bottom, bottom_state(state), p, temperature, v,
                                     deck.max_bias);
  };

  SeriesSolution sol;
  if (v_applied == 0.0) {
    sol.resistance = r_top(0.0) + r_bottom(0.0);
    return sol;
  }

  // Start from the zero-bias divider.
  double v_top = v_applied * r_top(0.0) / (r_top(0.0) + r_bottom(0.0));
  std::ostringstream trace;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const double rt = r_top(v_top);
    const double rb = r_bottom(v_applied - v_top);
    const double target = v_applied * rt / (rt + rb);
    const double step = target - v_top;
    if (it > options.max_iterations - 5) trace << " [" << it << "] v_top=" << v_top << " step=" << step;
    v_top += options.damping * step;
    if (std::abs(step) < options.tolerance) {
      const double rt_final = r_top(v_top);
      const double rb_final = r_bottom(v_applied - v_top);
      sol.v_ox_top = v_top;
      sol.current = v_top / rt_final;
      sol.v_ox_bottom = sol.current * rb_final;
      sol.resistance = rt_final + rb_final;
      sol.residual = std::abs(sol.v_ox_top + sol.v_ox_bottom - v_applied);
      sol.iterations = it;
      return sol;
    }
  }
  throw SolverError("series divider did not converge for v_applied=" + std::to_string(v_applied) +
                    " V:" + trace.str());
}

SeriesSolution device_voltage_at_current(const DeviceDeck& deck, ResistanceState state,
                                         double temperature, double current) {
  if (current == 0.0) return device_resistance(deck, state, temperature, 0.0);
  const double sign = current > 0.0 ? 1.0 : -1.0;
  const double target = std::abs(current);
  double lo = 0.0;
  double hi = deck.max_bias;
  const auto current_at = [&](double v) { return device_resistance(deck, state, temperature, v).current; };
  if (current_at(hi) < target) {
    throw DomainError("forced current " + std::to_string(target) +
                      " A needs more than the bias limit across the device");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (current_at(mid) < target ? lo : hi) = mid;
  }
  return device_resistance(deck, state, temperature, sign * 0.5 * (lo + hi));
}

double stt_efficiency(double polarization) {
  if (!(polarization > 0.0 && polarization < 1.0)) {
    throw DomainError("polarization must lie in (0, 1) for g_STT");
  }
  const double p2 = polarization * polarization;
  return 4.0 * polarization / (1.0 - p2 * p2);
}

double effective_anisotropy_field(const DeviceDeck& deck, double temperature) {
  const auto ms = magnetization(deck, temperature);
  const double ki = physics::anisotropy_at(deck.material, temperature);
  const double n = deck.demag.evaluate(deck.geometry);
  const double interfacial = 2.0 * ki / (deck.geometry.t_fl * ms.tesla);
  const double hk = interfacial - n * ms.amps_per_metre;
  if (!(hk > 0.0)) {
    throw ConfigError("in-plane instability: H_k,eff = " + std::to_string(hk) + " A/m");
  }
  return hk;
}

double effective_anisotropy_energy(const DeviceDeck& deck, double temperature) {
  const auto ms = magnetization(deck, temperature);
  const double ki = physics::anisotropy_at(deck.material, temperature);
  const double n = deck.demag.evaluate(deck.geometry);
  return ki / deck.geometry.t_fl - 0.5 * ms.tesla * ms.amps_per_metre * n;
}

double critical_current(const DeviceDeck& deck, double temperature) {
  const auto& c = codata();
  const auto ms = magnetization(deck, temperature);
  const double hk = effective_anisotropy_field(deck, temperature);
  const double g = stt_efficiency(physics::polarization_at(deck.material, temperature));
  return deck.material.alpha * c.e * c.gamma0 * c.mu0 * hk * ms.amps_per_metre *
         deck.geometry.volume() / (c.muB * g);
}

ThermalStability thermal_stability(const DeviceDeck& deck, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("thermal stability needs T > 0");
  const auto& c = codata();
  ThermalStability out;
  out.k_eff = effective_anisotropy_energy(deck, temperature);
  if (!(out.k_eff > 0.0)) {
    throw ConfigError("K_EFF = " + std::to_string(out.k_eff) + " J/m^3 is not positive");
  }
  const double aex = deck.material.Aex;
  out.d_w = std::numbers::pi * std::sqrt(aex / out.k_eff);
  const double kt = c.kB * temperature;
  if (deck.geometry.diameter <= out.d_w) {
    out.regime = Regime::SingleDomain;
    out.delta = out.k_eff * deck.geometry.volume() / kt;
  } else {
    out.regime = Regime::DomainWall;
    const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
    out.delta = pi3 * aex * deck.geometry.t_fl / (4.0 * kt);
  }
  return out;
}

double ten_year_retention_delta() {
  constexpr double ten_years = 10.0 * 365.25 * 24.0 * 3600.0;
  return std::log(ten_years / 1e-9);
}

DeviceCharacteristics characterize(const DeviceDeck& deck, double temperature) {
  validate(deck);
  DeviceCharacteristics out;
  out.temperature = temperature;
  out.diameter = deck.geometry.diameter;
  out.polarization = physics::polarization_at(deck.material, temperature);
  out.ms_tesla = physics::saturation_magnetization_at(deck.material, temperature);
  out.ki = physics::anisotropy_at(deck.material, temperature);
  out.r_low = device_resistance(deck, ResistanceState::Low, temperature, 0.0).resistance;
  out.r_high = device_resistance(deck, ResistanceState::High, temperature, 0.0).resistance;
  out.tmr0 = (out.r_high - out.r_low) / out.r_low;
  out.g_stt = stt_efficiency(out.polarization);
  out.nz_minus_nxy = deck.demag.evaluate(deck.geometry);
  out.h_k_eff = effective_anisotropy_field(deck, temperature);
  out.i_c = critical_current(deck, temperature);
  const auto ts = thermal_stability(deck, temperature);
  out.delta = ts.delta;
  out.k_eff = ts.k_eff;
  out.d_w = ts.d_w;
  out.regime = ts.regime;
  out.ten_year_retention = ts.delta >= ten_year_retention_delta();
  return out;
}

double calibrate_demag_for_delta(const DeviceDeck& deck, double temperature, double target_delta) {
  const auto& c = codata();
  const auto ms = magnetization(deck, temperature);
  const double ki = physics::anisotropy_at(deck.material, temperature);
  const double k_eff = target_delta * c.kB * temperature / deck.geometry.volume();
  const double n = (ki / deck.geometry.t_fl - k_eff) / (0.5 * ms.tesla * ms.amps_per_metre);
  if (!(n > 0.0 && n < 1.0)) {
    throw CalibrationError("target Delta implies N_Z - N_XY = " + std::to_string(n));
  }
  const double d_w = std::numbers::pi * std::sqrt(deck.material.Aex / k_eff);
  if (deck.geometry.diameter > d_w) {
    throw CalibrationError("target Delta puts the device in the domain-wall branch");
  }
  return n;
}

double calibrate_demag_for_critical_current(const DeviceDeck& deck, double temperature,
                                            double target_ic) {
  const auto& c = codata();
  const auto ms = magnetization(deck, temperature);
  const double ki = physics::anisotropy_at(deck.material, temperature);
  const double g = stt_efficiency(physics::polarization_at(deck.material, temperature));
  const double hk = target_ic * c.muB * g /
                    (deck.material.alpha * c.e * c.gamma0 * c.mu0 * ms.amps_per_metre *
                     deck.geometry.volume());
  const double n = (2.0 * ki / (deck.geometry.t_fl * ms.tesla) - hk) / ms.amps_per_metre;
  if (!(n > 0.0 && n < 1.0)) {
    throw CalibrationError("target I_c implies N_Z - N_XY = " + std::to_string(n));
  }
  return n;
}

}  // namespace cryomram::device
