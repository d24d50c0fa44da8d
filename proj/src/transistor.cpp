#include "cryomram/transistor.hpp"

#include <cmath>
#include <string>

#include "cryomram/errors.hpp"
#include "cryomram/physics.hpp"

namespace cryomram::bitcell {

namespace {

// Subthreshold conduction saturates at this multiple of i_off; above
// threshold the alpha-power term dominates anyway.
constexpr double kSubthresholdCap = 100.0;

double thermal_voltage(double temperature) {
  const auto& c = physics::codata();
  return c.kB * temperature / c.e;
}

}  // namespace

void validate(const TransistorParams& p) {
  if (!(p.temperature > 0.0)) throw ConfigError("transistor temperature must be positive");
  if (!(p.k_gain > 0.0)) throw ConfigError("transistor k_gain must be positive");
  if (!(p.alpha_p >= 1.0 && p.alpha_p <= 2.0)) throw ConfigError("alpha_p must lie in [1, 2]");
  if (!(p.k_vdsat > 0.0)) throw ConfigError("transistor k_vdsat must be positive");
  if (!(p.lambda >= 0.0)) throw ConfigError("transistor lambda must be non-negative");
  if (!(p.i_off >= 0.0)) throw ConfigError("transistor i_off must be non-negative");
  if (!(p.ss_mv_per_dec > 0.0)) throw ConfigError("subthreshold swing must be positive");
}

TransistorParams nmos65_300k() { return {}; }

TransistorParams nmos65_77k() {
  TransistorParams p;
  p.temperature = 77.0;
  p.v_th = 0.532;
  p.k_gain = 1.9355e-4;
  p.i_off = 1e-9 * std::pow(10.0, -1.3);
  p.ss_mv_per_dec = 30.0;
  return p;
}

const TransistorParams& AccessTransistorModel::at(double temperature) const {
  if (std::abs(temperature - cold.temperature) <= 1.0) return cold;
  if (std::abs(temperature - warm.temperature) <= 1.0) return warm;
  throw DomainError("access transistor is calibrated at " + std::to_string(warm.temperature) +
                    " K and " + std::to_string(cold.temperature) + " K only, got " +
                    std::to_string(temperature) + " K");
}

void validate(const AccessTransistorModel& m) {
  validate(m.warm);
  validate(m.cold);
  if (!(m.width_scale > 0.0)) throw ConfigError("transistor width_scale must be positive");
}

double drain_current(const TransistorParams& p, double v_gs, double v_ds, double width_scale,
                     double vth_shift) {
  if (v_ds < 0.0) return -drain_current(p, v_gs - v_ds, -v_ds, width_scale, vth_shift);

  const double x = std::pow(10.0, (v_gs - vth_shift) / (p.ss_mv_per_dec * 1e-3));
  const double sub = std::isinf(x) ? kSubthresholdCap : x / (1.0 + x / kSubthresholdCap);
  double i = p.i_off * sub * -std::expm1(-v_ds / thermal_voltage(p.temperature));

  const double ov = v_gs - (p.v_th + vth_shift);
  if (ov > 0.0) {
    const double i_dsat = p.k_gain * std::pow(ov, p.alpha_p);
    const double v_dsat = p.k_vdsat * std::pow(ov, 0.5 * p.alpha_p);
    if (v_ds < v_dsat) {
      const double r = v_ds / v_dsat;
      i += i_dsat * (2.0 - r) * r;
    } else {
      i += i_dsat * (1.0 + p.lambda * (v_ds - v_dsat));
    }
  }
  return width_scale * i;
}

double channel_current(const TransistorParams& p, double v_g, double v_a, double v_b,
                       double width_scale, double vth_shift) {
  if (v_a >= v_b) return drain_current(p, v_g - v_b, v_a - v_b, width_scale, vth_shift);
  return -drain_current(p, v_g - v_a, v_b - v_a, width_scale, vth_shift);
}

double on_current(const TransistorParams& p, double vdd, double width_scale) {
  return drain_current(p, vdd, vdd, width_scale);
}

double off_current(const TransistorParams& p, double vdd, double width_scale) {
  return drain_current(p, 0.0, vdd, width_scale);
}

}  // namespace cryomram::bitcell
