#pragma once

// Access transistor: alpha-power-law drain current with a subthreshold tail,
// one parameter set per supported temperature (300 K and 77 K).

namespace cryomram::bitcell {

struct TransistorParams {
  double temperature = 300.0;  ///< K; sets the thermal voltage of the subthreshold tail
  double v_th = 0.45;          ///< V
  double k_gain = 1.30e-4;     ///< A / V^alpha_p at minimum width
  double alpha_p = 1.2;        ///< velocity-saturation exponent
  double k_vdsat = 0.7835;     ///< V_dsat = k_vdsat (V_gs - V_th)^(alpha_p / 2)
  double lambda = 0.05;        ///< channel-length modulation (1/V)
  double i_off = 1e-9;         ///< drain current at V_gs = 0, V_ds >> kT/q (A)
  double ss_mv_per_dec = 85.0; ///< subthreshold swing
};

void validate(const TransistorParams& p);

/// Shipped 65 nm minimum-width NMOS sets.
TransistorParams nmos65_300k();
TransistorParams nmos65_77k();

struct AccessTransistorModel {
  TransistorParams warm = nmos65_300k();
  TransistorParams cold = nmos65_77k();
  double width_scale = 1.0;  ///< multiple of minimum width

  /// Parameter set for `temperature`; only the two calibrated temperatures
  /// (within 1 K) are accepted.
  const TransistorParams& at(double temperature) const;
};

void validate(const AccessTransistorModel& m);

/// Drain-to-source current for a source-referenced bias. Negative v_ds is
/// handled by exchanging drain and source. `vth_shift` models mismatch.
double drain_current(const TransistorParams& p, double v_gs, double v_ds, double width_scale = 1.0,
                     double vth_shift = 0.0);

/// Current from terminal `a` to terminal `b` with the gate at v_g; the lower
/// terminal acts as the source.
double channel_current(const TransistorParams& p, double v_g, double v_a, double v_b,
                       double width_scale = 1.0, double vth_shift = 0.0);

/// I(V_gs = V_ds = vdd).
double on_current(const TransistorParams& p, double vdd = 1.2, double width_scale = 1.0);
/// I(V_gs = 0, V_ds = vdd).
double off_current(const TransistorParams& p, double vdd = 1.2, double width_scale = 1.0);

}  // namespace cryomram::bitcell
