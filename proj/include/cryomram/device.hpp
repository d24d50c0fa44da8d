#pragma once

// Double-barrier MTJ compact model: two-barrier conductance with bias
// dependent TMR, effective anisotropy, critical current and the two-branch
// thermal stability factor.

#include <span>
#include <string>
#include <vector>

#include "cryomram/physics.hpp"

namespace cryomram::device {

/// Magnetic alignment of the free layer relative to one reference layer.
enum class BarrierState { Parallel, Antiparallel };

/// Composite stack state. Low resistance means the free layer is parallel to
/// the top reference layer (and therefore antiparallel to the bottom one).
enum class ResistanceState { Low, High };

enum class Regime { SingleDomain, DomainWall };

const char* to_string(ResistanceState s);
const char* to_string(Regime r);

/// Circular stack. All lengths in metres.
struct DeviceGeometry {
  double diameter = 0.0;
  double t_fl = 0.0;
  double t_ox_top = 0.0;
  double t_ox_bottom = 0.0;
  double ra_ohm_um2 = 0.0;  ///< nominal RA of the stack; informational, 0 if unknown

  double area() const noexcept;
  double volume() const noexcept { return area() * t_fl; }
};

void validate(const DeviceGeometry& g);

/// One tunnel barrier: G(theta) = G_T [1 + P^2 cos(theta)] + G_SI(T), with
/// G_SI(T) = g_si * (T / 300 K)^g_si_exponent. A zero exponent gives a
/// temperature-independent inelastic term.
struct BarrierElectrical {
  double g_t = 0.0;             ///< direct tunneling prefactor (S)
  double g_si = 0.0;            ///< inelastic spin-independent conductance at 300 K (S)
  double g_si_exponent = 4.0 / 3.0;
  double v_h = 0.5;             ///< bias at which the barrier TMR halves (V)
};

void validate(const BarrierElectrical& b);

/// N_Z - N_XY of the free layer. `Fixed` uses `value` directly; `AspectRatio`
/// evaluates the thin-cylinder approximation N_z = 1 / (2 t / (sqrt(pi) D) + 1)
/// and adds `offset`.
struct DemagModel {
  enum class Mode { Fixed, AspectRatio };
  Mode mode = Mode::Fixed;
  double value = 0.0;
  double offset = 0.0;

  double evaluate(const DeviceGeometry& g) const;
};

/// Thin-cylinder N_Z - N_XY for a disk of thickness t and diameter D.
double cylinder_demag_difference(double thickness, double diameter);

struct DeviceDeck {
  std::string name;
  physics::MaterialDeck material;
  DeviceGeometry geometry;
  BarrierElectrical top;
  BarrierElectrical bottom;
  DemagModel demag;
  double max_bias = 1.5;  ///< largest |V_ox| accepted per barrier (V)
};

void validate(const DeviceDeck& d);

/// Inelastic conductance of a barrier at temperature T.
double inelastic_conductance(const BarrierElectrical& b, double temperature);

/// Zero-bias barrier TMR, 2P^2 / ((1 - P^2) + G_SI/G_T).
double barrier_tmr0(const BarrierElectrical& b, double polarization, double temperature);

/// Barrier conductance in S. The parallel state is bias independent; the
/// antiparallel conductance rises with |v_ox| so that the barrier TMR follows
/// TMR0 / (1 + (v_ox / v_h)^2).
double barrier_conductance(const BarrierElectrical& b, BarrierState state, double polarization,
                           double temperature, double v_ox, double max_bias = 1.5);

struct SeriesSolution {
  double resistance = 0.0;  ///< v_applied / I, or the zero-bias value at v = 0
  double v_ox_top = 0.0;
  double v_ox_bottom = 0.0;
  double current = 0.0;
  double residual = 0.0;  ///< |v_top + v_bottom - v_applied| with v_bottom = I R_bottom
  int iterations = 0;
};

struct SeriesSolverOptions {
  double tolerance = 1e-9;  ///< V
  int max_iterations = 200;
  double damping = 0.5;
};

/// Partitions v_applied across the two series barriers self-consistently.
SeriesSolution device_resistance(const DeviceDeck& deck, ResistanceState state,
                                 double temperature, double v_applied,
                                 const SeriesSolverOptions& options = {});

/// Device voltage that drives `current` through the stack (current forcing).
SeriesSolution device_voltage_at_current(const DeviceDeck& deck, ResistanceState state,
                                         double temperature, double current);

/// g_STT = 4P / (1 - P^4).
double stt_efficiency(double polarization);

/// H_k,eff in A/m. Throws ConfigError if not positive.
double effective_anisotropy_field(const DeviceDeck& deck, double temperature);

/// K_EFF = K_i / t_FL - mu0 Ms^2 / 2 (N_Z - N_XY), in J/m^3.
double effective_anisotropy_energy(const DeviceDeck& deck, double temperature);

/// I_c = alpha e gamma0 mu0 H_k,eff Ms V_FL / (mu_B g_STT), in A.
double critical_current(const DeviceDeck& deck, double temperature);

struct ThermalStability {
  double delta = 0.0;
  Regime regime = Regime::SingleDomain;
  double d_w = 0.0;    ///< domain-wall width pi sqrt(A_ex / K_EFF) (m)
  double k_eff = 0.0;  ///< J/m^3
};

ThermalStability thermal_stability(const DeviceDeck& deck, double temperature);

/// Delta below which a bit does not reach 10-year retention with a 1 ns
/// attempt time: ln(10 yr / 1 ns) ~ 40.3.
double ten_year_retention_delta();

/// Consistent snapshot of the device at one temperature.
struct DeviceCharacteristics {
  double temperature = 0.0;
  double diameter = 0.0;
  double polarization = 0.0;
  double ms_tesla = 0.0;
  double ki = 0.0;
  double r_low = 0.0;
  double r_high = 0.0;
  double tmr0 = 0.0;
  double g_stt = 0.0;
  double i_c = 0.0;
  double delta = 0.0;
  double h_k_eff = 0.0;
  double k_eff = 0.0;
  double d_w = 0.0;
  double nz_minus_nxy = 0.0;
  Regime regime = Regime::SingleDomain;
  bool ten_year_retention = false;
};

DeviceCharacteristics characterize(const DeviceDeck& deck, double temperature);

/// Demag difference that places the single-domain Delta of `deck` at
/// `target_delta`. Throws CalibrationError if the result is not a thin-disk
/// value or the device would sit in the domain-wall branch.
double calibrate_demag_for_delta(const DeviceDeck& deck, double temperature, double target_delta);

/// Demag difference that places I_c at `target_ic`.
double calibrate_demag_for_critical_current(const DeviceDeck& deck, double temperature,
                                            double target_ic);

/// Zero-bias composite resistances observed at one temperature.
struct ResistanceTarget {
  double temperature = 0.0;
  double r_low = 0.0;
  double r_high = 0.0;
};

struct BarrierExtraction {
  BarrierElectrical top;
  BarrierElectrical bottom;
  std::vector<double> relative_errors;  ///< (R_L, R_H) per target, in order
  double max_relative_error = 0.0;
};

/// Fits (G_T, G_SI) of both barriers so that the zero-bias composite
/// resistances match `targets` (at least two temperatures). The deck's
/// material, geometry, v_h and g_si_exponent are used as given.
BarrierExtraction extract_barriers(const DeviceDeck& deck, std::span<const ResistanceTarget> targets);

}  // namespace cryomram::device
