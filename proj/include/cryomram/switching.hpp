#pragma once

// Stochastic STT switching of the free-layer macrospin: a Monte Carlo engine
// (stochastic Heun, thermal Langevin field), the ballistic analytic tail for
// write error rates, and the thermal-activation read-disturb estimate.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cryomram/device.hpp"

namespace cryomram::switching {

/// Everything the macrospin dynamics need about one device at one temperature.
struct MacrospinDevice {
  double alpha = 0.0;
  double h_k_eff = 0.0;  ///< A/m
  double delta = 0.0;    ///< thermal stability factor; also sets the noise strength
  double i_c = 0.0;      ///< A
  double temperature = 0.0;

  /// gamma0 mu0 H_k,eff, the precession rate (rad/s).
  double precession_rate() const;
  /// tau_D = (1 + alpha^2) / (alpha gamma0 mu0 H_k,eff).
  double relaxation_time() const;
};

MacrospinDevice macrospin_from(const device::DeviceDeck& deck, double temperature);
MacrospinDevice macrospin_from(const device::DeviceCharacteristics& ch, double alpha);

struct SwitchingProblem {
  MacrospinDevice device;
  double i_applied = 0.0;  ///< A; the sign picks the starting pole (+: LRS -> HRS)
  double t_max = 10e-9;    ///< s
  std::uint64_t seed = 1;
  double dt = 1e-12;       ///< integrator step (s)
  int max_step_halvings = 6;
  double norm_rejection = 1e-2;  ///< pre-renormalization |m|-1 that triggers step subdivision
};

struct SwitchingSample {
  bool switched = false;
  double t_switch = 0.0;           ///< s; meaningful only when switched
  double initial_angle = 0.0;      ///< rad from the starting pole
  double max_norm_correction = 0;  ///< largest | |m| - 1 | removed by renormalization
  double max_norm_error = 0;       ///< largest | |m| - 1 | left after a step
  int renormalizations = 0;
  int subdivided_steps = 0;
};

/// One trial. The stream is keyed by (problem.seed, trial), so a given trial
/// index always reproduces the same sample.
SwitchingSample simulate_switch(const SwitchingProblem& problem, std::uint64_t trial = 0);

/// `trials` independent samples; results are identical for any thread count.
std::vector<SwitchingSample> simulate_trials(const SwitchingProblem& problem, std::size_t trials,
                                             unsigned threads = 0);

/// Draws a polar angle from the thermal cone density sin(t) exp(-delta sin^2 t)
/// on [0, pi/2] by exact rejection sampling.
template <class Stream>
double sample_initial_angle(double delta, Stream& rng);

// ---------------------------------------------------------------------------
// Analytic write error rate.

struct ActivationModel {
  double attempt_time = 1e-9;  ///< tau0 (s)
  double exponent = 1.0;       ///< barrier lowering (1 - I/I_c)^exponent
};

/// Ballistic precessional model, valid for |i| > I_c. The starting angle that
/// just reaches pi/2 at t_p follows the full deterministic trajectory
/// d theta / dt = sin(theta) (i/I_c - cos(theta)) / tau_D, and the cone is
/// widened by the noise picked up during growth (delta -> delta (1 - I_c/i)):
/// WER(t) = 1 - exp(-delta_eff theta*(t)^2).
double precessional_wer(const MacrospinDevice& dev, double current, double t_p);

/// Linearized form WER(t) = 1 - exp(-delta pi^2/4 exp(-2 t (i/I_c - 1) / tau_D)).
/// Agrees with precessional_wer only for i >> I_c; kept for comparison.
double linear_precessional_wer(const MacrospinDevice& dev, double current, double t_p);

/// Thermally activated regime: probability of no switch within t.
double activation_wer(const MacrospinDevice& dev, double current, double t_p,
                      const ActivationModel& model = {});

enum class WerMethod { MonteCarlo, Analytic, Activation, Hybrid };
const char* to_string(WerMethod m);

/// Analytic WER, choosing the precessional form above I_c and activation
/// otherwise. `method` receives the branch used when non-null.
double analytic_wer(const MacrospinDevice& dev, double current, double t_p,
                    const ActivationModel& model = {}, WerMethod* method = nullptr);

struct WerPoint {
  double t_p = 0.0;
  double wer = 0.0;
  WerMethod method = WerMethod::Analytic;
  std::size_t trials = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct WerCurve {
  std::vector<WerPoint> points;
  WerMethod method = WerMethod::Analytic;
  std::size_t trials = 0;
};

struct WerOptions {
  std::uint64_t seed = 1;
  double dt = 1e-12;
  double confidence = 0.95;
  double min_events = 10.0;  ///< MC is trusted while WER >= min_events / trials
  unsigned threads = 0;
  ActivationModel activation;
};

inline constexpr std::size_t kMinMonteCarloTrials = 10000;

/// Hybrid WER curve on `t_grid`: Monte Carlo estimates where enough failures
/// are observed, analytic tail below that. Requires trials >= 10^4.
WerCurve wer_curve(const MacrospinDevice& dev, double i_write, const std::vector<double>& t_grid,
                   std::size_t trials, double target_floor, const WerOptions& options = {});

/// Empirical WER and Clopper-Pearson interval from switching samples.
WerPoint empirical_wer(const std::vector<SwitchingSample>& samples, double t_p,
                       double confidence = 0.95);

struct PulseOptions {
  double t_max = 1e-6;  ///< pulse budget (s)
  ActivationModel activation;
};

/// Pulse width at which the analytic WER equals `wer_target`: closed form above I_c, bisection below.
/// Throws NumericalError when the target needs more than `t_max`.
double pulse_for_wer(const MacrospinDevice& dev, double i_write, double wer_target,
                     const PulseOptions& options = {});

/// Time at which a fraction (1 - wer) of the samples has switched.
double empirical_pulse_for_wer(const std::vector<SwitchingSample>& samples, double wer);

// ---------------------------------------------------------------------------
// Read disturb.

/// RDR = 1 - exp(-t_read / tau), tau = tau0 exp(delta (1 - i/I_c)^exponent).
double read_disturb_rate(const MacrospinDevice& dev, double i_read, double t_read,
                         const ActivationModel& model = {});

/// Largest read current whose RDR stays at `rdr_target` (bisection).
double max_read_current(const MacrospinDevice& dev, double rdr_target, double t_read,
                        const ActivationModel& model = {});

// ---------------------------------------------------------------------------

template <class Stream>
double sample_initial_angle(double delta, Stream& rng) {
  // Proposal: s = 1 - cos(theta) ~ Exp(delta) truncated to [0, 1]. The target
  // exp(-delta s (2 - s)) over the proposal is exp(-delta s (1 - s)) <= 1.
  const double tail = -std::expm1(-delta);
  for (;;) {
    const double s = -std::log1p(-rng.uniform() * tail) / delta;
    if (rng.uniform() <= std::exp(-delta * s * (1.0 - s))) return std::acos(1.0 - s);
  }
}

}  // namespace cryomram::switching
