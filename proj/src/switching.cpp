#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include <boost/math/distributions/beta.hpp>

#include "cryomram/errors.hpp"
#include "cryomram/switching.hpp"

namespace cryomram::switching {

namespace {

constexpr double kPi2Over4 = std::numbers::pi * std::numbers::pi / 4.0;

void check_device(const MacrospinDevice& dev) {
  if (!(dev.alpha > 0.0) || !(dev.h_k_eff > 0.0) || !(dev.delta > 0.0) || !(dev.i_c > 0.0)) {
    throw ConfigError("switching device needs positive alpha, H_k, delta and I_c");
  }
}

void check_activation(const ActivationModel& m) {
  if (!(m.attempt_time > 0.0)) throw ConfigError("attempt time must be positive");
  if (!(m.exponent > 0.0)) throw ConfigError("activation exponent must be positive");
}

/// Mean dwell time before a thermally activated reversal at reduced current i < 1.
double activation_time(const MacrospinDevice& dev, double i, const ActivationModel& m) {
  return m.attempt_time * std::exp(dev.delta * std::pow(1.0 - i, m.exponent));
}

/// Deterministic time, in units of tau_D, for the polar angle to grow from
/// theta0 (s = 1 - cos theta0) to pi/2 under
/// d theta / dt = sin(theta) (i - cos(theta)) / tau_D.
double trajectory_time(double s, double i) {
  return -std::log(s) / (2.0 * (i - 1.0)) + std::log(2.0 - s) / (2.0 * (i + 1.0)) +
         std::log((i - 1.0 + s) / i) / (i * i - 1.0);
}

/// d trajectory_time / d ln(s); always negative.
double trajectory_slope(double s, double i) {
  return -1.0 / (2.0 * (i - 1.0)) - s / ((2.0 - s) * 2.0 * (i + 1.0)) +
         s / ((i - 1.0 + s) * (i * i - 1.0));
}

/// Starting angle that reaches pi/2 exactly at x = t / tau_D, returned as
/// ln(1 - cos theta).
double critical_log_s(double x, double i) {
  if (x <= 0.0) return 0.0;
  // Far tail: the first term dominates. Newton in ln(s) from there.
  const double tail = std::log(2.0) / (2.0 * (i + 1.0)) + std::log((i - 1.0) / i) / (i * i - 1.0);
  double y = std::min(0.0, -2.0 * (i - 1.0) * (x - tail));
  for (int it = 0; it < 60; ++it) {
    const double s = std::exp(y);
    const double step = (trajectory_time(s, i) - x) / trajectory_slope(s, i);
    double next = y - step;
    if (next > 0.0) next = 0.5 * y;
    if (std::abs(next - y) < 1e-13 * std::max(1.0, std::abs(y))) return next;
    y = next;
  }
  return y;
}

double theta_from_log_s(double y) { return 2.0 * std::asin(std::sqrt(0.5 * std::exp(y))); }

/// Thermal stability seen by the ballistic tail: noise injected while the
/// angle grows adds variance delta^-1 / (2 (i - 1)) per component.
double effective_delta(const MacrospinDevice& dev, double i) { return dev.delta * (i - 1.0) / i; }

/// Analytic time at which WER reaches `wer` (closed-form inverse of analytic_wer).
double analytic_time(const MacrospinDevice& dev, double current, double wer,
                     const ActivationModel& model) {
  const double i = std::abs(current) / dev.i_c;
  if (i > 1.0) {
    const double theta2 = -std::log1p(-wer) / effective_delta(dev, i);
    const double theta = std::sqrt(theta2);
    if (theta >= 0.5 * std::numbers::pi) return 0.0;
    const double s = 2.0 * std::pow(std::sin(0.5 * theta), 2);
    return dev.relaxation_time() * trajectory_time(s, i);
  }
  return -activation_time(dev, i, model) * std::log(wer);
}

std::pair<double, double> clopper_pearson(std::size_t failures, std::size_t n, double confidence) {
  const double a = 0.5 * (1.0 - confidence);
  const double k = static_cast<double>(failures);
  const double nn = static_cast<double>(n);
  using boost::math::beta_distribution;
  using boost::math::quantile;
  const double lo = failures == 0 ? 0.0 : quantile(beta_distribution<>(k, nn - k + 1.0), a);
  const double hi = failures == n ? 1.0 : quantile(beta_distribution<>(k + 1.0, nn - k), 1.0 - a);
  return {lo, hi};
}

}  // namespace

const char* to_string(WerMethod m) {
  switch (m) {
    case WerMethod::MonteCarlo: return "monte-carlo";
    case WerMethod::Analytic: return "analytic";
    case WerMethod::Activation: return "activation";
    case WerMethod::Hybrid: return "hybrid";
  }
  return "unknown";
}

double precessional_wer(const MacrospinDevice& dev, double current, double t_p) {
  check_device(dev);
  const double i = std::abs(current) / dev.i_c;
  if (!(i > 1.0)) throw DomainError("precessional model needs a super-critical current");
  if (!(t_p >= 0.0)) throw DomainError("pulse width must be non-negative");
  const double theta = theta_from_log_s(critical_log_s(t_p / dev.relaxation_time(), i));
  return -std::expm1(-effective_delta(dev, i) * theta * theta);
}

double linear_precessional_wer(const MacrospinDevice& dev, double current, double t_p) {
  check_device(dev);
  const double i = std::abs(current) / dev.i_c;
  if (!(i > 1.0)) throw DomainError("precessional model needs a super-critical current");
  if (!(t_p >= 0.0)) throw DomainError("pulse width must be non-negative");
  const double x = dev.delta * kPi2Over4 * std::exp(-2.0 * t_p * (i - 1.0) / dev.relaxation_time());
  return -std::expm1(-x);
}

double activation_wer(const MacrospinDevice& dev, double current, double t_p,
                      const ActivationModel& model) {
  check_device(dev);
  check_activation(model);
  const double i = std::abs(current) / dev.i_c;
  if (!(i <= 1.0)) throw DomainError("activation model needs a sub-critical current");
  if (!(t_p >= 0.0)) throw DomainError("pulse width must be non-negative");
  return std::exp(-t_p / activation_time(dev, i, model));
}

double analytic_wer(const MacrospinDevice& dev, double current, double t_p,
                    const ActivationModel& model, WerMethod* method) {
  check_device(dev);
  if (std::abs(current) > dev.i_c) {
    if (method) *method = WerMethod::Analytic;
    return precessional_wer(dev, current, t_p);
  }
  if (method) *method = WerMethod::Activation;
  return activation_wer(dev, current, t_p, model);
}

WerPoint empirical_wer(const std::vector<SwitchingSample>& samples, double t_p, double confidence) {
  if (samples.empty()) throw DomainError("no switching samples");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("confidence must be in (0, 1)");
  std::size_t failures = 0;
  for (const auto& s : samples) {
    if (!s.switched || s.t_switch > t_p) ++failures;
  }
  WerPoint p;
  p.t_p = t_p;
  p.trials = samples.size();
  p.method = WerMethod::MonteCarlo;
  p.wer = static_cast<double>(failures) / static_cast<double>(samples.size());
  std::tie(p.ci_low, p.ci_high) = clopper_pearson(failures, samples.size(), confidence);
  return p;
}

WerCurve wer_curve(const MacrospinDevice& dev, double i_write, const std::vector<double>& t_grid,
                   std::size_t trials, double target_floor, const WerOptions& options) {
  check_device(dev);
  if (trials < kMinMonteCarloTrials) {
    std::ostringstream os;
    os << "wer_curve needs at least " << kMinMonteCarloTrials << " trials, got " << trials;
    throw DomainError(os.str());
  }
  if (t_grid.empty()) throw DomainError("empty pulse-width grid");
  if (!(target_floor > 0.0 && target_floor < 1.0)) throw DomainError("target_floor must be in (0, 1)");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0)) throw DomainError("pulse widths must be positive");
    if (k > 0 && !(t_grid[k] > t_grid[k - 1])) throw DomainError("pulse-width grid must be increasing");
  }

  WerCurve curve;
  curve.trials = trials;
  if (!(std::abs(i_write) > dev.i_c)) {
    // Sub-critical: reversal is thermally activated on time scales the
    // macrospin run cannot reach, so the activation model stands alone.
    for (double t : t_grid) {
      WerPoint p;
      p.t_p = t;
      p.wer = activation_wer(dev, i_write, t, options.activation);
      p.method = WerMethod::Activation;
      p.ci_low = p.ci_high = p.wer;
      curve.points.push_back(p);
    }
    curve.method = WerMethod::Activation;
    return curve;
  }

  SwitchingProblem problem;
  problem.device = dev;
  problem.i_applied = i_write;
  problem.t_max = t_grid.back();
  problem.seed = options.seed;
  problem.dt = options.dt;
  const auto samples = simulate_trials(problem, trials, options.threads);

  const double reach = options.min_events / static_cast<double>(trials);
  // Once MC runs out of events the analytic tail takes over, shifted in time
  // so that it joins the last trusted MC point continuously.
  bool tail = false;
  double shift = 0.0;
  bool any_mc = false;
  bool any_tail = false;
  for (double t : t_grid) {
    if (!tail) {
      WerPoint p = empirical_wer(samples, t, options.confidence);
      if (p.wer >= reach && p.wer > 0.0) {
        curve.points.push_back(p);
        any_mc = true;
        continue;
      }
      tail = true;
      if (any_mc) {
        const WerPoint& last = curve.points.back();
        const double level = std::min(last.wer, 0.5);
        shift = last.t_p - analytic_time(dev, i_write, level, options.activation);
      }
    }
    WerPoint p;
    p.t_p = t;
    p.trials = 0;
    p.wer = analytic_wer(dev, i_write, std::max(0.0, t - shift), options.activation, &p.method);
    if (!curve.points.empty()) p.wer = std::min(p.wer, curve.points.back().wer);
    p.ci_low = p.ci_high = p.wer;
    curve.points.push_back(p);
    any_tail = true;
  }
  curve.method = any_mc && any_tail ? WerMethod::Hybrid
                 : any_mc           ? WerMethod::MonteCarlo
                                    : curve.points.front().method;
  return curve;
}

double pulse_for_wer(const MacrospinDevice& dev, double i_write, double wer_target,
                     const PulseOptions& options) {
  check_device(dev);
  check_activation(options.activation);
  if (!(wer_target > 0.0 && wer_target <= 0.5)) throw DomainError("wer_target must be in (0, 0.5]");
  if (!(options.t_max > 0.0)) throw DomainError("pulse budget must be positive");
  if (!(std::abs(i_write) > 0.0)) throw DomainError("write current must be non-zero");

  if (std::abs(i_write) > dev.i_c) {
    const double t = analytic_time(dev, i_write, wer_target, options.activation);
    if (t > options.t_max) {
      std::ostringstream os;
      os << "pulse saturation: WER " << wer_target << " not reached within " << options.t_max
         << " s at I = " << i_write << " A";
      throw NumericalError(os.str());
    }
    return t;
  }
  auto wer_at = [&](double t) { return analytic_wer(dev, i_write, t, options.activation); };
  if (wer_at(options.t_max) > wer_target) {
    std::ostringstream os;
    os << "pulse saturation: WER " << wer_target << " not reached within " << options.t_max
       << " s at I = " << i_write << " A";
    throw NumericalError(os.str());
  }
  if (wer_at(0.0) <= wer_target) return 0.0;

  double lo = 0.0;
  double hi = options.t_max;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (wer_at(mid) > wer_target ? lo : hi) = mid;
  }
  return hi;
}

double empirical_pulse_for_wer(const std::vector<SwitchingSample>& samples, double wer) {
  if (samples.empty()) throw DomainError("no switching samples");
  if (!(wer > 0.0 && wer < 1.0)) throw DomainError("wer must be in (0, 1)");
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples) {
    t.push_back(s.switched ? s.t_switch : std::numeric_limits<double>::infinity());
  }
  const auto n = static_cast<double>(t.size());
  auto idx = static_cast<std::size_t>(std::ceil((1.0 - wer) * n - 1e-9));
  idx = std::clamp<std::size_t>(idx, 1, t.size()) - 1;
  std::nth_element(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(idx), t.end());
  if (!std::isfinite(t[idx])) {
    throw NumericalError("too few switching events to resolve the requested WER");
  }
  return t[idx];
}

double read_disturb_rate(const MacrospinDevice& dev, double i_read, double t_read,
                         const ActivationModel& model) {
  check_device(dev);
  check_activation(model);
  if (!(t_read > 0.0)) throw DomainError("read pulse width must be positive");
  const double i = std::abs(i_read) / dev.i_c;
  if (!(i < 1.0)) throw DomainError("read current super-critical");
  return -std::expm1(-t_read / activation_time(dev, i, model));
}

double max_read_current(const MacrospinDevice& dev, double rdr_target, double t_read,
                        const ActivationModel& model) {
  check_device(dev);
  check_activation(model);
  if (!(rdr_target > 0.0 && rdr_target < 1.0)) throw DomainError("rdr_target must be in (0, 1)");
  if (!(t_read > 0.0)) throw DomainError("read pulse width must be positive");

  double lo = 0.0;
  double hi = dev.i_c;
  if (read_disturb_rate(dev, lo, t_read, model) >= rdr_target) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (read_disturb_rate(dev, mid, t_read, model) <= rdr_target ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace cryomram::switching
