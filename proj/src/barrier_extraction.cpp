#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "cryomram/device.hpp"
#include "cryomram/errors.hpp"

namespace cryomram::device {

namespace {

// Parameters are log(g_t_top), log(g_si_top), log(g_t_bottom), log(g_si_bottom)
// so that positivity holds without constraints.
struct ResistanceResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const DeviceDeck* base;
  std::span<const ResistanceTarget> targets;

  int inputs() const { return 4; }
  int values() const { return static_cast<int>(2 * targets.size()); }

  DeviceDeck with(const Eigen::VectorXd& x) const {
    DeviceDeck d = *base;
    d.top.g_t = std::exp(x[0]);
    d.top.g_si = std::exp(x[1]);
    d.bottom.g_t = std::exp(x[2]);
    d.bottom.g_si = std::exp(x[3]);
    return d;
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const DeviceDeck d = with(x);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto& t = targets[i];
      const double rl = device_resistance(d, ResistanceState::Low, t.temperature, 0.0).resistance;
      const double rh = device_resistance(d, ResistanceState::High, t.temperature, 0.0).resistance;
      f[static_cast<Eigen::Index>(2 * i)] = rl / t.r_low - 1.0;
      f[static_cast<Eigen::Index>(2 * i + 1)] = rh / t.r_high - 1.0;
    }
    return 0;
  }
};

}  // namespace

BarrierExtraction extract_barriers(const DeviceDeck& deck, std::span<const ResistanceTarget> targets) {
  if (targets.size() < 2) {
    throw DomainError("barrier extraction needs resistance targets at two or more temperatures");
  }
  for (const auto& t : targets) {
    if (!(t.r_low > 0.0 && t.r_high > t.r_low)) throw DomainError("targets need 0 < R_L < R_H");
  }
  validate(deck.geometry);

  // Scale of the top barrier from the stack RA when known, else from R_L.
  const double p = physics::polarization_at(deck.material, targets.front().temperature);
  double r_scale = targets.front().r_low;
  if (deck.geometry.ra_ohm_um2 > 0.0) r_scale = deck.geometry.ra_ohm_um2 * 1e-12 / deck.geometry.area();
  const double g_top = 1.0 / (r_scale * (1.0 + p * p));

  ResistanceResidual residual{&deck, targets};
  Eigen::NumericalDiff<ResistanceResidual> diff(residual);

  double best_cost = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best(4);
  for (double bottom_ratio : {3.0, 30.0, 300.0}) {
    for (double si_top : {1e-3, 1e-1}) {
      for (double si_bottom : {1e-3, 1e-1}) {
        Eigen::VectorXd x(4);
        x << std::log(g_top), std::log(g_top * si_top), std::log(g_top * bottom_ratio),
            std::log(g_top * bottom_ratio * si_bottom);
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ResistanceResidual>> lm(diff);
        lm.parameters.maxfev = 4000;
        lm.parameters.xtol = 1e-14;
        lm.parameters.ftol = 1e-14;
        lm.minimize(x);
        Eigen::VectorXd f(residual.values());
        residual(x, f);
        const double cost = f.squaredNorm();
        if (std::isfinite(cost) && cost < best_cost) {
          best_cost = cost;
          best = x;
        }
      }
    }
  }
  if (!std::isfinite(best_cost)) throw SolverError("barrier extraction failed from every start");

  const DeviceDeck fitted = residual.with(best);
  BarrierExtraction out;
  out.top = fitted.top;
  out.bottom = fitted.bottom;
  Eigen::VectorXd f(residual.values());
  residual(best, f);
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    out.relative_errors.push_back(f[i]);
    out.max_relative_error = std::max(out.max_relative_error, std::abs(f[i]));
  }
  return out;
}

}  // namespace cryomram::device
