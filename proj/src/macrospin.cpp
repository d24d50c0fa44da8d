// Stochastic macrospin integrator.
//
// Reduced units: time tau = gamma0 mu0 H_k,eff t, field h = H / H_k,eff. The
// free layer sees the uniaxial field h = m_z z plus a Langevin field whose
// Wiener increment has per-component variance (alpha / delta) d tau, which is
// the fluctuation-dissipation strength 2 alpha kT / (mu0 Ms H_k V) written in
// terms of the thermal stability factor. The LLG-Slonczewski right-hand side is
//   dm/dtau = -g' [ m x h + alpha m x (m x h) + j m x (m x p) ],
// with g' = 1 / (1 + alpha^2), j = alpha I / I_c and p the polarizer that
// pushes m away from its starting pole.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cryomram/errors.hpp"
#include "cryomram/parallel.hpp"
#include "cryomram/rng.hpp"
#include "cryomram/switching.hpp"

namespace cryomram::switching {

namespace {

struct Vec3 {
  double x, y, z;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double norm(Vec3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

struct Dynamics {
  double gp;     // 1 / (1 + alpha^2)
  double alpha;
  double j;      // alpha |I| / I_c
  double pz;     // polarizer direction along z (+-1)
  double rate;   // Wiener variance rate alpha / delta (0 disables noise)

  // f(m, h_th) with the thermal field already divided by d tau.
  Vec3 rhs(Vec3 m, Vec3 hth) const {
    const Vec3 h{hth.x, hth.y, hth.z + m.z};
    const double mh = m.x * h.x + m.y * h.y + m.z * h.z;
    // m x h and m x (m x h) = (m.h) m - h
    const Vec3 mxh{m.y * h.z - m.z * h.y, m.z * h.x - m.x * h.z, m.x * h.y - m.y * h.x};
    const Vec3 mxmxh{mh * m.x - h.x, mh * m.y - h.y, mh * m.z - h.z};
    // m x (m x p) with p = pz z
    const double mp = m.z * pz;
    const Vec3 mxmxp{mp * m.x, mp * m.y, mp * m.z - pz};
    return {-gp * (mxh.x + alpha * mxmxh.x + j * mxmxp.x),
            -gp * (mxh.y + alpha * mxmxh.y + j * mxmxp.y),
            -gp * (mxh.z + alpha * mxmxh.z + j * mxmxp.z)};
  }
};

struct StepStats {
  double max_correction = 0.0;
  double max_residual = 0.0;
  int renormalizations = 0;
  int subdivided = 0;
};

class Integrator {
public:
  Integrator(const Dynamics& dyn, double rejection, int max_halvings, PhiloxStream& rng)
      : dyn_(dyn), rejection_(rejection), max_halvings_(max_halvings), rng_(rng) {}

  // Advances m over d_tau with Wiener increment dw; subdivides with a
  // Brownian bridge when the corrector drifts too far off the sphere.
  Vec3 step(Vec3 m, Vec3 dw, double d_tau, int depth = 0) {
    const Vec3 hth = (1.0 / d_tau) * dw;
    const Vec3 k1 = dyn_.rhs(m, hth);
    Vec3 mp = m + d_tau * k1;
    mp = (1.0 / norm(mp)) * mp;
    const Vec3 k2 = dyn_.rhs(mp, hth);
    const Vec3 next = m + (0.5 * d_tau) * (k1 + k2);
    const double n = norm(next);
    const double drift = std::abs(n - 1.0);
    if (drift > rejection_) {
      if (depth >= max_halvings_) {
        std::ostringstream os;
        os << "macrospin step rejected after " << depth << " halvings (|m|-1 = " << drift
           << ", d_tau = " << d_tau << ")";
        throw NumericalError(os.str());
      }
      ++stats.subdivided;
      const double half = 0.5 * d_tau;
      const double sd = std::sqrt(dyn_.rate * half * 0.5);
      const Vec3 w1{0.5 * dw.x + sd * rng_.normal(), 0.5 * dw.y + sd * rng_.normal(),
                    0.5 * dw.z + sd * rng_.normal()};
      const Vec3 w2{dw.x - w1.x, dw.y - w1.y, dw.z - w1.z};
      return step(step(m, w1, half, depth + 1), w2, half, depth + 1);
    }
    const Vec3 out = (1.0 / n) * next;
    stats.max_correction = std::max(stats.max_correction, drift);
    stats.max_residual = std::max(stats.max_residual, std::abs(norm(out) - 1.0));
    ++stats.renormalizations;
    return out;
  }

  StepStats stats;

private:
  Dynamics dyn_;
  double rejection_;
  int max_halvings_;
  PhiloxStream& rng_;
};

void check(const SwitchingProblem& p) {
  const auto& d = p.device;
  if (!(d.alpha > 0.0) || !(d.h_k_eff > 0.0) || !(d.delta > 0.0) || !(d.i_c > 0.0)) {
    throw ConfigError("macrospin device needs positive alpha, H_k, delta and I_c");
  }
  if (!(p.t_max > 0.0)) throw DomainError("t_max must be positive");
  if (!(p.dt > 0.0)) throw DomainError("integrator step must be positive");
  if (!std::isfinite(p.i_applied)) throw DomainError("applied current must be finite");
  if (p.max_step_halvings < 0) throw DomainError("max_step_halvings must be non-negative");
}

}  // namespace

double MacrospinDevice::precession_rate() const {
  return physics::codata().gamma0 * physics::codata().mu0 * h_k_eff;
}

double MacrospinDevice::relaxation_time() const {
  return (1.0 + alpha * alpha) / (alpha * precession_rate());
}

MacrospinDevice macrospin_from(const device::DeviceDeck& deck, double temperature) {
  MacrospinDevice d;
  d.alpha = deck.material.alpha;
  d.h_k_eff = device::effective_anisotropy_field(deck, temperature);
  d.delta = device::thermal_stability(deck, temperature).delta;
  d.i_c = device::critical_current(deck, temperature);
  d.temperature = temperature;
  return d;
}

MacrospinDevice macrospin_from(const device::DeviceCharacteristics& ch, double alpha) {
  MacrospinDevice d;
  d.alpha = alpha;
  d.h_k_eff = ch.h_k_eff;
  d.delta = ch.delta;
  d.i_c = ch.i_c;
  d.temperature = ch.temperature;
  return d;
}

SwitchingSample simulate_switch(const SwitchingProblem& problem, std::uint64_t trial) {
  check(problem);
  const auto& dev = problem.device;
  PhiloxStream rng(problem.seed, trial);

  const double start = problem.i_applied < 0.0 ? -1.0 : 1.0;
  const Dynamics dyn{1.0 / (1.0 + dev.alpha * dev.alpha), dev.alpha,
                     dev.alpha * std::abs(problem.i_applied) / dev.i_c, -start,
                     dev.alpha / dev.delta};

  SwitchingSample out;
  const double theta0 = sample_initial_angle(dev.delta, rng);
  const double phi0 = 2.0 * std::numbers::pi * rng.uniform();
  out.initial_angle = theta0;
  Vec3 m{std::sin(theta0) * std::cos(phi0), std::sin(theta0) * std::sin(phi0),
         start * std::cos(theta0)};

  const double omega = dev.precession_rate();
  const auto steps = static_cast<long long>(std::ceil(problem.t_max / problem.dt - 1e-9));
  Integrator integ(dyn, problem.norm_rejection, problem.max_step_halvings, rng);

  double t = 0.0;
  for (long long k = 0; k < steps; ++k) {
    const double h = std::min(problem.dt, problem.t_max - t);
    const double d_tau = h * omega;
    const double sd = std::sqrt(dyn.rate * d_tau);
    const Vec3 dw{sd * rng.normal(), sd * rng.normal(), sd * rng.normal()};
    const double before = m.z * start;
    m = integ.step(m, dw, d_tau);
    const double after = m.z * start;
    if (after < 0.0) {
      out.switched = true;
      out.t_switch = std::min(problem.t_max, t + h * before / (before - after));
      break;
    }
    t += h;
  }
  out.max_norm_correction = integ.stats.max_correction;
  out.max_norm_error = integ.stats.max_residual;
  out.renormalizations = integ.stats.renormalizations;
  out.subdivided_steps = integ.stats.subdivided;
  return out;
}

std::vector<SwitchingSample> simulate_trials(const SwitchingProblem& problem, std::size_t trials,
                                             unsigned threads) {
  check(problem);
  std::vector<SwitchingSample> out(trials);
  parallel_for(trials, threads, [&](std::size_t i) { out[i] = simulate_switch(problem, i); });
  return out;
}

}  // namespace cryomram::switching
