#include "cryomram/physics.hpp"

#include <cmath>
#include <string>

#include "cryomram/errors.hpp"

namespace cryomram::physics {

namespace {

void require_temperature(double t) {
  if (!(t >= kMinTemperature && t <= kMaxTemperature)) {
    throw DomainError("temperature " + std::to_string(t) + " K outside [0, 400] K");
  }
}

}  // namespace

void validate(const MaterialDeck& d) {
  if (!(d.P0 > 0.0 && d.P0 < 1.0)) throw ConfigError("P0 must lie in (0, 1)");
  if (!(d.Ms0 > 0.0)) throw ConfigError("Ms0 must be positive");
  if (!(d.Ki0 > 0.0)) throw ConfigError("Ki0 must be positive");
  if (!(d.Aex > 0.0)) throw ConfigError("Aex must be positive");
  if (!(d.Tstar > 0.0)) throw ConfigError("Tstar must be positive");
  if (!(d.alpha > 0.0 && d.alpha <= 0.2)) throw ConfigError("alpha must lie in (0, 0.2]");
  if (!(d.beta >= 0.0)) throw ConfigError("beta must be non-negative");
  if (!(d.ki_exponent > 0.0)) throw ConfigError("ki_exponent must be positive");
  // P(T) is monotone, so the 400 K end is the binding constraint.
  const double p_hot = d.P0 * (1.0 - d.beta * std::pow(kMaxTemperature, 1.5));
  if (!(p_hot > 0.0)) throw ConfigError("beta drives P(T) to zero below 400 K");
}

double polarization_at(const MaterialDeck& deck, double temperature) {
  require_temperature(temperature);
  return deck.P0 * (1.0 - deck.beta * std::pow(temperature, 1.5));
}

double saturation_magnetization_at(const MaterialDeck& deck, double temperature) {
  require_temperature(temperature);
  if (temperature >= deck.Tstar) {
    throw DomainError("temperature at or above T* = " + std::to_string(deck.Tstar) + " K");
  }
  return deck.Ms0 * (1.0 - std::pow(temperature / deck.Tstar, 1.5));
}

double anisotropy_at(const MaterialDeck& deck, double temperature) {
  const double ratio = saturation_magnetization_at(deck, temperature) / deck.Ms0;
  return deck.Ki0 * std::pow(ratio, deck.ki_exponent);
}

MaterialDeck calibrate_deck(const MaterialAnchors& anchors, double anchor_temperature,
                            const MaterialDeck& fit) {
  require_temperature(anchor_temperature);
  if (!(anchors.polarization > 0.0 && anchors.polarization < 1.0)) {
    throw CalibrationError("anchor polarization must lie in (0, 1)");
  }
  if (!(anchors.ms_tesla > 0.0) || !(anchors.ki > 0.0)) {
    throw CalibrationError("anchor magnetization and anisotropy must be positive");
  }

  MaterialDeck deck = fit;
  const double p_factor = 1.0 - fit.beta * std::pow(anchor_temperature, 1.5);
  if (!(p_factor > 0.0)) throw CalibrationError("beta * T^{3/2} >= 1 at anchor temperature");
  deck.P0 = anchors.polarization / p_factor;
  if (!(deck.P0 < 1.0)) {
    throw CalibrationError("anchor implies P0 = " + std::to_string(deck.P0) + " >= 1");
  }

  if (!(anchor_temperature < fit.Tstar)) throw CalibrationError("anchor temperature >= T*");
  const double m_factor = 1.0 - std::pow(anchor_temperature / fit.Tstar, 1.5);
  deck.Ms0 = anchors.ms_tesla / m_factor;
  if (!(deck.Ms0 > 0.0)) throw CalibrationError("anchor implies Ms0 <= 0");

  deck.Ki0 = anchors.ki / std::pow(m_factor, fit.ki_exponent);
  validate(deck);
  return deck;
}

}  // namespace cryomram::physics
