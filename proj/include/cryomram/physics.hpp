#pragma once

// Physical constants and the temperature scaling of the free-layer material
// parameters (spin polarization, saturation magnetization, interfacial
// anisotropy).

namespace cryomram::physics {

/// CODATA 2018 values. Instances are immutable; use `codata()`.
struct PhysicalConstants {
  double e;       ///< elementary charge (C)
  double mu0;     ///< vacuum permeability (T m / A)
  double gamma0;  ///< electron gyromagnetic ratio magnitude (rad / (s T))
  double muB;     ///< Bohr magneton (J / T)
  double kB;      ///< Boltzmann constant (J / K)
};

inline constexpr PhysicalConstants kConstants{
    1.602176634e-19,
    1.25663706212e-6,
    1.76085963023e11,
    9.2740100783e-24,
    1.380649e-23,
};

constexpr const PhysicalConstants& codata() noexcept { return kConstants; }

inline constexpr double kMinTemperature = 0.0;
inline constexpr double kMaxTemperature = 400.0;

/// 0 K material parameters plus the empirical fit exponents.
/// Ms0 is stored as mu0*Ms in tesla.
struct MaterialDeck {
  double P0 = 0.0;            ///< spin polarization at 0 K
  double Ms0 = 0.0;           ///< mu0*Ms at 0 K (T)
  double Ki0 = 0.0;           ///< interfacial anisotropy at 0 K (J/m^2)
  double alpha = 0.03;        ///< Gilbert damping
  double Aex = 20e-12;        ///< exchange stiffness (J/m)
  double beta = 2e-5;         ///< polarization fit parameter (K^-3/2)
  double Tstar = 1120.0;      ///< magnetization fit temperature (K)
  double ki_exponent = 2.18;  ///< K_i ~ Ms^ki_exponent
};

/// Throws DomainError/ConfigError if any field violates the deck invariants,
/// including P(T) leaving (0,1) anywhere on [0, 400] K.
void validate(const MaterialDeck& deck);

/// P(T) = P0 (1 - beta T^{3/2}).
double polarization_at(const MaterialDeck& deck, double temperature);

/// mu0*Ms(T) = mu0*Ms0 [1 - (T/T*)^{3/2}], in tesla. Requires T < T*.
double saturation_magnetization_at(const MaterialDeck& deck, double temperature);

/// K_i(T) = K_i0 (Ms(T)/Ms0)^{ki_exponent}.
double anisotropy_at(const MaterialDeck& deck, double temperature);

/// Observed material values at one temperature.
struct MaterialAnchors {
  double polarization = 0.0;
  double ms_tesla = 0.0;
  double ki = 0.0;
};

/// Inverts the three temperature laws so that the returned deck reproduces
/// `anchors` at `anchor_temperature`. The fit parameters (beta, T*, exponent,
/// alpha, Aex) are taken from `fit`; its 0 K fields are ignored.
MaterialDeck calibrate_deck(const MaterialAnchors& anchors, double anchor_temperature,
                            const MaterialDeck& fit = {});

}  // namespace cryomram::physics
