#pragma once

// Gravitational time dilation recovered from the tunneling time through a
// 1/r mass-energy potential, next to the reference Schwarzschild factor.
//
// Symbols: M mass of the body, r radial coordinate, d0 causal correlation
// distance, b length scale of the 1/r potential b M c^2 / r, E0 and m0 = E0/c^2
// the test (vacuum) kinetic energy and rest mass.

#include "tunclock/error.hpp"

namespace tunclock::grav {

class HorizonError : public Error {
 public:
  explicit HorizonError(const std::string& what) : Error(ErrorKind::horizon, what) {}
};

/// c / sqrt(2) * 1 s, the distance that makes A0 = 1 s^-1.
double default_d0();

/// b = 2 G E0 / c^4.
double canonical_b(double e0);
/// E0 = b c^4 / (2 G).
double energy_from_b(double b);

/// 2 G M / (r c^2).
double schwarzschild_ratio(double mass, double r);
/// 2 G M / c^2.
double schwarzschild_radius(double mass);

struct DilationParams {
  double M;       // kg
  double r;       // m
  double d0;      // m
  double b;       // m
  double E0;      // J
  double a = 0.0;  // V0 = a E_T; never fixed, absorbed into b

  double m0() const;

  /// b = l_p, E0 = b c^4 / (2G), d0 = default_d0().
  static DilationParams canonical(double M, double r);
  /// E0 derived from b so the identification b = 2 G E0 / c^4 holds.
  static DilationParams from_b(double M, double r, double b, double d0);
  /// b derived from E0.
  static DilationParams from_energy(double M, double r, double e0, double d0);

  /// Throws DomainError unless M >= 0, r > 0, d0 > 0, b > 0, E0 > 0.
  void validate() const;
};

struct CollapseTransmission {
  double probability;      // T_c, clamped to 1 outside the tunneling regime
  double log_probability;  // -2 d0 sqrt(2 m0 (V - E0)) / hbar
  double potential;        // b M c^2 / r
  bool tunneling;          // V >= E0
};

/// T_c = exp(-2 d0 sqrt(2 m0 / hbar^2 (b M c^2 / r - E0))).
CollapseTransmission collapse_transmission(const DilationParams& params);

struct DilationResult {
  double schwarzschild_ratio;  // 2GM/(rc^2)
  double potential_ratio;      // b M c^2 / (r E0); equals the ratio above for canonical b
  double t_T;                  // s
  double A0;                   // s^-1
  double delta_t_min;          // A0 * t_T
};

/// t_T = |1 / sqrt(c^2/(2 d0^2) (1 - b M c^2/(r E0)))|, A0 = c/(sqrt 2 d0).
DilationResult dilation_tunneling(const DilationParams& params);

/// 1 / sqrt(1 - 2GM/(rc^2)).
double dilation_gr(double mass, double r);

struct DerivedConstants {
  double b;
  double d0;
  double A0;            // s^-1
  double E0;            // J
  double m0;            // kg
  double rho_from_b;    // E0 / b^3, J m^-3
  double rho_closed;    // c^7 / (2 G^2 hbar)
};

DerivedConstants derive_constants(double b, double d0);

}  // namespace tunclock::grav
