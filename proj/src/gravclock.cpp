#include "tunclock/gravclock.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tunclock/bondnet.hpp"
#include "tunclock/constants.hpp"

namespace tunclock::grav {

namespace {

constexpr double c2 = si::c * si::c;
constexpr double c4 = c2 * c2;

// 1 - ratio below this is indistinguishable from the horizon at double precision.
constexpr double kHorizonSlack = 8.0 * std::numeric_limits<double>::epsilon();

void check_outside_horizon(double ratio) {
  if (!(1.0 - ratio > kHorizonSlack)) {
    std::ostringstream os;
    os << "at or inside the Schwarzschild radius (ratio " << ratio << "); dilation diverges";
    throw HorizonError(os.str());
  }
}

}  // namespace

double default_d0() { return si::c / std::numbers::sqrt2 * 1.0; }
double canonical_b(double e0) { return 2.0 * si::G * e0 / c4; }
double energy_from_b(double b) { return b * c4 / (2.0 * si::G); }

double schwarzschild_ratio(double mass, double r) { return 2.0 * si::G * mass / (r * c2); }
double schwarzschild_radius(double mass) { return 2.0 * si::G * mass / c2; }

double DilationParams::m0() const { return E0 / c2; }

DilationParams DilationParams::canonical(double M, double r) {
  return from_b(M, r, si::planck_length(), default_d0());
}

DilationParams DilationParams::from_b(double M, double r, double b, double d0) {
  return DilationParams{M, r, d0, b, energy_from_b(b)};
}

DilationParams DilationParams::from_energy(double M, double r, double e0, double d0) {
  return DilationParams{M, r, d0, canonical_b(e0), e0};
}

void DilationParams::validate() const {
  if (!(M >= 0.0) || !std::isfinite(M)) throw DomainError("mass must be non-negative and finite");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("radius must be positive and finite");
  if (!(d0 > 0.0) || !std::isfinite(d0)) throw DomainError("d0 must be positive");
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("b must be positive");
  if (!(E0 > 0.0) || !std::isfinite(E0)) throw DomainError("E0 must be positive");
}

CollapseTransmission collapse_transmission(const DilationParams& p) {
  p.validate();
  const double V = bondnet::area_law_potential(p.b, p.M, p.r);
  CollapseTransmission out{1.0, 0.0, V, V >= p.E0};
  if (out.tunneling) {
    const double kappa = std::sqrt(2.0 * p.m0() * (V - p.E0)) / si::hbar;
    out.log_probability = -2.0 * p.d0 * kappa;
    out.probability = std::exp(out.log_probability);
  }
  return out;
}

DilationResult dilation_tunneling(const DilationParams& p) {
  p.validate();
  DilationResult out{};
  out.schwarzschild_ratio = schwarzschild_ratio(p.M, p.r);
  out.potential_ratio = bondnet::area_law_potential(p.b, p.M, p.r) / p.E0;
  check_outside_horizon(out.potential_ratio);

  const double scale = c2 / (2.0 * p.d0 * p.d0);
  // Below the barrier the root is imaginary; the magnitude is what counts.
  out.t_T = std::abs(1.0 / std::sqrt(scale * (1.0 - out.potential_ratio)));
  out.A0 = std::sqrt(scale);
  out.delta_t_min = out.A0 * out.t_T;
  return out;
}

double dilation_gr(double mass, double r) {
  if (!(mass >= 0.0)) throw DomainError("mass must be non-negative");
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const double x = schwarzschild_ratio(mass, r);
  check_outside_horizon(x);
  return 1.0 / std::sqrt(1.0 - x);
}

DerivedConstants derive_constants(double b, double d0) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("b must be positive");
  if (!(d0 > 0.0) || !std::isfinite(d0)) throw DomainError("d0 must be positive");
  DerivedConstants out{};
  out.b = b;
  out.d0 = d0;
  out.A0 = si::c / (std::numbers::sqrt2 * d0);
  out.E0 = energy_from_b(b);
  out.m0 = out.E0 / c2;
  out.rho_from_b = out.E0 / (b * b * b);
  const double c7 = c4 * c2 * si::c;
  out.rho_closed = c7 / (2.0 * si::G * si::G * si::hbar);
  return out;
}

}  // namespace tunclock::grav
