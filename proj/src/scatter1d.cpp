#include "tunclock/scatter1d.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "tunclock/constants.hpp"

namespace tunclock::scatter {

using cplx = std::complex<double>;

PotentialProfile::PotentialProfile(std::vector<Segment> segments, double mass)
    : segments_(std::move(segments)), mass_(mass) {
  if (segments_.empty()) throw DomainError("potential profile needs at least one segment");
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw DomainError("particle mass must be positive");
  for (const auto& s : segments_) {
    if (!(s.width > 0.0) || !std::isfinite(s.width)) throw DomainError("segment widths must be positive and finite");
    if (!std::isfinite(s.height)) throw DomainError("segment heights must be finite");
    total_width_ += s.width;
  }
  if (!std::isfinite(total_width_)) throw DomainError("total barrier width is not finite");
}

PotentialProfile PotentialProfile::rectangular(double mass, double height, double width) {
  return PotentialProfile({Segment{width, height}}, mass);
}

cplx wavevector(double mass, double energy, double height) {
  const double diff = energy - height;
  const double k = std::sqrt(2.0 * mass * std::abs(diff)) / si::hbar;
  return diff >= 0.0 ? cplx(k, 0.0) : cplx(0.0, k);
}

double decay_constant(double mass, double energy, double height) {
  return std::sqrt(2.0 * mass * (height - energy)) / si::hbar;
}

namespace {

// 2x2 complex matrix acting on plane-wave coefficients (A, B) of
// A e^{ikx} + B e^{-ikx}, row-major.
struct Mat2 {
  cplx a, b, c, d;

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

// Matching psi and psi' at an interface from wavevector k1 to k2.
Mat2 interface(cplx k1, cplx k2) {
  const cplx ratio = k1 / k2;
  const cplx plus = 0.5 * (1.0 + ratio);
  const cplx minus = 0.5 * (1.0 - ratio);
  return {plus, minus, minus, plus};
}

// Free propagation across a region of width w in local coordinates.
Mat2 propagate(cplx k, double w) {
  const cplx phase = std::exp(cplx(0.0, 1.0) * k * w);
  return {phase, 0.0, 0.0, 1.0 / phase};
}

}  // namespace

ScatteringResult transfer_matrix_scatter(const PotentialProfile& profile, double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) throw DomainError("scattering energy must be positive");
  constexpr double kDegenerateTol = 8.0 * std::numeric_limits<double>::epsilon();
  for (const auto& s : profile.segments()) {
    if (std::abs(energy - s.height) <= kDegenerateTol * std::max(std::abs(energy), std::abs(s.height))) {
      throw DegenerateWavevectorError("energy coincides with a segment height; perturb the energy");
    }
  }

  const double m = profile.mass();
  const cplx k_out = wavevector(m, energy, 0.0);

  // Coefficients (A, B) at the right edge of each region map to the next
  // region's left edge through the interface matrix, then propagate.
  Mat2 total{1.0, 0.0, 0.0, 1.0};
  cplx det = 1.0;
  cplx k_prev = k_out;
  for (const auto& s : profile.segments()) {
    const cplx k = wavevector(m, energy, s.height);
    total = propagate(k, s.width) * interface(k_prev, k) * total;
    det *= k_prev / k;
    k_prev = k;
  }
  total = interface(k_prev, k_out) * total;
  det *= k_prev / k_out;

  // (t, 0) = total * (1, r)
  const cplx r = -total.c / total.d;
  const cplx t = det / total.d;

  ScatteringResult out{energy, t, r, std::norm(t), std::norm(r)};
  return out;
}

double opaque_transmission(const PotentialProfile& profile, double energy) {
  if (!profile.is_single_segment()) {
    throw UnsupportedProfileError("opaque transmission is defined for a single rectangular segment");
  }
  const Segment& s = profile.segments().front();
  if (!(energy > 0.0)) throw DomainError("energy must be positive");
  if (!(energy < s.height)) throw DomainError("opaque form is valid only below the barrier top (E < V0)");
  const double kappa = decay_constant(profile.mass(), energy, s.height);
  return std::exp(-2.0 * kappa * s.width);
}

}  // namespace tunclock::scatter
