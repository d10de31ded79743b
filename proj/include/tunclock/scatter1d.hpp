#pragma once

// Exact 1D scattering through piecewise-constant potentials (transfer
// matrices) and the opaque-barrier exponential e^{-2 kappa L}.
//
// All quantities are SI doubles: energies in J, widths in m, mass in kg.
// The potential is zero on both sides of the profile.

#include <complex>
#include <span>
#include <vector>

#include "tunclock/error.hpp"

namespace tunclock::scatter {

struct Segment {
  double width;   // m, > 0
  double height;  // J
};

class PotentialProfile {
 public:
  /// Throws DomainError unless there is at least one segment, every width is
  /// positive and finite, and the mass is positive.
  PotentialProfile(std::vector<Segment> segments, double mass);

  static PotentialProfile rectangular(double mass, double height, double width);

  std::span<const Segment> segments() const noexcept { return segments_; }
  double mass() const noexcept { return mass_; }
  double total_width() const noexcept { return total_width_; }
  bool is_single_segment() const noexcept { return segments_.size() == 1; }

 private:
  std::vector<Segment> segments_;
  double mass_;
  double total_width_ = 0.0;
};

struct ScatteringResult {
  double energy;
  std::complex<double> t_amp;
  std::complex<double> r_amp;
  double T_prob;
  double R_prob;

  double unitarity_residual() const noexcept { return T_prob + R_prob - 1.0; }
};

/// Energy coincides with a segment height, so the local wavevector vanishes.
class DegenerateWavevectorError : public Error {
 public:
  explicit DegenerateWavevectorError(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};

class UnsupportedProfileError : public Error {
 public:
  explicit UnsupportedProfileError(const std::string& what) : Error(ErrorKind::unsupported_profile, what) {}
};

/// Principal-branch wavevector sqrt(2m(E - V))/hbar with Im >= 0: real above
/// the step, i*kappa below it.
std::complex<double> wavevector(double mass, double energy, double height);

/// Decay constant kappa = sqrt(2m(V - E))/hbar for E < V.
double decay_constant(double mass, double energy, double height);

ScatteringResult transfer_matrix_scatter(const PotentialProfile& profile, double energy);

/// exp(-2 kappa L) for a single-segment barrier with 0 < E < V0.
double opaque_transmission(const PotentialProfile& profile, double energy);

}  // namespace tunclock::scatter
