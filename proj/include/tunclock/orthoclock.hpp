#pragma once

// Spectral time evolution, first orthogonalization time and the
// Margolus-Levitin bound h / (4 <E>).

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "tunclock/error.hpp"

namespace tunclock::ortho {

using cplx = std::complex<double>;

struct Level {
  double energy;  // J
  cplx amplitude;
};

/// Levels sorted by energy and shifted so the lowest sits at zero.
class SpectralState {
 public:
  static constexpr std::size_t kMaxLevels = 64;
  static constexpr double kNormTolerance = 1e-12;

  /// Requires sum |c_n|^2 = 1 within kNormTolerance.
  explicit SpectralState(std::vector<Level> levels);

  /// Rescales the amplitudes to unit norm first (zero norm is a DomainError).
  static SpectralState normalized(std::vector<Level> levels);

  const std::vector<Level>& levels() const noexcept { return levels_; }
  /// Offset subtracted from the input energies.
  double ground_offset() const noexcept { return offset_; }
  double mean_energy() const;

 private:
  SpectralState() = default;
  void init(std::vector<Level> levels);

  std::vector<Level> levels_;
  double offset_ = 0.0;
};

/// <psi_0|psi_t> = sum |c_n|^2 exp(-i E_n t / hbar)
cplx overlap(const SpectralState& state, double t);

struct OrthogonalTime {
  double t_orth;        // location of the first dip with |overlap| <= tol
  double t_enter;       // earliest time with |overlap| <= tol
  double min_overlap;   // |overlap(t_orth)|
};

struct OrthoOptions {
  double tol = 1e-6;
  std::size_t grid_points = 4096;
};

/// nullopt when the state never becomes orthogonal at `tol` inside the scan
/// window [0, 4 pi hbar / dE_min].
std::optional<OrthogonalTime> first_orthogonal_time(const SpectralState& state, const OrthoOptions& options = {});

struct MLBound {
  double t_min;  // h / (4 <E>)
  double rate;   // 2 <E> / (pi hbar)
};

class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};

MLBound ml_bound(const SpectralState& state);

}  // namespace tunclock::ortho
