#include "tunclock/tuntime.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tunclock/constants.hpp"

namespace tunclock::tuntime {

TunnelingTimeResult tunneling_time_closed(const scatter::PotentialProfile& profile, double energy,
                                          const ClosedFormOptions& options) {
  if (!profile.is_single_segment()) {
    throw scatter::UnsupportedProfileError("closed-form tunneling time needs a single rectangular segment");
  }
  const auto& seg = profile.segments().front();
  if (!(energy > 0.0)) throw DomainError("energy must be positive");
  if (std::abs(energy - seg.height) <= 8.0 * std::numeric_limits<double>::epsilon() * seg.height) {
    throw DivergenceError("tunneling time diverges at E = V0");
  }
  if (!(energy < seg.height)) throw DomainError("tunneling time requires E < V0");
  const double t = seg.width * std::sqrt(2.0 * profile.mass() / (seg.height - energy));
  if (!std::isfinite(t) || t > options.ceiling) {
    std::ostringstream os;
    os << "tunneling time " << t << " s exceeds ceiling " << options.ceiling << " s as E approaches V0";
    throw DivergenceError(os.str());
  }
  return TunnelingTimeResult{energy, t, Method::closed_form, 0.0, 0.0};
}

namespace {

double log_transmission(const TransmissionFn& transmission, double e) {
  const double T = transmission(e);
  if (!(T > 0.0) || !std::isfinite(T)) {
    std::ostringstream os;
    os << "transmission must be positive and finite, got " << T << " at E = " << e << " J";
    throw DomainError(os.str());
  }
  return std::log(T);
}

double central(const TransmissionFn& transmission, double e, double h) {
  return (log_transmission(transmission, e + h) - log_transmission(transmission, e - h)) / (2.0 * h);
}

}  // namespace

TunnelingTimeResult tunneling_time_fd(const TransmissionFn& transmission, double energy,
                                      const FiniteDifferenceOptions& options) {
  if (!std::isfinite(energy)) throw DomainError("energy must be finite");
  double h = std::max(std::abs(energy) * options.relative_step, options.min_step);

  double best = 0.0;
  double best_err = 0.0;
  for (int attempt = 0; attempt <= options.max_refinements; ++attempt, h *= 0.5) {
    const double coarse = central(transmission, energy, h);
    const double fine = central(transmission, energy, 0.5 * h);
    // Central differences carry an h^2 leading error: one Richardson level.
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    const double t = std::abs(si::hbar * extrapolated);
    const double err = std::abs(si::hbar * (extrapolated - fine));
    if (attempt == 0 || err < best_err) {
      best = t;
      best_err = err;
    }
    if (err <= options.tolerance * t) {
      return TunnelingTimeResult{energy, t, Method::finite_difference, h, err};
    }
  }
  std::ostringstream os;
  os << "finite-difference tunneling time did not converge (t = " << best << " s, error estimate " << best_err
     << " s)";
  throw ConvergenceError(os.str());
}

}  // namespace tunclock::tuntime
