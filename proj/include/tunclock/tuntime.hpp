#pragma once

// Tunneling (delay) time t_T = hbar * d ln|T(E)| / dE, evaluated either in
// closed form for a rectangular opaque barrier or by Richardson-extrapolated
// central differences for any transmission function.

#include <functional>

#include "tunclock/error.hpp"
#include "tunclock/scatter1d.hpp"

namespace tunclock::tuntime {

enum class Method { closed_form, finite_difference };

struct TunnelingTimeResult {
  double energy;           // J
  double t_T;              // s
  Method method;
  double step_used = 0.0;  // J, finite difference only
  double estimated_error = 0.0;  // s
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error(ErrorKind::divergence, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(ErrorKind::convergence, what) {}
};

struct ClosedFormOptions {
  /// t_T above this is reported as divergence (E too close to V0).
  double ceiling = 1.0e-9;  // s
};

/// t_T = L sqrt(2m / (V0 - E)) for a single-segment barrier, 0 < E < V0.
TunnelingTimeResult tunneling_time_closed(const scatter::PotentialProfile& profile, double energy,
                                          const ClosedFormOptions& options = {});

struct FiniteDifferenceOptions {
  double relative_step = 1.0e-5;
  double min_step = 1.0e-30;     // J
  double tolerance = 1.0e-4;     // accepted when error <= tolerance * |t_T|
  int max_refinements = 8;
};

using TransmissionFn = std::function<double(double)>;

TunnelingTimeResult tunneling_time_fd(const TransmissionFn& transmission, double energy,
                                      const FiniteDifferenceOptions& options = {});

}  // namespace tunclock::tuntime
