#pragma once

// Cartesian parameter sweeps over registered target operations. Rows come
// out row-major in axis declaration order (the last axis varies fastest) and
// are byte-identical whatever the worker count. Per-point failures land in
// the status/error columns instead of aborting the sweep.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tunclock/table.hpp"

namespace tunclock::sweep {

enum class Scale { linear, log };

struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 1;
  Scale scale = Scale::linear;

  /// Throws DomainError on points == 0, start >= stop with points > 1, or a
  /// non-positive endpoint on a log axis.
  void validate() const;
  /// Grid values; both endpoints are reproduced exactly.
  std::vector<double> values() const;
};

/// "start:stop:points[:log|:lin]"
Axis parse_axis(const std::string& name, const std::string& text);

/// Named scalar inputs visible to a target for one grid point.
class Inputs {
 public:
  explicit Inputs(std::map<std::string, double> values) : values_(std::move(values)) {}
  std::optional<double> find(const std::string& name) const;
  /// Throws DomainError if absent.
  double at(const std::string& name) const;

 private:
  std::map<std::string, double> values_;
};

struct Evaluation {
  std::vector<Cell> outputs;
  std::string status = "ok";
};

struct Target {
  std::string id;
  /// Every entry must be provided; "a|b" means at least one of a, b.
  std::vector<std::string> required;
  std::vector<std::string> outputs;
  std::function<Evaluation(const Inputs&)> eval;
};

const Target& find_target(const std::string& id);
std::vector<std::string> target_ids();

struct SweepSpec {
  std::vector<Axis> axes;
  std::string target;
  std::map<std::string, double> fixed;
  std::vector<std::string> columns;  // subset of target outputs; empty = all
};

/// Throws DomainError for an invalid spec (unknown target, bad axis, missing
/// input, unknown column).
Table run_sweep(const SweepSpec& spec, std::size_t workers = 1);

}  // namespace tunclock::sweep
