#pragma once

// Toy tensor-network bookkeeping: two-site contraction over an internal bond,
// bond capacity counts, single-collapse propagation delay and the geometric
// entanglement-flux laws.

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tunclock/error.hpp"

namespace tunclock::bondnet {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(ErrorKind::shape, what) {}
};

/// <alpha beta|psi> = sum_j X[alpha][j] Y[beta][j]; X is d_a x chi, Y is d_b x chi.
struct TwoSiteState {
  Matrix X;
  Matrix Y;

  std::size_t bond_dimension() const noexcept { return X.cols(); }
};

/// Amplitude table indexed [alpha][beta]. With `normalize`, divided by its
/// 2-norm (a zero table is a ShapeError since it is not normalizable).
Matrix contract_two_site(const TwoSiteState& state, bool normalize = false);

// --- networks --------------------------------------------------------------

struct Node {
  std::string id;
  int d_phys = 2;
  std::optional<std::array<double, 3>> position;
};

struct Bond {
  std::size_t a;
  std::size_t b;
  int chi;
};

class NetworkFormatError : public Error {
 public:
  NetworkFormatError(std::size_t line, const std::string& what)
      : Error(ErrorKind::format, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable after construction.
class BondNetwork {
 public:
  /// Throws ShapeError on self-loops, chi < 1, d_phys < 2, dangling
  /// indices, duplicate ids or an empty node list.
  BondNetwork(std::vector<Node> nodes, std::vector<Bond> bonds);

  /// Line-oriented text: `node <id> [x y z]` and `bond <id1> <id2> <chi>`;
  /// '#' starts a comment.
  static BondNetwork read(std::istream& in);

  static BondNetwork path(std::size_t n, int chi);
  static BondNetwork star(std::size_t leaves, int chi);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Bond>& bonds() const noexcept { return bonds_; }
  std::optional<std::size_t> index_of(const std::string& id) const;

  /// Nodes of `other` get their ids prefixed to keep them unique.
  BondNetwork disjoint_union(const BondNetwork& other, const std::string& prefix) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Bond> bonds_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct Capacity {
  std::size_t bond_count = 0;
  double total_log2_chi = 0.0;
  double model_energy = 0.0;  // k * total_log2_chi
};

/// `k` is the unspecified proportionality between bond capacity and energy.
Capacity entanglement_capacity(const BondNetwork& net, double k = 1.0);

enum class DelayPolicy {
  log2_chi,  // tau_b * log2(max(chi, 2))
  linear_chi,  // tau_b * chi
  constant,  // tau_b
};

double bond_delay(int chi, double tau_b, DelayPolicy policy = DelayPolicy::log2_chi);

/// Weighted eccentricity of `source`: the largest shortest-path delay to any
/// node reachable from it. Nodes in other components are uncorrelated and
/// ignored.
double collapse_propagation_time(const BondNetwork& net, std::size_t source, double tau_b,
                                 DelayPolicy policy = DelayPolicy::log2_chi);

enum class FluxGeometry { area_law_2d, volume_3d };

/// area_law_2d: B / (2 pi r); volume_3d: B / (4 pi r^2).
double entanglement_flux(double bonds, double r, FluxGeometry geometry);

/// b M c^2 / r, the 1/r potential that follows from the area-law flux.
double area_law_potential(double b, double mass, double r);

}  // namespace tunclock::bondnet
