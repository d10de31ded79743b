#include "tunclock/bondnet.hpp"

#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "tunclock/constants.hpp"

namespace tunclock::bondnet {

double Matrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

Matrix contract_two_site(const TwoSiteState& state, bool normalize) {
  const Matrix& X = state.X;
  const Matrix& Y = state.Y;
  if (X.cols() != Y.cols()) {
    throw ShapeError("bond dimension mismatch: X has " + std::to_string(X.cols()) + " columns, Y has " +
                     std::to_string(Y.cols()));
  }
  if (X.cols() == 0 || X.rows() == 0 || Y.rows() == 0) throw ShapeError("empty tensor");

  Matrix out(X.rows(), Y.rows());
  for (std::size_t alpha = 0; alpha < X.rows(); ++alpha) {
    for (std::size_t beta = 0; beta < Y.rows(); ++beta) {
      cplx sum = 0.0;
      for (std::size_t j = 0; j < X.cols(); ++j) sum += X(alpha, j) * Y(beta, j);
      out(alpha, beta) = sum;
    }
  }
  if (normalize) {
    const double norm = out.frobenius_norm();
    if (!(norm > 0.0)) throw ShapeError("amplitude table is identically zero");
    for (std::size_t a = 0; a < out.rows(); ++a) {
      for (std::size_t b = 0; b < out.cols(); ++b) out(a, b) /= norm;
    }
  }
  return out;
}

// --- BondNetwork -----------------------------------------------------------

BondNetwork::BondNetwork(std::vector<Node> nodes, std::vector<Bond> bonds)
    : nodes_(std::move(nodes)), bonds_(std::move(bonds)) {
  if (nodes_.empty()) throw ShapeError("network needs at least one node");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].d_phys < 2) throw ShapeError("node '" + nodes_[i].id + "' has physical dimension < 2");
    if (!index_.emplace(nodes_[i].id, i).second) throw ShapeError("duplicate node id '" + nodes_[i].id + "'");
  }
  for (const auto& b : bonds_) {
    if (b.a >= nodes_.size() || b.b >= nodes_.size()) throw ShapeError("bond references a missing node");
    if (b.a == b.b) throw ShapeError("self-loop on node '" + nodes_[b.a].id + "'");
    if (b.chi < 1) throw ShapeError("bond dimension must be >= 1");
  }
}

std::optional<std::size_t> BondNetwork::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BondNetwork BondNetwork::read(std::istream& in) {
  std::vector<Node> nodes;
  std::vector<Bond> bonds;
  std::map<std::string, std::size_t, std::less<>> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    std::vector<std::string> fields;
    for (std::string f; ls >> f;) fields.push_back(f);

    auto number = [&](const std::string& text, const char* what) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != text.size() || !std::isfinite(v)) {
        throw NetworkFormatError(lineno, std::string("invalid ") + what + " '" + text + "'");
      }
      return v;
    };

    if (keyword == "node") {
      if (fields.size() != 1 && fields.size() != 4) {
        throw NetworkFormatError(lineno, "expected 'node <id> [x y z]'");
      }
      Node n{fields[0], 2, std::nullopt};
      if (fields.size() == 4) {
        n.position = std::array<double, 3>{number(fields[1], "coordinate"), number(fields[2], "coordinate"),
                                           number(fields[3], "coordinate")};
      }
      if (!ids.emplace(n.id, nodes.size()).second) throw NetworkFormatError(lineno, "duplicate node '" + n.id + "'");
      nodes.push_back(std::move(n));
    } else if (keyword == "bond") {
      if (fields.size() != 3) throw NetworkFormatError(lineno, "expected 'bond <id1> <id2> <chi>'");
      auto a = ids.find(fields[0]);
      auto b = ids.find(fields[1]);
      if (a == ids.end()) throw NetworkFormatError(lineno, "unknown node '" + fields[0] + "'");
      if (b == ids.end()) throw NetworkFormatError(lineno, "unknown node '" + fields[1] + "'");
      if (a->second == b->second) throw NetworkFormatError(lineno, "self-loop on '" + fields[0] + "'");
      const double chi = number(fields[2], "bond dimension");
      if (chi < 1.0 || chi != std::floor(chi) || chi > std::numeric_limits<int>::max()) {
        throw NetworkFormatError(lineno, "bond dimension must be an integer >= 1");
      }
      bonds.push_back(Bond{a->second, b->second, static_cast<int>(chi)});
    } else {
      throw NetworkFormatError(lineno, "unknown record '" + keyword + "'");
    }
  }
  if (nodes.empty()) throw NetworkFormatError(lineno, "network has no nodes");
  return BondNetwork(std::move(nodes), std::move(bonds));
}

BondNetwork BondNetwork::path(std::size_t n, int chi) {
  std::vector<Node> nodes;
  std::vector<Bond> bonds;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back(Node{"n" + std::to_string(i), 2, std::nullopt});
    if (i > 0) bonds.push_back(Bond{i - 1, i, chi});
  }
  return BondNetwork(std::move(nodes), std::move(bonds));
}

BondNetwork BondNetwork::star(std::size_t leaves, int chi) {
  std::vector<Node> nodes{Node{"hub", 2, std::nullopt}};
  std::vector<Bond> bonds;
  for (std::size_t i = 1; i <= leaves; ++i) {
    nodes.push_back(Node{"leaf" + std::to_string(i), 2, std::nullopt});
    bonds.push_back(Bond{0, i, chi});
  }
  return BondNetwork(std::move(nodes), std::move(bonds));
}

BondNetwork BondNetwork::disjoint_union(const BondNetwork& other, const std::string& prefix) const {
  std::vector<Node> nodes = nodes_;
  std::vector<Bond> bonds = bonds_;
  const std::size_t offset = nodes.size();
  for (Node n : other.nodes_) {
    n.id = prefix + n.id;
    nodes.push_back(std::move(n));
  }
  for (const auto& b : other.bonds_) bonds.push_back(Bond{b.a + offset, b.b + offset, b.chi});
  return BondNetwork(std::move(nodes), std::move(bonds));
}

// --- accounting ------------------------------------------------------------

Capacity entanglement_capacity(const BondNetwork& net, double k) {
  Capacity cap;
  cap.bond_count = net.bonds().size();
  for (const auto& b : net.bonds()) cap.total_log2_chi += std::log2(static_cast<double>(b.chi));
  cap.model_energy = k * cap.total_log2_chi;
  return cap;
}

double bond_delay(int chi, double tau_b, DelayPolicy policy) {
  switch (policy) {
    case DelayPolicy::log2_chi: return tau_b * std::log2(static_cast<double>(std::max(chi, 2)));
    case DelayPolicy::linear_chi: return tau_b * static_cast<double>(chi);
    case DelayPolicy::constant: return tau_b;
  }
  return tau_b;
}

double collapse_propagation_time(const BondNetwork& net, std::size_t source, double tau_b, DelayPolicy policy) {
  if (source >= net.nodes().size()) throw DomainError("collapse source is not a node of the network");
  if (!(tau_b > 0.0)) throw DomainError("per-bond delay tau_b must be positive");

  const std::size_t n = net.nodes().size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& b : net.bonds()) {
    const double w = bond_delay(b.chi, tau_b, policy);
    adj[b.a].emplace_back(b.b, w);
    adj[b.b].emplace_back(b.a, w);
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        queue.emplace(dist[v], v);
      }
    }
  }
  double ecc = 0.0;
  for (double d : dist) {
    if (d != kInf) ecc = std::max(ecc, d);
  }
  return ecc;
}

double entanglement_flux(double bonds, double r, FluxGeometry geometry) {
  if (!(r > 0.0)) throw DomainError("flux radius must be positive");
  if (bonds < 0.0) throw DomainError("bond count must be non-negative");
  switch (geometry) {
    case FluxGeometry::area_law_2d: return bonds / (2.0 * std::numbers::pi * r);
    case FluxGeometry::volume_3d: return bonds / (4.0 * std::numbers::pi * r * r);
  }
  return 0.0;
}

double area_law_potential(double b, double mass, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  return b * mass * si::c * si::c / r;
}

}  // namespace tunclock::bondnet
