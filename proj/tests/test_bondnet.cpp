#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "tunclock/bondnet.hpp"
#include "tunclock/constants.hpp"

using namespace tunclock;
using namespace tunclock::bondnet;

namespace {

using Grid = std::vector<std::vector<cplx>>;

Grid random_grid(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g;
  Grid m(rows, std::vector<cplx>(cols));
  for (auto& row : m)
    for (auto& v : row) v = {g(rng), g(rng)};
  return m;
}

Matrix to_matrix(const Grid& g) {
  Matrix m(g.size(), g.empty() ? 0 : g[0].size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = g[r][c];
  return m;
}

BondNetwork random_network(std::mt19937_64& rng, std::size_t n, std::size_t extra_bonds) {
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({"n" + std::to_string(i)});
  std::vector<Bond> bonds;
  std::uniform_int_distribution<int> chi(1, 16);
  for (std::size_t i = 1; i < n; ++i) {
    bonds.push_back({std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i, chi(rng)});
  }
  for (std::size_t k = 0; k < extra_bonds; ++k) {
    std::size_t a = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    std::size_t b = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    if (a != b) bonds.push_back({a, b, chi(rng)});
  }
  return BondNetwork(nodes, bonds);
}

}  // namespace

TEST_CASE("chi = 1 gives a product state") {
  TwoSiteState s{to_matrix({{2.0}, {3.0}}), to_matrix({{5.0}, {7.0}})};
  auto amp = contract_two_site(s);
  CHECK(amp(0, 0) == cplx(10.0));
  CHECK(amp(0, 1) == cplx(14.0));
  CHECK(amp(1, 0) == cplx(15.0));
  CHECK(amp(1, 1) == cplx(21.0));
}

TEST_CASE("Bell state") {
  const double r = 1.0 / std::numbers::sqrt2;
  TwoSiteState s{to_matrix({{1.0, 0.0}, {0.0, 1.0}}), to_matrix({{r, 0.0}, {0.0, r}})};
  auto amp = contract_two_site(s);
  CHECK(std::abs(amp(0, 0) - r) < 1e-12);
  CHECK(std::abs(amp(0, 1)) < 1e-12);
  CHECK(std::abs(amp(1, 0)) < 1e-12);
  CHECK(std::abs(amp(1, 1) - r) < 1e-12);
  auto n = contract_two_site(s, true);
  CHECK(n.frobenius_norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("contraction errors") {
  TwoSiteState bad{Matrix(2, 3), Matrix(2, 2)};
  CHECK_THROWS_AS(contract_two_site(bad), ShapeError);
  TwoSiteState zero{Matrix(2, 2), Matrix(2, 2)};
  CHECK_NOTHROW(contract_two_site(zero));
  CHECK_THROWS_AS(contract_two_site(zero, true), ShapeError);
}

TEST_CASE("contraction matches the triple loop") {
  std::mt19937_64 rng(17);
  for (std::size_t da = 1; da <= 4; ++da)
    for (std::size_t db = 1; db <= 4; ++db)
      for (std::size_t chi = 1; chi <= 8; ++chi) {
        auto X = random_grid(rng, da, chi);
        auto Y = random_grid(rng, db, chi);
        auto ref = oracle::contract(X, Y);
        auto amp = contract_two_site({to_matrix(X), to_matrix(Y)});
        for (std::size_t a = 0; a < da; ++a)
          for (std::size_t b = 0; b < db; ++b) CHECK(std::abs(amp(a, b) - ref[a][b]) <= 1e-12 * (1 + std::abs(ref[a][b])));
        auto n = contract_two_site({to_matrix(X), to_matrix(Y)}, true);
        CHECK(n.frobenius_norm() == doctest::Approx(1.0).epsilon(1e-12));
      }
}

TEST_CASE("Schmidt rank equals the bond dimension") {
  std::mt19937_64 rng(23);
  for (std::size_t chi = 1; chi <= 4; ++chi) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t d = 4;
      auto amp = contract_two_site({to_matrix(random_grid(rng, d, chi)), to_matrix(random_grid(rng, d, chi))});
      Eigen::MatrixXcd m(d, d);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) m(a, b) = amp(a, b);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
      const auto& sv = svd.singularValues();
      std::size_t rank = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-10 * sv(0);
      CHECK(rank == chi);
    }
  }
}

TEST_CASE("network validation and parsing") {
  CHECK_THROWS_AS(BondNetwork({}, {}), ShapeError);
  CHECK_THROWS_AS(BondNetwork({{"a"}}, {{0, 0, 2}}), ShapeError);
  CHECK_THROWS_AS(BondNetwork({{"a"}, {"b"}}, {{0, 1, 0}}), ShapeError);
  CHECK_THROWS_AS(BondNetwork({{"a"}, {"a"}}, {}), ShapeError);
  CHECK_THROWS_AS(BondNetwork({{"a", 1}}, {}), ShapeError);

  std::istringstream ok("# demo\nnode a 0 0 0\nnode b 1 0 0   # trailing\n\nbond a b 4\n");
  auto net = BondNetwork::read(ok);
  CHECK(net.nodes().size() == 2);
  REQUIRE(net.nodes()[1].position);
  CHECK((*net.nodes()[1].position)[0] == 1.0);
  CHECK(net.bonds()[0].chi == 4);

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      (void)BondNetwork::read(in);
    } catch (const NetworkFormatError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("node a\nnode b\nbond a c 2\n") == 3);
  CHECK(line_of("node a\nbond a a 2\n") == 2);
  CHECK(line_of("node a\nnode b\nbond a b two\n") == 3);
  CHECK(line_of("node a 1 2\n") == 1);
  CHECK(line_of("edge a b\n") == 1);
  CHECK(line_of("node a\nnode a\n") == 2);
  CHECK(line_of("# nothing\n") > 0);
}

TEST_CASE("capacity") {
  auto single = BondNetwork({{"a"}}, {});
  auto c0 = entanglement_capacity(single);
  CHECK(c0.bond_count == 0);
  CHECK(c0.total_log2_chi == 0.0);
  auto path = BondNetwork::path(4, 2);
  auto c3 = entanglement_capacity(path, 2.5);
  CHECK(c3.bond_count == 3);
  CHECK(c3.total_log2_chi == 3.0);
  CHECK(c3.model_energy == 7.5);

  std::mt19937_64 rng(101);
  auto net = random_network(rng, 100, 60);
  std::size_t count = 0;
  long double bits = 0;
  for (const auto& b : net.bonds()) {
    ++count;
    bits += std::log2(static_cast<long double>(b.chi));
  }
  auto c = entanglement_capacity(net);
  CHECK(c.bond_count == count);
  CHECK(c.total_log2_chi == doctest::Approx(static_cast<double>(bits)).epsilon(1e-13));

  auto other = random_network(rng, 30, 10);
  auto u = net.disjoint_union(other, "o.");
  auto cu = entanglement_capacity(u);
  auto co = entanglement_capacity(other);
  CHECK(cu.bond_count == c.bond_count + co.bond_count);
  CHECK(cu.total_log2_chi == doctest::Approx(c.total_log2_chi + co.total_log2_chi).epsilon(1e-14));
  CHECK(u.nodes().size() == 130);
}

TEST_CASE("collapse propagation") {
  CHECK(collapse_propagation_time(BondNetwork({{"a"}}, {}), 0, 1.0) == 0.0);
  auto path = BondNetwork::path(3, 2);
  CHECK(collapse_propagation_time(path, 0, 1.0) == 2.0);
  CHECK(collapse_propagation_time(path, 1, 1.0) == 1.0);
  auto star = BondNetwork::star(5, 4);
  CHECK(collapse_propagation_time(star, 0, 1.0) == 2.0);
  CHECK(collapse_propagation_time(star, 1, 1.0) == 4.0);
  CHECK(bond_delay(1, 1.0) == 1.0);
  CHECK(bond_delay(8, 0.5) == 1.5);
  CHECK(bond_delay(8, 0.5, DelayPolicy::linear_chi) == 4.0);
  CHECK(bond_delay(8, 0.5, DelayPolicy::constant) == 0.5);
  CHECK_THROWS_AS(collapse_propagation_time(path, 0, 0.0), DomainError);
  CHECK_THROWS_AS(collapse_propagation_time(path, 7, 1.0), DomainError);

  // a separate component is ignored
  auto two = path.disjoint_union(BondNetwork::path(10, 16), "x");
  CHECK(collapse_propagation_time(two, 0, 1.0) == 2.0);
}

TEST_CASE("propagation never decreases when a bond dimension grows") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 200)(rng);
    auto net = random_network(rng, n, n / 3);
    const std::size_t src = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const double before = collapse_propagation_time(net, src, 1.0);
    auto bonds = net.bonds();
    auto& b = bonds[std::uniform_int_distribution<std::size_t>(0, bonds.size() - 1)(rng)];
    b.chi *= 3;
    BondNetwork grown(net.nodes(), bonds);
    CHECK(collapse_propagation_time(grown, src, 1.0) >= before);
    // parallel bond with larger chi between two already bonded nodes
    auto more = net.bonds();
    auto pick = more[0];
    pick.chi += 5;
    more.push_back(pick);
    CHECK(collapse_propagation_time(BondNetwork(net.nodes(), more), src, 1.0) >= before - 1e-12);
  }
}

TEST_CASE("flux laws") {
  for (double B : {1.0, 100.0, 3.7e9}) {
    for (double r : {1e-3, 2.0, 6.371e6}) {
      CHECK(entanglement_flux(B, r, FluxGeometry::area_law_2d) / entanglement_flux(B, 2 * r, FluxGeometry::area_law_2d) == 2.0);
      CHECK(entanglement_flux(B, r, FluxGeometry::volume_3d) / entanglement_flux(B, 2 * r, FluxGeometry::volume_3d) == 4.0);
    }
  }
  CHECK(entanglement_flux(100, 2.0, FluxGeometry::area_law_2d) == doctest::Approx(100 / (4 * std::numbers::pi)));
  CHECK(entanglement_flux(0, 2.0, FluxGeometry::volume_3d) == 0.0);
  CHECK_THROWS_AS(entanglement_flux(1, 0.0, FluxGeometry::area_law_2d), DomainError);
  CHECK_THROWS_AS(entanglement_flux(-1, 1.0, FluxGeometry::area_law_2d), DomainError);
  CHECK(area_law_potential(2.0, 3.0, 4.0) == doctest::Approx(2.0 * 3.0 * si::c * si::c / 4.0));
}
