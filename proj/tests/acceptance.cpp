// Acceptance run: one [PASS]/[FAIL] line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "tunclock/bondnet.hpp"
#include "tunclock/constants.hpp"
#include "tunclock/gravclock.hpp"
#include "tunclock/orthoclock.hpp"
#include "tunclock/scatter1d.hpp"
#include "tunclock/sweep.hpp"
#include "tunclock/table.hpp"
#include "tunclock/tuntime.hpp"

using namespace tunclock;

namespace {

constexpr double eV = si::eV;
constexpr double me = si::electron_mass;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
  return v;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

int cli(const std::vector<std::string>& args, const std::string& input, std::string& out) {
  std::istringstream in(input);
  std::ostringstream os;
  std::ostringstream err;
  const int code = cli::run(args, in, os, err);
  out = os.str();
  return code;
}

double csv_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(key + ",", 0) == 0) {
      const auto rest = line.substr(key.size() + 1);
      return std::stod(rest.substr(0, rest.find(',')));
    }
  }
  return std::nan("");
}

// 1 -----------------------------------------------------------------------------
Outcome constants_reproduction() {
  std::string out;
  if (cli({"constants"}, "", out) != 0) return {false, "constants subcommand failed"};
  const double d0 = csv_value(out, "d0");
  const double e0 = csv_value(out, "E0");
  const double rho_b = csv_value(out, "rho_E_from_b");
  const double rho_c = csv_value(out, "rho_E_closed");

  char d0_6[32];
  std::snprintf(d0_6, sizeof d0_6, "%.5e", d0);
  const bool d0_ok = std::string(d0_6) == "2.11985e+08";
  const double e0_dev = std::abs(e0 - 9.7e8) / 9.7e8;
  const double rho_dev = std::abs(rho_b - 2.36e113) / 2.36e113;
  const double forms = std::abs(rho_b - rho_c) / rho_c;
  const bool oracle_ok = oracle::rel(e0, oracle::e0_planck) < 1e-12 && oracle::rel(rho_c, oracle::rho_closed) < 1e-12;
  return {d0_ok && e0_dev <= 0.015 && rho_dev <= 0.02 && forms <= 1e-12 && oracle_ok,
          "d0=" + std::string(d0_6) + " m, E0=" + sci(e0) + " J (" + sci(100 * e0_dev) + "% from 9.7e8), rho_E=" +
              sci(rho_b) + " J/m^3 (" + sci(100 * rho_dev) + "% from 2.36e113), forms differ by " + sci(forms)};
}

// 2 -----------------------------------------------------------------------------
Outcome dilation_equivalence() {
  double worst = 0.0;
  int n = 0;
  for (double M : logspace(1.0, 1e40, 40)) {
    for (double x : logspace(1e-12, 0.99, 25)) {
      const double r = grav::schwarzschild_radius(M) / x;
      const auto d = grav::dilation_tunneling(grav::DilationParams::canonical(M, r));
      const double ref = static_cast<double>(oracle::dilation(static_cast<long double>(d.schwarzschild_ratio)));
      const double gr = grav::dilation_gr(M, r);
      worst = std::max({worst, std::abs(d.delta_t_min - gr) / gr, std::abs(d.delta_t_min - ref) / ref});
      ++n;
    }
  }
  return {n == 1000 && worst < 1e-12, std::to_string(n) + " points, worst relative deviation " + sci(worst)};
}

// 3 -----------------------------------------------------------------------------
Outcome tunneling_time_oracle() {
  const double V0 = 10 * eV;
  double worst_fd = 0.0;
  double worst_an = 0.0;
  int n = 0;
  for (double f : linspace(0.05, 0.95, 50)) {
    const double E = f * V0;
    const double kappa = scatter::decay_constant(me, E, V0);
    for (double kl : linspace(2.0, 30.0, 50)) {
      auto p = scatter::PotentialProfile::rectangular(me, V0, kl / kappa);
      const double closed = tuntime::tunneling_time_closed(p, E).t_T;
      const double fd =
          tuntime::tunneling_time_fd([&](double e) { return scatter::opaque_transmission(p, e); }, E).t_T;
      const double an = static_cast<double>(oracle::tunneling_time_analytic(me, V0, kl / kappa, E));
      worst_fd = std::max(worst_fd, oracle::rel(fd, closed));
      worst_an = std::max({worst_an, oracle::rel(fd, an), oracle::rel(closed, an)});
      ++n;
    }
  }
  return {n == 2500 && worst_fd < 1e-6 && worst_an < 1e-6,
          std::to_string(n) + " points, fd vs closed " + sci(worst_fd) + ", vs analytic derivative " + sci(worst_an)};
}

// 4 -----------------------------------------------------------------------------
Outcome scattering_exactness() {
  double worst = 0.0;
  int n = 0;
  for (double V : {1.0 * eV, 4.0 * eV, 10.0 * eV, 25.0 * eV}) {
    for (double L : {0.1e-9, 0.3e-9, 0.6e-9, 1.0e-9, 1.5e-9}) {
      for (double f : {0.1, 0.4, 0.7, 1.3, 2.5}) {
        const double T = scatter::transfer_matrix_scatter(scatter::PotentialProfile::rectangular(me, V, L), f * V).T_prob;
        worst = std::max(worst, oracle::rel(T, static_cast<double>(oracle::rect_transmission(me, V, L, f * V))));
        ++n;
      }
    }
  }
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<int> nseg(1, 8);
  std::uniform_real_distribution<double> w(0.02e-9, 1.0e-9);
  std::uniform_real_distribution<double> v(-5.0, 20.0);
  std::uniform_real_distribution<double> e(0.05, 30.0);
  double unit = 0.0;
  int m = 0;
  while (m < 1000) {
    std::vector<scatter::Segment> segs;
    for (int s = nseg(rng); s > 0; --s) segs.push_back({w(rng), v(rng) * eV});
    try {
      auto r = scatter::transfer_matrix_scatter(scatter::PotentialProfile(segs, me), e(rng) * eV);
      unit = std::max(unit, std::abs(r.unitarity_residual()));
      ++m;
    } catch (const scatter::DegenerateWavevectorError&) {
    }
  }
  return {n == 100 && worst < 1e-8 && unit < 1e-10, std::to_string(n) + "-point grid worst " + sci(worst) + "; " +
                                                        std::to_string(m) + " random profiles, max |T+R-1| " +
                                                        sci(unit)};
}

// 5 -----------------------------------------------------------------------------
Outcome margolus_levitin() {
  const double r2 = std::sqrt(0.5);
  ortho::SpectralState two({{0.0, r2}, {eV, r2}});
  const auto t2 = ortho::first_orthogonal_time(two);
  const double bound2 = si::h / (4 * two.mean_energy());
  const double sat = t2 ? oracle::rel(t2->t_orth, bound2) : 1.0;

  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> nl(2, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int found = 0;
  double worst = -1.0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<ortho::Level> lv;
    const int n = nl(rng);
    // every other state is commensurate so that orthogonal times actually occur
    const bool ladder = i % 2 == 1;
    const double spacing = (0.1 + u(rng)) * eV;
    for (int k = 0; k < n; ++k) {
      const double energy = ladder ? k * spacing : u(rng) * eV;
      const std::complex<double> c = ladder ? std::polar(1.0, 2 * std::numbers::pi * u(rng))
                                            : std::complex<double>(u(rng) - 0.5, u(rng) - 0.5);
      lv.push_back({energy, c});
    }
    auto s = ortho::SpectralState::normalized(lv);
    const auto t = ortho::first_orthogonal_time(s);
    if (!t) continue;
    ++found;
    const double bound = ortho::ml_bound(s).t_min;
    worst = std::max(worst, (bound - t->t_orth) / bound);
  }
  return {t2 && sat < 1e-6 && worst <= 1e-4, "two-level saturation " + sci(sat) + "; " + std::to_string(found) +
                                                  " of 10000 random states orthogonal, worst violation " +
                                                  (worst < 0 ? "none (t >= bound)" : sci(worst))};
}

// 6 -----------------------------------------------------------------------------
Outcome attoclock_decade() {
  // synthetic atomic-scale barrier: 10 eV high, 0.6 angstrom wide, electron at 5 eV
  auto p = scatter::PotentialProfile::rectangular(me, 10 * eV, 0.6e-10);
  const double t = tuntime::tunneling_time_closed(p, 5 * eV).t_T;
  return {t >= 1e-17 && t <= 1e-15, "t_T = " + sci(t * 1e18) + " as"};
}

// 7 -----------------------------------------------------------------------------
Outcome contraction() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  double worst = 0.0;
  int cases = 0;
  for (std::size_t da = 1; da <= 4; ++da) {
    for (std::size_t db = 1; db <= 4; ++db) {
      for (std::size_t chi = 1; chi <= 8; ++chi) {
        std::vector<std::vector<std::complex<double>>> X(da, std::vector<std::complex<double>>(chi));
        std::vector<std::vector<std::complex<double>>> Y(db, std::vector<std::complex<double>>(chi));
        bondnet::TwoSiteState st{bondnet::Matrix(da, chi), bondnet::Matrix(db, chi)};
        for (std::size_t a = 0; a < da; ++a)
          for (std::size_t j = 0; j < chi; ++j) st.X(a, j) = X[a][j] = {g(rng), g(rng)};
        for (std::size_t b = 0; b < db; ++b)
          for (std::size_t j = 0; j < chi; ++j) st.Y(b, j) = Y[b][j] = {g(rng), g(rng)};
        const auto amp = bondnet::contract_two_site(st);
        const auto ref = oracle::contract(X, Y);
        for (std::size_t a = 0; a < da; ++a)
          for (std::size_t b = 0; b < db; ++b)
            worst = std::max(worst, std::abs(amp(a, b) - ref[a][b]) / (1.0 + std::abs(ref[a][b])));
        ++cases;
      }
    }
  }
  const double r = 1.0 / std::numbers::sqrt2;
  bondnet::TwoSiteState bell{bondnet::Matrix(2, 2), bondnet::Matrix(2, 2)};
  bell.X(0, 0) = bell.X(1, 1) = 1.0;
  bell.Y(0, 0) = bell.Y(1, 1) = r;
  const auto b = bondnet::contract_two_site(bell);
  const double bell_err = std::max({std::abs(b(0, 0) - r), std::abs(b(0, 1)), std::abs(b(1, 0)), std::abs(b(1, 1) - r)});
  return {worst <= 1e-12 && bell_err <= 1e-12, std::to_string(cases) + " shapes, worst " + sci(worst) +
                                                   "; Bell state error " + sci(bell_err)};
}

// 8 -----------------------------------------------------------------------------
Outcome flux_laws() {
  double worst = 0.0;
  for (double B : {1.0, 7.0, 100.0, 6.02e23}) {
    for (double r : {1e-35, 1e-3, 2.0, 6.371e6, 1e26}) {
      const double a = bondnet::entanglement_flux(B, r, bondnet::FluxGeometry::area_law_2d) /
                       bondnet::entanglement_flux(B, 2 * r, bondnet::FluxGeometry::area_law_2d);
      const double v = bondnet::entanglement_flux(B, r, bondnet::FluxGeometry::volume_3d) /
                       bondnet::entanglement_flux(B, 2 * r, bondnet::FluxGeometry::volume_3d);
      worst = std::max({worst, std::abs(a - 2.0) / 2.0, std::abs(v - 4.0) / 4.0});
    }
  }
  return {worst <= 1e-15, "worst ratio deviation " + sci(worst)};
}

// 9 -----------------------------------------------------------------------------
Outcome dimension_audit() {
  std::string out;
  const int good = cli({"check-eq", "--file", std::string(TUNCLOCK_DATA_DIR) + "/constants_audit.txt"}, "", out);
  int rows = -1;
  for (char ch : out) rows += ch == '\n';
  std::string bad_out;
  const int bad = cli({"check-eq"}, "c + G\n", bad_out);
  const bool flagged = bad_out.find(",dimension-error,") != std::string::npos;
  return {good == 0 && rows > 0 && bad == 1 && flagged,
          "audit file: exit " + std::to_string(good) + " over " + std::to_string(rows) + " lines; \"c + G\": exit " +
              std::to_string(bad) + (flagged ? ", dimension-error" : ", not flagged")};
}

// 10 ----------------------------------------------------------------------------
Outcome determinism() {
  using sweep::Axis;
  using sweep::Scale;
  std::vector<sweep::SweepSpec> specs;
  const std::map<std::string, double> barrier{{"mass", me}, {"V0", 10 * eV}};
  for (const char* t : {"transmission.exact", "transmission.opaque", "tunneltime.both", "tunneltime.fd_exact"}) {
    specs.push_back({{{"L", 1e-10, 2e-9, 9}, {"E", 0.5 * eV, 15 * eV, 30}}, t, barrier, {}});
  }
  for (const char* t : {"dilation.tunneling", "dilation.gr", "dilation.both"}) {
    specs.push_back({{{"M", 1.0, 1e40, 20, Scale::log}, {"x", 1e-12, 1.2, 30, Scale::log}}, t, {}, {}});
  }
  for (const char* t : {"flux.area_law_2d", "flux.volume_3d"}) {
    specs.push_back({{{"B", 0.0, 1e3, 11}, {"r", 1e-3, 1e3, 13, Scale::log}}, t, {}, {}});
  }
  for (const char* t : {"bondnet.path", "bondnet.star"}) {
    specs.push_back({{{"n", 2, 40, 39}, {"chi", 1, 16, 16}}, t, {{"tau_b", 1.0}}, {}});
  }
  int compared = 0;
  for (const auto& spec : specs) {
    std::string reference;
    for (std::size_t workers : {1u, 1u, 2u, 5u, 16u}) {
      for (auto format : {OutputFormat::csv, OutputFormat::json}) {
        std::ostringstream os;
        write_table(os, sweep::run_sweep(spec, workers), format);
        if (format == OutputFormat::csv) {
          if (reference.empty()) reference = os.str();
          if (os.str() != reference) return {false, "target " + spec.target + " differs with " +
                                                        std::to_string(workers) + " workers"};
        }
        ++compared;
      }
    }
  }
  std::string a;
  std::string b;
  cli({"tunneltime", "--v0", "10eV", "--sweep-width", "0.1nm:2nm:20", "--sweep-energy", "0.5eV:12eV:50"}, "", a);
  cli({"--workers", "8", "tunneltime", "--v0", "10eV", "--sweep-width", "0.1nm:2nm:20", "--sweep-energy",
       "0.5eV:12eV:50"},
      "", b);
  return {a == b && !a.empty(), std::to_string(specs.size()) + " targets x 5 runs (1,1,2,5,16 workers) identical; CLI "
                                                               "serial vs 8 workers " +
                                    (a == b ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"constants reproduction", constants_reproduction},
      {"dilation equivalence", dilation_equivalence},
      {"tunneling-time oracle", tunneling_time_oracle},
      {"scattering exactness", scattering_exactness},
      {"Margolus-Levitin bound", margolus_levitin},
      {"attoclock decade", attoclock_decade},
      {"two-site contraction", contraction},
      {"flux laws", flux_laws},
      {"dimension audit", dimension_audit},
      {"determinism", determinism},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed in %.2f s\n", criteria.size() - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
