#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "tunclock/bondnet.hpp"
#include "tunclock/constants.hpp"
#include "tunclock/dimparse.hpp"
#include "tunclock/error.hpp"
#include "tunclock/gravclock.hpp"
#include "tunclock/literals.hpp"
#include "tunclock/orthoclock.hpp"
#include "tunclock/sweep.hpp"
#include "tunclock/table.hpp"

namespace tunclock::cli {

namespace {

/// Argument problem detected after CLI11 parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Preset {
  double mass;    // kg
  double radius;  // m
};

// External reference values (IAU nominal / common textbook figures).
const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = {
      {"earth", {5.972e24, 6.371e6}},
      {"sun", {1.989e30, 6.96e8}},
      {"neutron-star", {2.7846e30, 1.2e4}},
      {"ns", {2.7846e30, 1.2e4}},
  };
  return table;
}

double literal(const std::string& text, LiteralKind kind, const char* flag) {
  try {
    return parse_literal(text, kind);
  } catch (const Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

sweep::Axis literal_axis(const std::string& name, const std::string& text, LiteralKind kind, const char* flag) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4) throw UsageError(std::string(flag) + " expects start:stop:points[:log]");
  std::ostringstream plain;
  plain.precision(17);
  plain << literal(parts[0], kind, flag) << ':' << literal(parts[1], kind, flag) << ':' << parts[2];
  if (parts.size() == 4) plain << ':' << parts[3];
  try {
    return sweep::parse_axis(name, plain.str());
  } catch (const Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

struct Global {
  std::string format = "csv";
  std::string output;
  std::size_t workers = 1;
};

class Emitter {
 public:
  Emitter(const Global& g, std::ostream& out) : global_(g), out_(out) {}

  void emit(const Table& table) const {
    const OutputFormat format = global_.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (global_.output.empty() || global_.output == "-") {
      write_table(out_, table, format);
      return;
    }
    std::ofstream file(global_.output, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + global_.output + "'");
    write_table(file, table, format);
  }

 private:
  const Global& global_;
  std::ostream& out_;
};

Table key_values(const std::vector<std::pair<std::string, Cell>>& rows, bool with_dimension = false,
                 const std::vector<std::string>& dims = {}) {
  Table t;
  t.columns = {"quantity", "value"};
  if (with_dimension) t.columns.push_back("si_dimension");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Cell> row{rows[i].first, rows[i].second};
    if (with_dimension) row.emplace_back(dims.at(i));
    t.rows.push_back(std::move(row));
  }
  return t;
}

// --- barrier commands --------------------------------------------------------

struct BarrierArgs {
  std::string mass = "electron";
  std::string v0;
  std::string width;
  std::string energy;
  std::string sweep_energy;
  std::string sweep_width;
  std::string method;
  std::string ceiling;
};

void add_barrier_flags(CLI::App* cmd, BarrierArgs& a) {
  cmd->add_option("--mass", a.mass, "Particle mass: electron, proton, or a kg/g/me literal")->capture_default_str();
  cmd->add_option("--v0", a.v0, "Barrier height, e.g. 10eV")->required();
  auto* width = cmd->add_option("--width", a.width, "Barrier width, e.g. 1nm");
  auto* energy = cmd->add_option("--energy", a.energy, "Incident energy, e.g. 5eV");
  auto* sweep_e = cmd->add_option("--sweep-energy", a.sweep_energy, "Energy grid start:stop:points[:log]");
  auto* sweep_w = cmd->add_option("--sweep-width", a.sweep_width, "Width grid start:stop:points[:log]");
  energy->excludes(sweep_e);
  width->excludes(sweep_w);
}

sweep::SweepSpec barrier_spec(const BarrierArgs& a, const std::string& target) {
  sweep::SweepSpec spec;
  spec.target = target;
  spec.fixed["mass"] = literal(a.mass, LiteralKind::mass, "--mass");
  spec.fixed["V0"] = literal(a.v0, LiteralKind::energy, "--v0");
  if (!a.sweep_width.empty()) {
    spec.axes.push_back(literal_axis("L", a.sweep_width, LiteralKind::length, "--sweep-width"));
  } else if (!a.width.empty()) {
    spec.fixed["L"] = literal(a.width, LiteralKind::length, "--width");
  } else {
    throw UsageError("one of --width or --sweep-width is required");
  }
  if (!a.sweep_energy.empty()) {
    spec.axes.push_back(literal_axis("E", a.sweep_energy, LiteralKind::energy, "--sweep-energy"));
  } else if (!a.energy.empty()) {
    spec.fixed["E"] = literal(a.energy, LiteralKind::energy, "--energy");
  } else {
    throw UsageError("one of --energy or --sweep-energy is required");
  }
  if (!a.ceiling.empty()) spec.fixed["ceiling"] = literal(a.ceiling, LiteralKind::time, "--ceiling");
  return spec;
}

// --- mlbound -----------------------------------------------------------------

std::vector<ortho::Level> parse_levels(const std::string& text) {
  std::vector<ortho::Level> levels;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::vector<std::string> parts;
    std::stringstream is(item);
    for (std::string p; std::getline(is, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("--levels entries look like E:re or E:re:im");
    const double e = literal(parts[0], LiteralKind::energy, "--levels");
    const double re = literal(parts[1], LiteralKind::length, "--levels");  // bare number
    const double im = parts.size() == 3 ? literal(parts[2], LiteralKind::length, "--levels") : 0.0;
    levels.push_back({e, {re, im}});
  }
  if (levels.empty()) throw UsageError("--levels is empty");
  return levels;
}

// Portable uniform in [0, 1): top 53 bits of the 64-bit Mersenne Twister.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<ortho::Level> random_levels(std::size_t n, std::uint64_t seed) {
  if (n < 1 || n > ortho::SpectralState::kMaxLevels) throw UsageError("--random level count must be in [1, 64]");
  std::mt19937_64 rng(seed);
  std::vector<ortho::Level> levels;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = unit_uniform(rng) * si::eV;
    const double re = unit_uniform(rng) - 0.5;
    const double im = unit_uniform(rng) - 0.5;
    levels.push_back({e, {re, im}});
  }
  return ortho::SpectralState::normalized(levels).levels();
}

Table mlbound_table(const std::vector<ortho::Level>& raw, double tol) {
  double norm2 = 0.0;
  for (const auto& l : raw) norm2 += std::norm(l.amplitude);
  if (!(std::abs(norm2 - 1.0) <= 1e-3)) {
    throw UsageError("amplitudes are not normalized: sum |c|^2 = " + format_number(norm2));
  }
  const auto state = ortho::SpectralState::normalized(raw);

  Table t;
  t.columns = {"levels", "mean_energy", "t_orth", "t_enter", "min_overlap", "t_ml", "rate", "saturation", "status",
               "error"};
  std::vector<Cell> row{static_cast<double>(state.levels().size()), state.mean_energy()};
  ortho::OrthoOptions opt;
  opt.tol = tol;
  const auto orth = ortho::first_orthogonal_time(state, opt);
  if (orth) {
    row.insert(row.end(), {orth->t_orth, orth->t_enter, orth->min_overlap});
  } else {
    row.insert(row.end(), {std::string("none"), Cell{}, Cell{}});
  }
  try {
    const auto bound = ortho::ml_bound(state);
    row.insert(row.end(), {bound.t_min, bound.rate});
    if (orth) {
      row.emplace_back(bound.t_min / orth->t_orth);
      const bool ok = orth->t_orth >= bound.t_min * (1.0 - 1e-4);
      row.emplace_back(ok ? "pass" : "violation");
    } else {
      row.emplace_back(Cell{});
      row.emplace_back("pass");
    }
    row.emplace_back(std::string{});
  } catch (const Error& e) {
    row.insert(row.end(), {Cell{}, Cell{}, Cell{}, std::string(status_name(e.kind())), std::string(e.what())});
  }
  t.rows.push_back(std::move(row));
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tunneling-time, gravitational dilation and quantum speed-limit calculator", "tunclock"};
  app.require_subcommand(1);
  app.fallthrough();

  Global global;
  app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output,-o", global.output, "Write the table to this file instead of stdout");
  app.add_option("--workers", global.workers, "Parallel workers for sweeps")->check(CLI::Range(1, 256));
  app.add_flag_callback("--version", [&] {
    out << "tunclock 1.0.0 (" << si::kEdition << ")\n";
    throw CLI::Success();
  });

  // transmission
  BarrierArgs tr;
  tr.method = "exact";
  auto* transmission = app.add_subcommand("transmission", "Barrier transmission probability");
  add_barrier_flags(transmission, tr);
  transmission->add_option("--method", tr.method)->check(CLI::IsMember({"exact", "opaque"}))->capture_default_str();

  // tunneltime
  BarrierArgs tt;
  tt.method = "both";
  auto* tunneltime = app.add_subcommand("tunneltime", "Tunneling time hbar d ln T / dE");
  add_barrier_flags(tunneltime, tt);
  tunneltime->add_option("--method", tt.method)
      ->check(CLI::IsMember({"closed", "fd", "both", "fd-exact"}))
      ->capture_default_str();
  tunneltime->add_option("--ceiling", tt.ceiling, "Divergence ceiling for the closed form, e.g. 1ns");

  // dilation
  std::string dil_method = "both";
  std::optional<double> mass_kg;
  std::string radius_m;
  std::optional<double> radius_rs;
  std::string preset;
  std::string sweep_x;
  std::string d0_text;
  std::string b_text;
  std::string e0_text;
  auto* dilation = app.add_subcommand("dilation", "Gravitational dilation via tunneling time and via GR");
  auto* o_mass = dilation->add_option("--mass-kg", mass_kg, "Mass of the body in kg");
  auto* o_radius = dilation->add_option("--radius-m", radius_m, "Radial coordinate (m or a length literal)");
  auto* o_rs = dilation->add_option("--radius-rs", radius_rs, "Radial coordinate in Schwarzschild radii");
  auto* o_preset = dilation->add_option("--preset", preset, "earth, sun or neutron-star (ns)")
                       ->check(CLI::IsMember({"earth", "sun", "neutron-star", "ns"}));
  auto* o_sweep_x = dilation->add_option("--sweep-x", sweep_x, "Grid over 2GM/(rc^2): start:stop:points[:log]");
  dilation->add_option("--method", dil_method)
      ->check(CLI::IsMember({"tunneling", "gr", "both"}))
      ->capture_default_str();
  dilation->add_option("--d0", d0_text, "Causal correlation distance (default c/sqrt(2) * 1 s)");
  dilation->add_option("--b", b_text, "Potential length scale: planck or a length (E0 follows from it)");
  dilation->add_option("--e0", e0_text, "Vacuum kinetic energy (b follows from it unless --b is also given)");
  o_preset->excludes(o_mass);
  o_radius->excludes(o_rs)->excludes(o_sweep_x);
  o_rs->excludes(o_sweep_x);

  // constants
  std::string c_b = "planck";
  std::string c_d0;
  auto* constants = app.add_subcommand("constants", "Derived constants A0, d0, E0, m0, rho_E");
  constants->add_option("--b", c_b, "planck or a length")->capture_default_str();
  constants->add_option("--d0", c_d0, "Causal correlation distance (default c/sqrt(2) * 1 s)");

  // mlbound
  std::string levels_text;
  std::vector<std::uint64_t> random_args;
  double ml_tol = 1e-6;
  auto* mlbound = app.add_subcommand("mlbound", "Orthogonalization time vs the Margolus-Levitin bound");
  auto* o_levels = mlbound->add_option("--levels", levels_text, "Comma list of E:re[:im], e.g. \"0:0.7071,1eV:0.7071\"");
  auto* o_random = mlbound->add_option("--random", random_args, "Random state: <levels> <seed>")->expected(2);
  mlbound->add_option("--tol", ml_tol, "Orthogonality tolerance")->check(CLI::Range(1e-300, 1e-3));
  o_levels->excludes(o_random);

  // bondnet
  std::string network_file;
  std::string collapse;
  std::string tau_b_text = "1s";
  std::string policy = "log2";
  double k_energy = 1.0;
  std::vector<std::string> flux_args;
  auto* bond = app.add_subcommand("bondnet", "Bond capacity, collapse propagation and flux laws");
  bond->add_option("--network", network_file, "Network file (node/bond records)");
  bond->add_option("--collapse", collapse, "Node id where the collapse starts");
  bond->add_option("--tau-b", tau_b_text, "Per-bond delay scale")->capture_default_str();
  bond->add_option("--policy", policy, "Per-bond delay policy")
      ->check(CLI::IsMember({"log2", "linear", "constant"}))
      ->capture_default_str();
  bond->add_option("--k", k_energy, "Energy per bit of bond capacity")->capture_default_str();
  bond->add_option("--flux", flux_args, "Flux density: <bonds> <r> <area_law_2d|volume_3d>")->expected(3);

  // check-eq
  std::string eq_file;
  auto* check = app.add_subcommand("check-eq", "Evaluate and dimension-check expressions, one per line");
  check->add_option("--file", eq_file, "Expression file (default: stdin)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Emitter emitter(global, out);
  try {
    if (*transmission) {
      auto spec = barrier_spec(tr, "transmission." + tr.method);
      emitter.emit(sweep::run_sweep(spec, global.workers));
    } else if (*tunneltime) {
      std::string target = tt.method == "fd-exact" ? "fd_exact" : tt.method;
      auto spec = barrier_spec(tt, "tunneltime." + target);
      emitter.emit(sweep::run_sweep(spec, global.workers));
    } else if (*dilation) {
      sweep::SweepSpec spec;
      spec.target = "dilation." + dil_method;
      if (!preset.empty()) {
        const Preset& p = presets().at(preset);
        spec.fixed["M"] = p.mass;
        if (radius_m.empty() && !radius_rs && sweep_x.empty()) spec.fixed["r"] = p.radius;
      } else if (mass_kg) {
        spec.fixed["M"] = *mass_kg;
      } else {
        throw UsageError("one of --mass-kg or --preset is required");
      }
      if (!radius_m.empty()) spec.fixed["r"] = literal(radius_m, LiteralKind::length, "--radius-m");
      if (radius_rs) {
        if (!(*radius_rs > 0.0)) throw UsageError("--radius-rs must be positive");
        spec.fixed["x"] = 1.0 / *radius_rs;
      }
      if (!sweep_x.empty()) {
        try {
          spec.axes.push_back(sweep::parse_axis("x", sweep_x));
        } catch (const Error& e) {
          throw UsageError(std::string("--sweep-x: ") + e.what());
        }
      }
      if (!spec.fixed.count("r") && !spec.fixed.count("x") && spec.axes.empty()) {
        throw UsageError("one of --radius-m, --radius-rs, --sweep-x or --preset is required");
      }
      if (!d0_text.empty()) spec.fixed["d0"] = literal(d0_text, LiteralKind::length, "--d0");
      if (!b_text.empty()) {
        spec.fixed["b"] = b_text == "planck" ? si::planck_length() : literal(b_text, LiteralKind::length, "--b");
      }
      if (!e0_text.empty()) spec.fixed["e0"] = literal(e0_text, LiteralKind::energy, "--e0");
      emitter.emit(sweep::run_sweep(spec, global.workers));
    } else if (*constants) {
      const double b = c_b == "planck" ? si::planck_length() : literal(c_b, LiteralKind::length, "--b");
      const double d0 = c_d0.empty() ? grav::default_d0() : literal(c_d0, LiteralKind::length, "--d0");
      grav::DerivedConstants k{};
      try {
        k = grav::derive_constants(b, d0);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      const double rel = std::abs(k.rho_from_b - k.rho_closed) / k.rho_closed;
      emitter.emit(key_values(
          {{"b", k.b},
           {"d0", k.d0},
           {"A0", k.A0},
           {"E0", k.E0},
           {"m0", k.m0},
           {"rho_E_from_b", k.rho_from_b},
           {"rho_E_closed", k.rho_closed},
           {"rho_E_rel_diff", rel},
           {"constants_edition", std::string(si::kEdition)}},
          true, {"m", "m", "s^-1", "m^2*kg*s^-2", "kg", "m^-1*kg*s^-2", "m^-1*kg*s^-2", "1", ""}));
    } else if (*mlbound) {
      std::vector<ortho::Level> levels;
      if (!random_args.empty()) {
        levels = random_levels(static_cast<std::size_t>(random_args[0]), random_args[1]);
      } else if (!levels_text.empty()) {
        levels = parse_levels(levels_text);
      } else {
        throw UsageError("one of --levels or --random is required");
      }
      emitter.emit(mlbound_table(levels, ml_tol));
    } else if (*bond) {
      std::vector<std::pair<std::string, Cell>> rows;
      if (!network_file.empty()) {
        std::ifstream file(network_file);
        if (!file) throw UsageError("cannot open network file '" + network_file + "'");
        std::optional<bondnet::BondNetwork> net;
        try {
          net.emplace(bondnet::BondNetwork::read(file));
        } catch (const Error& e) {
          throw UsageError(network_file + ": " + e.what());
        }
        const auto cap = bondnet::entanglement_capacity(*net, k_energy);
        rows.emplace_back("nodes", static_cast<double>(net->nodes().size()));
        rows.emplace_back("bond_count", static_cast<double>(cap.bond_count));
        rows.emplace_back("total_log2_chi", cap.total_log2_chi);
        rows.emplace_back("model_energy", cap.model_energy);
        if (!collapse.empty()) {
          auto source = net->index_of(collapse);
          if (!source) throw UsageError("--collapse: no node '" + collapse + "'");
          const double tau = literal(tau_b_text, LiteralKind::time, "--tau-b");
          if (!(tau > 0.0)) throw UsageError("--tau-b must be positive");
          const auto pol = policy == "linear"     ? bondnet::DelayPolicy::linear_chi
                           : policy == "constant" ? bondnet::DelayPolicy::constant
                                                  : bondnet::DelayPolicy::log2_chi;
          rows.emplace_back("propagation_time", bondnet::collapse_propagation_time(*net, *source, tau, pol));
        }
      } else if (!collapse.empty()) {
        throw UsageError("--collapse needs --network");
      }
      if (!flux_args.empty()) {
        const double bonds = literal(flux_args[0], LiteralKind::length, "--flux");
        const double r = literal(flux_args[1], LiteralKind::length, "--flux");
        bondnet::FluxGeometry g{};
        if (flux_args[2] == "area_law_2d") {
          g = bondnet::FluxGeometry::area_law_2d;
        } else if (flux_args[2] == "volume_3d") {
          g = bondnet::FluxGeometry::volume_3d;
        } else {
          throw UsageError("--flux geometry must be area_law_2d or volume_3d");
        }
        try {
          rows.emplace_back("flux_" + flux_args[2], bondnet::entanglement_flux(bonds, r, g));
        } catch (const Error& e) {
          throw UsageError(std::string("--flux: ") + e.what());
        }
      }
      if (rows.empty()) throw UsageError("bondnet needs --network and/or --flux");
      emitter.emit(key_values(rows));
    } else if (*check) {
      std::vector<dimparse::AuditRow> rows;
      if (eq_file.empty() || eq_file == "-") {
        rows = dimparse::audit(in, ConstantsRegistry::codata2018());
      } else {
        std::ifstream file(eq_file);
        if (!file) throw UsageError("cannot open expression file '" + eq_file + "'");
        rows = dimparse::audit(file, ConstantsRegistry::codata2018());
      }
      Table t;
      t.columns = {"expression", "value", "si_dimension", "status", "error"};
      for (const auto& r : rows) {
        t.rows.push_back({r.expression, r.value ? Cell{*r.value} : Cell{}, r.si_dimension, r.status, r.error});
      }
      emitter.emit(t);
      return dimparse::audit_passed(rows) ? kExitOk : kExitBatchFailure;
    }
  } catch (const UsageError& e) {
    err << "tunclock: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "tunclock: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace tunclock::cli
