#include "tunclock/sweep.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "tunclock/bondnet.hpp"
#include "tunclock/constants.hpp"
#include "tunclock/error.hpp"
#include "tunclock/gravclock.hpp"
#include "tunclock/scatter1d.hpp"
#include "tunclock/tuntime.hpp"

namespace tunclock::sweep {

void Axis::validate() const {
  if (name.empty()) throw DomainError("axis needs a name");
  if (points == 0) throw DomainError("axis '" + name + "' needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw DomainError("axis '" + name + "' has non-finite bounds");
  if (points > 1 && !(start < stop)) throw DomainError("axis '" + name + "' needs start < stop");
  if (scale == Scale::log && (!(start > 0.0) || !(stop > 0.0))) {
    throw DomainError("log axis '" + name + "' needs positive endpoints");
  }
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = start;
    return out;
  }
  const double last = static_cast<double>(points - 1);
  if (scale == Scale::linear) {
    for (std::size_t i = 0; i < points; ++i) out[i] = start + (stop - start) * (static_cast<double>(i) / last);
  } else {
    const double l0 = std::log(start);
    const double l1 = std::log(stop);
    for (std::size_t i = 0; i < points; ++i) out[i] = std::exp(l0 + (l1 - l0) * (static_cast<double>(i) / last));
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

Axis parse_axis(const std::string& name, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4) {
    throw DomainError("axis '" + name + "' must look like start:stop:points[:log]");
  }
  Axis axis;
  axis.name = name;
  try {
    std::size_t used = 0;
    axis.start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    axis.stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    long long pts = std::stoll(parts[2], &used);
    if (used != parts[2].size() || pts < 1) throw std::invalid_argument("points");
    axis.points = static_cast<std::size_t>(pts);
  } catch (const std::exception&) {
    throw DomainError("axis '" + name + "' has malformed numbers: '" + text + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      axis.scale = Scale::log;
    } else if (parts[3] != "lin" && parts[3] != "linear") {
      throw DomainError("axis scale must be 'log' or 'lin'");
    }
  }
  axis.validate();
  return axis;
}

std::optional<double> Inputs::find(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double Inputs::at(const std::string& name) const {
  auto v = find(name);
  if (!v) throw DomainError("missing input '" + name + "'");
  return *v;
}

// --- targets ---------------------------------------------------------------

namespace {

scatter::PotentialProfile barrier(const Inputs& in) {
  return scatter::PotentialProfile::rectangular(in.at("mass"), in.at("V0"), in.at("L"));
}

Evaluation transmission_exact(const Inputs& in) {
  auto res = scatter::transfer_matrix_scatter(barrier(in), in.at("E"));
  const bool unitary = std::abs(res.unitarity_residual()) <= 1e-10;
  return {{res.T_prob, res.R_prob, unitary ? "pass" : "fail", "exact"}};
}

Evaluation transmission_opaque(const Inputs& in) {
  const double T = scatter::opaque_transmission(barrier(in), in.at("E"));
  return {{T, Cell{}, Cell{}, "opaque"}};
}

tuntime::ClosedFormOptions closed_options(const Inputs& in) {
  tuntime::ClosedFormOptions opt;
  if (auto c = in.find("ceiling")) opt.ceiling = *c;
  return opt;
}

Evaluation tunneltime_closed(const Inputs& in) {
  auto r = tuntime::tunneling_time_closed(barrier(in), in.at("E"), closed_options(in));
  return {{r.t_T, Cell{}, Cell{}, Cell{}, Cell{}}};
}

tuntime::TunnelingTimeResult fd_opaque(const Inputs& in) {
  const auto profile = barrier(in);
  return tuntime::tunneling_time_fd([&](double e) { return scatter::opaque_transmission(profile, e); }, in.at("E"));
}

Evaluation tunneltime_fd(const Inputs& in) {
  auto r = fd_opaque(in);
  return {{Cell{}, r.t_T, Cell{}, r.step_used, r.estimated_error}};
}

Evaluation tunneltime_fd_exact(const Inputs& in) {
  const auto profile = barrier(in);
  auto r = tuntime::tunneling_time_fd(
      [&](double e) { return scatter::transfer_matrix_scatter(profile, e).T_prob; }, in.at("E"));
  return {{Cell{}, r.t_T, Cell{}, r.step_used, r.estimated_error}};
}

Evaluation tunneltime_both(const Inputs& in) {
  auto closed = tuntime::tunneling_time_closed(barrier(in), in.at("E"), closed_options(in));
  auto fd = fd_opaque(in);
  const double rel = std::abs(fd.t_T - closed.t_T) / closed.t_T;
  return {{closed.t_T, fd.t_T, rel, fd.step_used, fd.estimated_error}};
}

grav::DilationParams dilation_params(const Inputs& in) {
  const double M = in.at("M");
  double r = 0.0;
  if (auto rv = in.find("r")) {
    r = *rv;
  } else {
    const double x = in.at("x");
    if (!(x > 0.0)) throw DomainError("Schwarzschild ratio x must be positive to fix r");
    r = grav::schwarzschild_radius(M) / x;
  }
  const double d0 = in.find("d0").value_or(grav::default_d0());
  auto b = in.find("b");
  auto e0 = in.find("e0");
  if (b && e0) return grav::DilationParams{M, r, d0, *b, *e0};
  if (b) return grav::DilationParams::from_b(M, r, *b, d0);
  if (e0) return grav::DilationParams::from_energy(M, r, *e0, d0);
  return grav::DilationParams::from_b(M, r, si::planck_length(), d0);
}

// The Schwarzschild ratio column reports x when it was swept directly.
double ratio_column(const Inputs& in, const grav::DilationParams& p) {
  if (!in.find("r")) return in.at("x");
  return grav::schwarzschild_ratio(p.M, p.r);
}

Evaluation dilation(const Inputs& in, bool tunneling, bool gr) {
  const auto p = dilation_params(in);
  p.validate();
  const double x = ratio_column(in, p);
  std::vector<Cell> out{p.r, x, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}};
  double dt = 0.0;
  double dg = 0.0;
  if (tunneling) {
    auto res = grav::dilation_tunneling(p);
    out[2] = res.t_T;
    out[3] = res.A0;
    out[4] = dt = res.delta_t_min;
  }
  if (gr) {
    if (in.find("r")) {
      dg = grav::dilation_gr(p.M, p.r);
    } else {
      if (!(1.0 - x > 0.0)) throw grav::HorizonError("at or inside the Schwarzschild radius");
      dg = 1.0 / std::sqrt(1.0 - x);
    }
    out[5] = dg;
  }
  if (tunneling && gr) out[6] = std::abs(dt - dg) / dg;
  return {out};
}

Evaluation flux(const Inputs& in, bondnet::FluxGeometry g) {
  return {{bondnet::entanglement_flux(in.at("B"), in.at("r"), g)}};
}

std::size_t count_input(const Inputs& in, const std::string& name) {
  const double v = in.at(name);
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e7) throw DomainError(name + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

Evaluation network(const Inputs& in, bool star) {
  const std::size_t n = count_input(in, "n");
  const int chi = static_cast<int>(count_input(in, "chi"));
  auto net = star ? bondnet::BondNetwork::star(n, chi) : bondnet::BondNetwork::path(n, chi);
  auto cap = bondnet::entanglement_capacity(net);
  const double t = bondnet::collapse_propagation_time(net, 0, in.at("tau_b"));
  return {{static_cast<double>(cap.bond_count), cap.total_log2_chi, t}};
}

const std::vector<Target>& registry() {
  static const std::vector<Target> targets = [] {
    const std::vector<std::string> tr_out{"T_prob", "R_prob", "unitarity", "method"};
    const std::vector<std::string> tt_out{"t_closed", "t_fd", "rel_diff", "fd_step", "fd_error"};
    const std::vector<std::string> barrier_in{"mass", "V0", "L", "E"};
    const std::vector<std::string> dil_in{"M", "r|x"};
    const std::vector<std::string> dil_out{"r", "x", "t_T", "A0", "delta_tunneling", "delta_gr", "residual"};
    const std::vector<std::string> net_out{"bond_count", "total_log2_chi", "propagation_time"};
    return std::vector<Target>{
        {"transmission.exact", barrier_in, tr_out, transmission_exact},
        {"transmission.opaque", barrier_in, tr_out, transmission_opaque},
        {"tunneltime.closed", barrier_in, tt_out, tunneltime_closed},
        {"tunneltime.fd", barrier_in, tt_out, tunneltime_fd},
        {"tunneltime.fd_exact", barrier_in, tt_out, tunneltime_fd_exact},
        {"tunneltime.both", barrier_in, tt_out, tunneltime_both},
        {"dilation.tunneling", dil_in, dil_out, [](const Inputs& in) { return dilation(in, true, false); }},
        {"dilation.gr", dil_in, dil_out, [](const Inputs& in) { return dilation(in, false, true); }},
        {"dilation.both", dil_in, dil_out, [](const Inputs& in) { return dilation(in, true, true); }},
        {"flux.area_law_2d", {"B", "r"}, {"flux"},
         [](const Inputs& in) { return flux(in, bondnet::FluxGeometry::area_law_2d); }},
        {"flux.volume_3d", {"B", "r"}, {"flux"},
         [](const Inputs& in) { return flux(in, bondnet::FluxGeometry::volume_3d); }},
        {"bondnet.path", {"n", "chi", "tau_b"}, net_out, [](const Inputs& in) { return network(in, false); }},
        {"bondnet.star", {"n", "chi", "tau_b"}, net_out, [](const Inputs& in) { return network(in, true); }},
    };
  }();
  return targets;
}

}  // namespace

const Target& find_target(const std::string& id) {
  for (const auto& t : registry()) {
    if (t.id == id) return t;
  }
  throw DomainError("unknown sweep target '" + id + "'");
}

std::vector<std::string> target_ids() {
  std::vector<std::string> out;
  for (const auto& t : registry()) out.push_back(t.id);
  return out;
}

// --- engine ----------------------------------------------------------------

Table run_sweep(const SweepSpec& spec, std::size_t workers) {
  const Target& target = find_target(spec.target);

  std::vector<std::vector<double>> grids;
  std::map<std::string, double> names;
  for (const auto& axis : spec.axes) {
    grids.push_back(axis.values());
    if (names.count(axis.name) || spec.fixed.count(axis.name)) {
      throw DomainError("input '" + axis.name + "' given more than once");
    }
    names[axis.name] = 0.0;
  }
  for (const auto& [k, v] : spec.fixed) names[k] = v;
  for (const auto& req : target.required) {
    bool ok = false;
    std::stringstream alts(req);
    for (std::string alt; std::getline(alts, alt, '|');) ok = ok || names.count(alt) > 0;
    if (!ok) throw DomainError("target '" + target.id + "' needs input '" + req + "'");
  }

  std::vector<std::size_t> picks;
  if (spec.columns.empty()) {
    // outputs that echo an input column would only duplicate it
    for (std::size_t i = 0; i < target.outputs.size(); ++i) {
      if (!names.count(target.outputs[i])) picks.push_back(i);
    }
  } else {
    for (const auto& col : spec.columns) {
      std::size_t i = 0;
      while (i < target.outputs.size() && target.outputs[i] != col) ++i;
      if (i == target.outputs.size()) throw DomainError("target '" + target.id + "' has no output '" + col + "'");
      picks.push_back(i);
    }
  }

  Table table;
  for (const auto& axis : spec.axes) table.columns.push_back(axis.name);
  for (const auto& [k, _] : spec.fixed) table.columns.push_back(k);
  for (std::size_t i : picks) table.columns.push_back(target.outputs[i]);
  table.columns.push_back("status");
  table.columns.push_back("error");

  std::size_t total = 1;
  for (const auto& g : grids) total *= g.size();
  table.rows.resize(total);

  auto evaluate_row = [&](std::size_t index) {
    std::vector<double> point(grids.size());
    std::size_t rem = index;
    for (std::size_t a = grids.size(); a-- > 0;) {
      point[a] = grids[a][rem % grids[a].size()];
      rem /= grids[a].size();
    }
    std::map<std::string, double> values(spec.fixed.begin(), spec.fixed.end());
    for (std::size_t a = 0; a < grids.size(); ++a) values[spec.axes[a].name] = point[a];

    std::vector<Cell> row;
    row.reserve(table.columns.size());
    for (double v : point) row.emplace_back(v);
    for (const auto& [_, v] : spec.fixed) row.emplace_back(v);
    std::string status;
    std::string message;
    std::vector<Cell> outputs(target.outputs.size());
    try {
      Evaluation ev = target.eval(Inputs(std::move(values)));
      outputs = std::move(ev.outputs);
      outputs.resize(target.outputs.size());
      status = std::move(ev.status);
    } catch (const Error& e) {
      status = std::string(status_name(e.kind()));
      message = e.what();
    } catch (const std::exception& e) {
      status = "error";
      message = e.what();
    }
    for (std::size_t i : picks) row.push_back(outputs[i]);
    row.emplace_back(std::move(status));
    row.emplace_back(std::move(message));
    table.rows[index] = std::move(row);
  };

  workers = std::max<std::size_t>(1, std::min(workers, total));
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) evaluate_row(i);
    return table;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) evaluate_row(i);
      });
    }
  }
  return table;
}

}  // namespace tunclock::sweep
