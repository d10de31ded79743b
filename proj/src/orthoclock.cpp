#include "tunclock/orthoclock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tunclock/constants.hpp"

namespace tunclock::ortho {

SpectralState::SpectralState(std::vector<Level> levels) { init(std::move(levels)); }

SpectralState SpectralState::normalized(std::vector<Level> levels) {
  double norm2 = 0.0;
  for (const auto& l : levels) norm2 += std::norm(l.amplitude);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw DomainError("spectral state has zero norm");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& l : levels) l.amplitude *= scale;
  SpectralState s;
  s.init(std::move(levels));
  return s;
}

void SpectralState::init(std::vector<Level> levels) {
  if (levels.empty()) throw DomainError("spectral state needs at least one level");
  if (levels.size() > kMaxLevels) throw DomainError("spectral state supports at most 64 levels");
  double norm2 = 0.0;
  for (const auto& l : levels) {
    if (!std::isfinite(l.energy)) throw DomainError("level energies must be finite");
    norm2 += std::norm(l.amplitude);
  }
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
    throw DomainError("amplitudes are not normalized (sum |c|^2 = " + std::to_string(norm2) + ")");
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.energy < b.energy; });
  offset_ = levels.front().energy;
  for (auto& l : levels) l.energy -= offset_;
  levels_ = std::move(levels);
}

double SpectralState::mean_energy() const {
  double e = 0.0;
  for (const auto& l : levels_) e += std::norm(l.amplitude) * l.energy;
  return e;
}

cplx overlap(const SpectralState& state, double t) {
  cplx sum = 0.0;
  for (const auto& l : state.levels()) {
    sum += std::norm(l.amplitude) * std::polar(1.0, -l.energy * t / si::hbar);
  }
  return sum;
}

namespace {

struct Weighted {
  double omega;  // rad/s
  double weight;
};

// Populations merged per distinct energy; zero-weight levels dropped.
std::vector<Weighted> distinct_frequencies(const SpectralState& state) {
  std::vector<Weighted> out;
  for (const auto& l : state.levels()) {
    const double p = std::norm(l.amplitude);
    if (p == 0.0) continue;
    const double w = l.energy / si::hbar;
    if (!out.empty() && out.back().omega == w) {
      out.back().weight += p;
    } else {
      out.push_back({w, p});
    }
  }
  return out;
}

cplx sum_at(const std::vector<Weighted>& f, double t) {
  cplx s = 0.0;
  for (const auto& x : f) s += x.weight * std::polar(1.0, -x.omega * t);
  return s;
}

// d|S|^2/dt = 2 Re(conj(S) S').
double slope(const std::vector<Weighted>& f, double t) {
  cplx s = 0.0;
  cplx ds = 0.0;
  for (const auto& x : f) {
    const cplx e = x.weight * std::polar(1.0, -x.omega * t);
    s += e;
    ds += cplx(0.0, -x.omega) * e;
  }
  return 2.0 * (std::conj(s) * ds).real();
}

template <class F>
double bisect(F&& f, double lo, double hi, bool rising) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool above = f(mid) >= 0.0;
    if (above == rising) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::optional<OrthogonalTime> first_orthogonal_time(const SpectralState& state, const OrthoOptions& options) {
  if (!(options.tol > 0.0) || options.tol > 1e-3) throw DomainError("orthogonality tolerance must be in (0, 1e-3]");
  const auto freqs = distinct_frequencies(state);
  if (freqs.size() < 2) return std::nullopt;

  if (freqs.size() == 2) {
    // Single beat frequency: |S|^2 = p0^2 + p1^2 + 2 p0 p1 cos(w t).
    const double p0 = freqs[0].weight;
    const double p1 = freqs[1].weight;
    const double w = freqs[1].omega - freqs[0].omega;
    const double floor = std::abs(p0 - p1);
    if (floor > options.tol) return std::nullopt;
    const double cos_enter =
        std::clamp((options.tol * options.tol - p0 * p0 - p1 * p1) / (2.0 * p0 * p1), -1.0, 1.0);
    return OrthogonalTime{std::numbers::pi / w, std::acos(cos_enter) / w, floor};
  }

  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < freqs.size(); ++i) gap = std::min(gap, freqs[i].omega - freqs[i - 1].omega);
  const double window = 4.0 * std::numbers::pi / gap;
  const std::size_t n = std::max<std::size_t>(options.grid_points, 2);
  const double dt = window / static_cast<double>(n);

  auto g = [&](double t) { return slope(freqs, t); };
  auto above_tol = [&](double t) { return std::abs(sum_at(freqs, t)) - options.tol; };

  double g_prev = g(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t0 = dt * static_cast<double>(i);
    const double t1 = dt * static_cast<double>(i + 1);
    const double g_next = g(t1);
    if (g_prev < 0.0 && g_next >= 0.0) {
      const double t_min = bisect(g, t0, t1, /*rising=*/true);
      const double depth = std::abs(sum_at(freqs, t_min));
      if (depth <= options.tol) {
        // Step back to the last grid point still above tolerance.
        std::size_t j = i;
        while (j > 0 && above_tol(dt * static_cast<double>(j)) <= 0.0) --j;
        const double t_enter = bisect(above_tol, dt * static_cast<double>(j), t_min, /*rising=*/false);
        return OrthogonalTime{t_min, std::min(t_enter, t_min), depth};
      }
    }
    g_prev = g_next;
  }
  return std::nullopt;
}

MLBound ml_bound(const SpectralState& state) {
  const double mean = state.mean_energy();
  if (!(mean > 0.0)) throw DegenerateError("mean energy above the ground level is zero");
  return MLBound{si::h / (4.0 * mean), 2.0 * mean / (std::numbers::pi * si::hbar)};
}

}  // namespace tunclock::ortho
