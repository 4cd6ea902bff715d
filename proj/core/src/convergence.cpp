#include "circlech/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "circlech/error.hpp"

namespace circlech {

bool ConvergenceReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.pass; });
}

const ReportEntry& ConvergenceReport::at(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw InvalidArgument("ConvergenceReport: no entry '" + name + "'");
}

void ConvergenceReport::apply_tolerance(double tol) {
  tolerance = tol;
  for (auto& e : entries) e.pass = e.value <= tol;
}

namespace {

std::vector<double> union_grid(const GeneratingFamily& a, const GeneratingFamily& b, double horizon) {
  std::vector<double> t;
  for (const auto& k : a.knots())
    if (k.t <= horizon) t.push_back(k.t);
  for (const auto& k : b.knots())
    if (k.t <= horizon) t.push_back(k.t);
  t.push_back(horizon);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

std::string describe(const char* what, std::size_t n, double horizon) {
  std::ostringstream os;
  os << what << " (" << n << " points on [0, " << horizon << "])";
  return os.str();
}

}  // namespace

ConvergenceReport family_distance(const GeneratingFamily& a, const GeneratingFamily& b, std::size_t K) {
  const double horizon = std::min(a.horizon(), b.horizon());
  const auto grid = union_grid(a, b, horizon);
  double d_alpha = 0.0;
  double d_sigma = 0.0;
  // Both quantities are piecewise linear between union-grid points, so the
  // sup over the grid is the sup over the horizon for alpha; for sigma the
  // moments are linear too and the weighted norm is convex, so grid points
  // bound it as well.
  for (double t : grid) {
    d_alpha = std::max(d_alpha, std::abs(a.alpha_at(t) - b.alpha_at(t)));
    d_sigma = std::max(d_sigma, char_distance(a.sigma_at(t), b.sigma_at(t), K));
  }
  const std::string g = describe("knot union", grid.size(), horizon);
  return {{{"alpha", d_alpha, g, true}, {"sigma", d_sigma, g, true}}, 0.0};
}

ConvergenceReport hemigroup_distance(LawKind kind, const GeneratingFamily& a,
                                     const GeneratingFamily& b, int n_max,
                                     std::span<const double> times, const HemigroupOptions& opts) {
  const double horizon = std::min(a.horizon(), b.horizon());
  std::vector<double> grid(times.begin(), times.end());
  if (grid.empty()) grid = uniform_times(horizon, 31);
  double d = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double s = grid[i];
      const double t = grid[j];
      if (kind == LawKind::Monotone || kind == LawKind::Free || kind == LawKind::Boolean) {
        // One series per (s, t) serves every order.
        HemigroupOptions o = opts;
        o.order = std::max<std::size_t>(opts.order, static_cast<std::size_t>(n_max));
        TruncatedSeries ea(o.order), eb(o.order);
        if (kind == LawKind::Monotone) {
          ea = monotone_eta_series(a, s, t, o);
          eb = monotone_eta_series(b, s, t, o);
        } else if (kind == LawKind::Free) {
          ea = free_eta_series(a, s, t, o.order);
          eb = free_eta_series(b, s, t, o.order);
        } else {
          ea = boolean_eta_series(a, s, t, o.order);
          eb = boolean_eta_series(b, s, t, o.order);
        }
        const TruncatedSeries pa = psi_from_eta(ea);
        const TruncatedSeries pb = psi_from_eta(eb);
        for (int n = 1; n <= n_max; ++n) {
          d = std::max(d, std::abs(pa[static_cast<std::size_t>(n)] - pb[static_cast<std::size_t>(n)]));
        }
      } else {
        for (int n = 1; n <= n_max; ++n) {
          d = std::max(d, std::abs(classical_moment(a, s, t, n) - classical_moment(b, s, t, n)));
        }
      }
    }
  }
  std::ostringstream g;
  g << "s<=t pairs on " << grid.size() << " times, 1<=n<=" << n_max;
  return {{{std::string(to_string(kind)), d, g.str(), true}}, 0.0};
}

std::vector<StudyRow> equivalence_study(LawKind kind, const GeneratingFamily& target,
                                        std::span<const GeneratingFamily> candidates, std::size_t K,
                                        int n_max, std::span<const double> times,
                                        const HemigroupOptions& opts) {
  std::vector<StudyRow> rows;
  for (const auto& c : candidates) {
    const auto fd = family_distance(target, c, K);
    const auto hd = hemigroup_distance(kind, target, c, n_max, times, opts);
    rows.push_back({std::max(fd.at("alpha").value, fd.at("sigma").value), hd.entries.front().value});
  }
  return rows;
}

std::string to_csv(const ConvergenceReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "name,value,grid,pass\n";
  for (const auto& e : report.entries) {
    os << e.name << ',' << e.value << ",\"" << e.grid << "\"," << (e.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace circlech
