#include "circlech/subordination.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>

#include "circlech/error.hpp"
#include "circlech/hemigroups.hpp"
#include "circlech/loewner.hpp"

namespace circlech {

namespace {

constexpr unsigned kGaussPoints = 8;

struct Node {
  double x;  // in [-1, 1]
  double w;
};

std::vector<Node> gauss_nodes() {
  using Rule = boost::math::quadrature::gauss<double, kGaussPoints>;
  std::vector<Node> nodes;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      nodes.push_back({0.0, w[i]});
    } else {
      nodes.push_back({-x[i], w[i]});
      nodes.push_back({x[i], w[i]});
    }
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.x < b.x; });
  return nodes;
}

}  // namespace

SubordinationResult subordinated_family(const GeneratingFamily& family, std::size_t order) {
  const std::size_t n = std::min(order, family.moment_order());
  if (n < 1) throw InvalidArgument("subordinated_family: need moments of order >= 1");
  static const std::vector<Node> nodes = gauss_nodes();
  const auto& knots = family.knots();

  std::vector<CircleMeasure> intervals;
  for (std::size_t i = 0; i < family.interval_count(); ++i) {
    const CircleMeasure& dsigma = family.interval_measures()[i];
    const double a = knots[i].t;
    const double b = knots[i + 1].t;
    const double half = 0.5 * (b - a);
    const std::vector<cplx> rho_moments = dsigma.moments(n);  // already integrated over the interval

    TruncatedSeries acc(n);
    const bool trivial = std::all_of(rho_moments.begin(), rho_moments.end(),
                                     [](cplx c) { return c == cplx{}; });
    if (!trivial) {
      for (const Node& node : nodes) {
        const double s = a + half * (node.x + 1.0);
        const TruncatedSeries eta = free_eta_series(family, knots.front().t, s, n);
        // sum_j m_j(rho) eta^j
        TruncatedSeries power = eta;
        TruncatedSeries sum(n);
        for (std::size_t j = 1; j <= n; ++j) {
          if (j > 1) power = series_mul(power, eta);
          sum += power * rho_moments[j - 1];
        }
        // dsigma = rho dt, so the interval average is (1/2) sum_w w f(s)
        acc += sum * cplx(0.5 * node.w);
      }
    }
    MomentSequence m{dsigma.mass(), std::vector<cplx>(n)};
    for (std::size_t k = 1; k <= n; ++k) m.values[k - 1] = acc[k];
    intervals.push_back(CircleMeasure::from_moments(std::move(m)));
  }
  GeneratingFamily out(knots, std::move(intervals));
  auto violations = validate(out);
  return {std::move(out), std::move(violations)};
}

SubordinationReport verify_subordination(const GeneratingFamily& family,
                                         const GeneratingFamily& subordinated,
                                         std::span<const double> times,
                                         std::span<const cplx> z_grid, std::size_t order,
                                         const ode::Tolerances& tol) {
  SubordinationReport rep;
  const double t0 = family.knots().front().t;
  for (double t : times) {
    std::vector<cplx> mono(z_grid.begin(), z_grid.end());
    solve_characteristic_batch(subordinated, t0, t, mono, tol);
    const TruncatedSeries eta_free = free_eta_series(family, t0, t, order);
    for (std::size_t i = 0; i < z_grid.size(); ++i) {
      const double d = std::abs(mono[i] - eta_free.eval(z_grid[i]));
      ++rep.checks;
      if (d > rep.max_discrepancy) {
        rep.max_discrepancy = d;
        rep.at_time = t;
        rep.at_z = z_grid[i];
      }
    }
  }
  return rep;
}

SubordinationReport verify_subordination(const GeneratingFamily& family, std::span<const double> times,
                                         std::span<const cplx> z_grid, std::size_t order,
                                         const ode::Tolerances& tol) {
  const auto sub = subordinated_family(family, order);
  return verify_subordination(family, sub.family, times, z_grid, order, tol);
}

}  // namespace circlech
