#include "circlech/hemigroups.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "circlech/error.hpp"
#include "circlech/loewner.hpp"

namespace circlech {

std::string_view to_string(LawKind kind) noexcept {
  switch (kind) {
    case LawKind::Classical: return "classical";
    case LawKind::Free: return "free";
    case LawKind::Boolean: return "boolean";
    case LawKind::Monotone: return "monotone";
  }
  return "unknown";
}

LawKind parse_law(std::string_view name) {
  if (name == "classical") return LawKind::Classical;
  if (name == "free") return LawKind::Free;
  if (name == "boolean") return LawKind::Boolean;
  if (name == "monotone") return LawKind::Monotone;
  throw InvalidArgument("unknown law '" + std::string(name) + "'");
}

namespace {

// K_n(xi) = -n - 2 sum_{k=1}^{n-1} (n-k) xi^k for n >= 1; exact near xi = 1.
cplx kernel_polynomial(cplx xi, int n) {
  cplx acc = -static_cast<double>(n);
  cplx p = 1.0;
  for (int k = 1; k < n; ++k) {
    p *= xi;
    acc -= 2.0 * static_cast<double>(n - k) * p;
  }
  return acc;
}

cplx kernel_atom(double theta, int n) {
  const double denom = 1.0 - std::cos(theta);
  if (denom < 1e-3) return kernel_polynomial(std::polar(1.0, theta), n);
  const cplx num = std::polar(1.0, n * theta) - 1.0 - cplx(0.0, n * std::sin(theta));
  return num / denom;
}

void require_order(std::size_t order, int n, const char* op) {
  if (static_cast<std::size_t>(std::abs(n)) > order) {
    throw InvalidArgument(std::string(op) + ": moment order " + std::to_string(n) +
                          " exceeds truncation order " + std::to_string(order));
  }
}

void require_times(double s, double t) {
  if (s > t) throw InvalidArgument("hemigroup increment requires s <= t");
}

}  // namespace

cplx classical_kernel_integral(const CircleMeasure& sigma, int n) {
  if (n == 0) return 0.0;
  if (n < 0) return std::conj(classical_kernel_integral(sigma, -n));
  cplx acc{};
  for (const auto& a : sigma.atoms()) acc += a.weight * kernel_atom(a.theta, n);
  if (const auto& m = sigma.moment_part()) {
    if (static_cast<std::size_t>(n - 1) > m->order()) {
      throw InvalidArgument("classical_kernel_integral: needs moments up to " + std::to_string(n - 1));
    }
    acc -= static_cast<double>(n) * m->mass;
    for (int k = 1; k < n; ++k) acc -= 2.0 * static_cast<double>(n - k) * m->values[static_cast<std::size_t>(k - 1)];
  }
  return acc;
}

cplx classical_moment(const GeneratingFamily& family, double s, double t, int n) {
  require_times(s, t);
  const CircleMeasure sigma = family.sigma_increment(s, t);
  const double alpha = family.alpha_increment(s, t);
  if (s == t) return 1.0;
  return std::exp(cplx(0.0, alpha * n) + classical_kernel_integral(sigma, n));
}

cplx first_moment(const GeneratingFamily& family, double s, double t) {
  require_times(s, t);
  return std::exp(cplx(-family.sigma_increment(s, t).mass(), family.alpha_increment(s, t)));
}

TruncatedSeries free_sigma_series(const GeneratingFamily& family, double s, double t,
                                  std::size_t order) {
  require_times(s, t);
  TruncatedSeries u = herglotz_series(family.sigma_increment(s, t), order);
  u[0] -= cplx(0.0, family.alpha_increment(s, t));
  return series_exp(u);
}

TruncatedSeries free_eta_series(const GeneratingFamily& family, double s, double t,
                                std::size_t order) {
  const TruncatedSeries sigma = free_sigma_series(family, s, t, order);
  if (std::abs(sigma[0]) > 1e12) {
    throw DomainError("free increment has |m_1| < 1e-12: Sigma-transform degenerates (Haar limit)");
  }
  // eta^{-1}(z) = z Sigma(z)
  TruncatedSeries inverse(order);
  for (std::size_t k = 1; k <= order; ++k) inverse[k] = sigma[k - 1];
  return series_reversion(inverse);
}

TruncatedSeries psi_from_eta(const TruncatedSeries& eta) {
  TruncatedSeries one_minus = TruncatedSeries::constant(eta.order(), 1.0) - eta;
  return series_mul(eta, series_reciprocal(one_minus));
}

namespace {

cplx moment_from_eta(const TruncatedSeries& eta, int n) {
  if (n == 0) return 1.0;
  const TruncatedSeries psi = psi_from_eta(eta);
  const cplx m = psi[static_cast<std::size_t>(std::abs(n))];
  return n > 0 ? m : std::conj(m);
}

// H_sigma(w) and H_sigma'(w).
std::pair<cplx, cplx> herglotz_with_derivative(const CircleMeasure& sigma, cplx w) {
  cplx h{}, dh{};
  for (const auto& a : sigma.atoms()) {
    const cplx xi = std::polar(1.0, a.theta);
    const cplx d = 1.0 - xi * w;
    h += a.weight * (1.0 + xi * w) / d;
    dh += a.weight * 2.0 * xi / (d * d);
  }
  if (const auto& m = sigma.moment_part()) {
    TruncatedSeries hs(std::max<std::size_t>(m->order(), 1));
    hs[0] = m->mass;
    for (std::size_t k = 1; k <= m->order(); ++k) hs[k] = 2.0 * m->values[k - 1];
    h += hs.eval(w);
    dh += hs.derivative().eval(w);
  }
  return {h, dh};
}

}  // namespace

cplx free_moment(const GeneratingFamily& family, double s, double t, int n, std::size_t order) {
  require_order(order, n, "free_moment");
  if (n == 0 || s == t) return 1.0;
  return moment_from_eta(free_eta_series(family, s, t, order), n);
}

cplx free_eta_pointwise(const GeneratingFamily& family, double s, double t, cplx z) {
  require_times(s, t);
  if (!(std::abs(z) < 1.0)) throw InvalidArgument("free_eta_pointwise: |z| >= 1");
  const CircleMeasure sigma = family.sigma_increment(s, t);
  const double alpha = family.alpha_increment(s, t);
  auto u = [&](cplx w) {
    auto [h, dh] = herglotz_with_derivative(sigma, w);
    return std::pair{h - cplx(0.0, alpha), dh};
  };
  cplx w = z * std::exp(-u(0.0).first);
  for (int iter = 0; iter < 100; ++iter) {
    auto [uw, duw] = u(w);
    const cplx e = std::exp(uw);
    const cplx f = w * e - z;
    const cplx df = e * (1.0 + w * duw);
    const cplx step = f / df;
    w -= step;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) >= 1.0) {
      throw SolverError("free_eta_pointwise: Newton iteration diverged", t);
    }
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) return w;
  }
  throw SolverError("free_eta_pointwise: Newton iteration did not converge", t);
}

TruncatedSeries boolean_eta_series(const GeneratingFamily& family, double s, double t,
                                   std::size_t order) {
  require_times(s, t);
  TruncatedSeries u = herglotz_series(family.sigma_increment(s, t), order) * cplx(-1.0);
  u[0] += cplx(0.0, family.alpha_increment(s, t));
  const TruncatedSeries e = series_exp(u);
  TruncatedSeries eta(order);
  for (std::size_t k = 1; k <= order; ++k) eta[k] = e[k - 1];
  return eta;
}

cplx boolean_eta(const GeneratingFamily& family, double s, double t, cplx z) {
  require_times(s, t);
  const CircleMeasure sigma = family.sigma_increment(s, t);
  return z * std::exp(cplx(0.0, family.alpha_increment(s, t)) - herglotz_eval(sigma, z));
}

cplx boolean_moment(const GeneratingFamily& family, double s, double t, int n, std::size_t order) {
  require_order(order, n, "boolean_moment");
  if (n == 0 || s == t) return 1.0;
  return moment_from_eta(boolean_eta_series(family, s, t, order), n);
}

cplx monotone_eta(const GeneratingFamily& family, double s, double t, cplx z,
                  const ode::Tolerances& tol) {
  return solve_characteristic(family, s, t, z, tol);
}

TruncatedSeries monotone_eta_series(const GeneratingFamily& family, double s, double t,
                                    const HemigroupOptions& opts) {
  return transition_series(family, s, t, opts.order, opts.circle_points, opts.radius, opts.ode);
}

cplx monotone_moment(const GeneratingFamily& family, double s, double t, int n,
                     const HemigroupOptions& opts) {
  require_order(opts.order, n, "monotone_moment");
  require_times(s, t);
  if (n == 0 || s == t) return 1.0;
  return moment_from_eta(monotone_eta_series(family, s, t, opts), n);
}

cplx moment(LawKind kind, const GeneratingFamily& family, double s, double t, int n,
            const HemigroupOptions& opts) {
  switch (kind) {
    case LawKind::Classical: return classical_moment(family, s, t, n);
    case LawKind::Free: return free_moment(family, s, t, n, opts.order);
    case LawKind::Boolean: return boolean_moment(family, s, t, n, opts.order);
    case LawKind::Monotone: return monotone_moment(family, s, t, n, opts);
  }
  throw InvalidArgument("moment: unknown law");
}

}  // namespace circlech
