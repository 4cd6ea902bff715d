#include "circlech/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circlech/error.hpp"

namespace circlech {

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
  if (a.order() != b.order()) {
    throw InvalidArgument(std::string(op) + ": order mismatch (" + std::to_string(a.order()) +
                          " vs " + std::to_string(b.order()) + ")");
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::size_t order) {
  if (order < 1) throw InvalidArgument("TruncatedSeries: order must be >= 1");
  coeffs_.assign(order + 1, cplx{});
}

TruncatedSeries::TruncatedSeries(std::size_t order, std::span<const cplx> coeffs)
    : TruncatedSeries(order) {
  if (coeffs.size() > order + 1) {
    throw InvalidArgument("TruncatedSeries: " + std::to_string(coeffs.size()) +
                          " coefficients exceed order " + std::to_string(order));
  }
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

TruncatedSeries::TruncatedSeries(std::size_t order, std::initializer_list<cplx> coeffs)
    : TruncatedSeries(order, std::span<const cplx>(coeffs.begin(), coeffs.size())) {}

TruncatedSeries TruncatedSeries::constant(std::size_t order, cplx c) {
  TruncatedSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::identity(std::size_t order) {
  TruncatedSeries s(order);
  s.coeffs_[1] = 1.0;
  return s;
}

cplx TruncatedSeries::eval(cplx z) const noexcept {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

TruncatedSeries TruncatedSeries::derivative() const {
  TruncatedSeries d(order());
  for (std::size_t k = 1; k <= order(); ++k) d.coeffs_[k - 1] = static_cast<double>(k) * coeffs_[k];
  return d;
}

TruncatedSeries TruncatedSeries::with_order(std::size_t order) const {
  TruncatedSeries s(order);
  const std::size_t n = std::min(order, this->order());
  std::copy_n(coeffs_.begin(), n + 1, s.coeffs_.begin());
  return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  require_same_order(*this, rhs, "series_add");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  require_same_order(*this, rhs, "series_sub");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx s) noexcept {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_mul(a, b);
}

double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k <= a.order(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b, "series_mul");
  const std::size_t n = a.order();
  TruncatedSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TruncatedSeries series_reciprocal(const TruncatedSeries& f) {
  if (f[0] == cplx{}) throw DomainError("series_reciprocal: constant term is zero");
  const std::size_t n = f.order();
  TruncatedSeries g(n);
  const cplx inv0 = 1.0 / f[0];
  g[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    cplx acc{};
    for (std::size_t j = 1; j <= k; ++j) acc += f[j] * g[k - j];
    g[k] = -acc * inv0;
  }
  return g;
}

TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
  require_same_order(outer, inner, "series_compose");
  if (inner[0] != cplx{}) throw InvalidArgument("series_compose: inner constant term is nonzero");
  const std::size_t n = outer.order();
  // Horner: (((c_N) g + c_{N-1}) g + ...) g + c_0
  TruncatedSeries acc = TruncatedSeries::constant(n, outer[n]);
  for (std::size_t k = n; k-- > 0;) {
    acc = series_mul(acc, inner);
    acc[0] += outer[k];
  }
  return acc;
}

TruncatedSeries series_reversion(const TruncatedSeries& f) {
  if (f[0] != cplx{}) throw InvalidArgument("series_reversion: constant term is nonzero");
  if (f[1] == cplx{}) throw DomainError("series_reversion: vanishing linear coefficient");
  const std::size_t n = f.order();
  const TruncatedSeries z = TruncatedSeries::identity(n);
  const TruncatedSeries df = f.derivative();

  // Newton on g -> f(g) - z; each step doubles the number of correct terms.
  TruncatedSeries g = z * (1.0 / f[1]);
  std::size_t correct = 1;
  while (correct < n) {
    const TruncatedSeries residual = series_compose(f, g) - z;
    g -= series_mul(residual, series_reciprocal(series_compose(df, g)));
    correct *= 2;
  }
  return g;
}

TruncatedSeries series_exp(const TruncatedSeries& f) {
  // g = exp(f)  <=>  g' = f' g,  k g_k = sum_{j=1}^k j f_j g_{k-j}
  const std::size_t n = f.order();
  TruncatedSeries g(n);
  g[0] = std::exp(f[0]);
  for (std::size_t k = 1; k <= n; ++k) {
    cplx acc{};
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * f[j] * g[k - j];
    g[k] = acc / static_cast<double>(k);
  }
  return g;
}

TruncatedSeries series_log(const TruncatedSeries& f) {
  if (f[0] == cplx{}) throw DomainError("series_log: constant term is zero");
  // h = log f  <=>  f h' = f',  k h_k f_0 = k f_k - sum_{j=1}^{k-1} j h_j f_{k-j}
  const std::size_t n = f.order();
  TruncatedSeries h(n);
  h[0] = std::log(f[0]);
  for (std::size_t k = 1; k <= n; ++k) {
    cplx acc = static_cast<double>(k) * f[k];
    for (std::size_t j = 1; j < k; ++j) acc -= static_cast<double>(j) * h[j] * f[k - j];
    h[k] = acc / (static_cast<double>(k) * f[0]);
  }
  return h;
}

TruncatedSeries series_shift_down(const TruncatedSeries& f) {
  if (f.order() < 2) throw InvalidArgument("series_shift_down: order must be >= 2");
  TruncatedSeries out(f.order() - 1);
  for (std::size_t k = 1; k <= f.order(); ++k) out[k - 1] = f[k];
  return out;
}

}  // namespace circlech
