#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace circlech {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultOrder = 32;

/// Power series c_0 + c_1 z + ... + c_N z^N over the complex numbers,
/// truncated at a fixed order N. All arithmetic discards terms beyond z^N.
class TruncatedSeries {
 public:
  /// Zero series of the given order (order >= 1).
  explicit TruncatedSeries(std::size_t order = kDefaultOrder);
  /// Takes coefficients c_0..c_k, padding with zeros up to `order`. Extra
  /// coefficients beyond `order` are rejected.
  TruncatedSeries(std::size_t order, std::span<const cplx> coeffs);
  TruncatedSeries(std::size_t order, std::initializer_list<cplx> coeffs);

  static TruncatedSeries constant(std::size_t order, cplx c);
  /// The series z.
  static TruncatedSeries identity(std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx operator[](std::size_t k) const { return coeffs_.at(k); }
  cplx& operator[](std::size_t k) { return coeffs_.at(k); }

  /// Horner evaluation of the polynomial part.
  cplx eval(cplx z) const noexcept;
  TruncatedSeries derivative() const;
  /// Re-truncate (or zero-pad) to another order.
  TruncatedSeries with_order(std::size_t order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(cplx s) noexcept;

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, cplx s) { return a *= s; }
  friend TruncatedSeries operator*(cplx s, TruncatedSeries a) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Largest coefficient-wise modulus of the difference.
  friend double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  std::vector<cplx> coeffs_;
};

/// Cauchy product truncated at N. Throws InvalidArgument on order mismatch.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// 1/f; requires f.c_0 != 0.
TruncatedSeries series_reciprocal(const TruncatedSeries& f);

/// Taylor coefficients of outer(inner(z)); requires inner.c_0 == 0.
TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

/// Compositional inverse; requires f.c_0 == 0 and f.c_1 != 0.
TruncatedSeries series_reversion(const TruncatedSeries& f);

TruncatedSeries series_exp(const TruncatedSeries& f);
/// Principal branch at c_0; requires f.c_0 != 0.
TruncatedSeries series_log(const TruncatedSeries& f);

/// (f - f.c_0)/z as a series of order N-1.
TruncatedSeries series_shift_down(const TruncatedSeries& f);

}  // namespace circlech
