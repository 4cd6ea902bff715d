#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circlech/series.hpp"

namespace circlech {

struct Atom {
  double theta = 0.0;  ///< angle in [0, 2pi)
  double weight = 0.0;
};

/// Truncated trigonometric moment data: mass m_0 and complex m_1..m_N.
/// Negative-index moments follow from m_{-k} = conj(m_k).
struct MomentSequence {
  double mass = 0.0;
  std::vector<cplx> values;  ///< m_1..m_N

  std::size_t order() const noexcept { return values.size(); }
};

/// Finite non-negative measure on the unit circle, held as a sum of point
/// masses and (optionally) a part known only through its first N moments.
/// Atom-only measures have unbounded moment order.
class CircleMeasure {
 public:
  CircleMeasure() = default;
  explicit CircleMeasure(std::vector<Atom> atoms, std::optional<MomentSequence> moments = std::nullopt);

  static CircleMeasure zero() { return {}; }
  static CircleMeasure dirac(double theta, double weight = 1.0);
  /// Normalized Haar measure scaled by `mass`, in moment form of the given order.
  static CircleMeasure haar(double mass = 1.0, std::size_t order = kDefaultOrder);
  static CircleMeasure from_moments(MomentSequence moments);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::optional<MomentSequence>& moment_part() const noexcept { return moments_; }

  /// Highest k for which moment(k) is defined.
  std::size_t moment_order() const noexcept;
  double mass() const;
  /// int xi^k dmeasure; throws InvalidArgument when |k| exceeds moment_order().
  cplx moment(int k) const;
  /// Moments m_1..m_n.
  std::vector<cplx> moments(std::size_t n) const;

  bool is_zero() const;

  /// Sum of measures; the moment part is truncated to the smaller order.
  friend CircleMeasure operator+(const CircleMeasure& a, const CircleMeasure& b);
  friend CircleMeasure operator*(double s, const CircleMeasure& m);

  /// Empty iff every weight is non-negative and finite, |m_k| <= m_0, and the
  /// Toeplitz matrix of the moment part is positive semidefinite (relative
  /// tolerance `tol`).
  std::vector<std::string> violations(double tol = 1e-9) const;

 private:
  std::vector<Atom> atoms_;
  std::optional<MomentSequence> moments_;
};

double wrap_angle(double theta) noexcept;

/// Smallest eigenvalue of the Hermitian Toeplitz matrix [m_{j-k}] of size
/// (values.size()+1).
double toeplitz_min_eigenvalue(double mass, const std::vector<cplx>& values);

/// Taylor series of int (1 + xi z)/(1 - xi z) dsigma(xi) = m_0 + 2 sum m_k z^k.
TruncatedSeries herglotz_series(const CircleMeasure& sigma, std::size_t order);

/// Pointwise Herglotz transform. Atoms in closed form; the moment part via
/// its truncated series.
cplx herglotz_eval(const CircleMeasure& sigma, cplx z);

/// sum_{k=0}^K 2^{-k} |m_k(sigma) - m_k(tau)|.
double char_distance(const CircleMeasure& sigma, const CircleMeasure& tau, std::size_t K);

/// Push-forward under xi -> e^{i phi} xi.
CircleMeasure pushforward_rotation(const CircleMeasure& sigma, double phi);

/// Fejer-smoothed density on a uniform theta grid, built from moments up to
/// `order` (clamped to the measure's own order).
std::vector<std::pair<double, double>> reconstruct_density(const CircleMeasure& sigma,
                                                           std::size_t grid_size,
                                                           std::size_t order = kDefaultOrder);

}  // namespace circlech
