#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "circlech/measures.hpp"

namespace circlech {

struct Knot {
  double t = 0.0;
  double alpha = 0.0;
};

/// Drift rate and measure rate of a generating family on one knot interval.
struct IntervalField {
  double gamma = 0.0;  ///< radians per unit time
  CircleMeasure rho;   ///< mass per unit time
};

/// Standard (Gaussian + Levy) form of the exponent on one interval.
struct StandardTriple {
  double drift = 0.0;
  double gaussian = 0.0;      ///< variance v >= 0
  std::vector<Atom> levy;     ///< finite-atom Levy measure on T \ {1}
};

/// Generating family (alpha_t, sigma_t) with alpha piecewise linear and
/// sigma_t piecewise linear in t between knots:
///   sigma_t = sum_{i : t_{i+1} <= t} dsigma_i + frac * dsigma_j   on [t_j, t_{j+1}].
/// Construction does not validate; call validate() or use make_validated().
class GeneratingFamily {
 public:
  GeneratingFamily() = default;
  GeneratingFamily(std::vector<Knot> knots, std::vector<CircleMeasure> interval_measures);

  const std::vector<Knot>& knots() const noexcept { return knots_; }
  const std::vector<CircleMeasure>& interval_measures() const noexcept { return intervals_; }
  std::size_t interval_count() const noexcept { return intervals_.size(); }
  double horizon() const;

  /// Index j of the interval [t_j, t_{j+1}] containing t (the last one for t = t_m).
  std::size_t interval_at(double t) const;

  CircleMeasure sigma_at(double t) const;
  double alpha_at(double t) const;
  /// sigma_t - sigma_s, built from the intervals overlapping [s, t] only.
  CircleMeasure sigma_increment(double s, double t) const;
  double alpha_increment(double s, double t) const { return alpha_at(t) - alpha_at(s); }

  IntervalField interval_field(std::size_t i) const;

  /// a(t) = sigma_t(T).
  double mass_clock(double t) const;
  /// sup{ t : a(t) = u }.
  double reparam_tau(double u) const;

  /// Smallest moment order among interval measures (unbounded when all are atoms).
  std::size_t moment_order() const;

 private:
  void require_time(double t, const char* op) const;

  std::vector<Knot> knots_;
  std::vector<CircleMeasure> intervals_;
  std::vector<double> cumulative_mass_;
};

/// Empty iff the family obeys the structural rules: knots strictly increasing
/// from t_0 = 0, alpha(0) = 0, one non-negative measure per interval.
std::vector<std::string> validate(const GeneratingFamily& family);

/// Throws InvalidArgument listing the violations, if any.
GeneratingFamily make_validated(std::vector<Knot> knots, std::vector<CircleMeasure> interval_measures);

IntervalField interval_field(const GeneratingFamily& family, std::size_t i);
double mass_clock(const GeneratingFamily& family, double t);
double reparam_tau(const GeneratingFamily& family, double u);

/// Builds the family from per-interval rates in standard form: on interval
/// i, alpha grows at rate drift and
///   dsigma_i = dt * ((v/2) delta_1 + sum_j (1 - cos theta_j) w_j delta_{theta_j}).
/// Throws InvalidArgument for a Levy atom at xi = 1.
GeneratingFamily from_standard_triple(std::span<const double> times,
                                      std::span<const StandardTriple> rates);

/// Uniform knot grid helpers used by examples, tests and the CLI.
std::vector<double> uniform_times(double horizon, std::size_t intervals);

/// Constant-rate family alpha_t = gamma t, sigma_t = t rho on [0, horizon]
/// split into `intervals` equal pieces.
GeneratingFamily homogeneous_family(double gamma, const CircleMeasure& rho, double horizon = 1.0,
                                    std::size_t intervals = 1);

/// One moving atom: rate lambda(t) at angle theta(t), frozen at interval
/// midpoints, alpha = 0.
GeneratingFamily slit_family(const std::function<double(double)>& lambda,
                             const std::function<double(double)>& theta, double horizon,
                             std::size_t intervals);

/// Samples (alpha, sigma) of `family` at `times` (which must lie in its
/// horizon and start at 0) and interpolates linearly in between.
GeneratingFamily resample(const GeneratingFamily& family, std::span<const double> times);

}  // namespace circlech
