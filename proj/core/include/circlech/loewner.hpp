#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "circlech/genfamily.hpp"
#include "circlech/ode.hpp"
#include "circlech/series.hpp"

namespace circlech {

/// Evaluates eta_{s,t}(z) by integrating the characteristic ODE
/// dz/dtau = z p(z, tau), p = -i gamma + H_rho, backward from tau = t to
/// tau = s. Pure-rotation and constant-p intervals are solved exactly;
/// intervals with no drift and no mass are skipped.
/// Throws InvalidArgument for |z| >= 1 and SolverError on step underflow or
/// when |z(tau)| grows along the backward flow.
cplx solve_characteristic(const GeneratingFamily& family, double s, double t, cplx z,
                          const ode::Tolerances& tol = {});

/// Evaluates eta_{s,t} at every point of `z` in place with one shared step
/// sequence per knot interval.
void solve_characteristic_batch(const GeneratingFamily& family, double s, double t,
                                std::span<cplx> z, const ode::Tolerances& tol = {});

/// Smallest power of two >= 2N+2.
std::size_t default_circle_points(std::size_t order);

/// Taylor coefficients of eta_{s,t} from M samples on |z| = radius.
TruncatedSeries transition_series(const GeneratingFamily& family, double s, double t,
                                  std::size_t order, std::size_t points = 0, double radius = 0.5,
                                  const ode::Tolerances& tol = {});

/// eta_{0,t} as a series.
TruncatedSeries solve_chain_series(const GeneratingFamily& family, double t,
                                   std::size_t order = kDefaultOrder, std::size_t points = 0,
                                   double radius = 0.5, const ode::Tolerances& tol = {});

/// Taylor coefficients of f(z) from samples f(r w^j), w = e^{2 pi i/M}.
TruncatedSeries fft_taylor_coefficients(std::span<const cplx> samples, double radius,
                                        std::size_t order);

/// A decreasing Loewner chain f_t = eta_{0,t} sampled on a time grid.
class ChainSample {
 public:
  ChainSample() = default;
  ChainSample(std::vector<double> times, std::vector<TruncatedSeries> series);

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<TruncatedSeries>& series() const noexcept { return series_; }
  std::size_t size() const noexcept { return times_.size(); }
  std::size_t order() const;

  /// Unwrapped arg c_1(t_j), alpha_0 = 0.
  const std::vector<double>& alpha() const noexcept { return alpha_; }
  /// -log |c_1(t_j)|.
  const std::vector<double>& decay() const noexcept { return decay_; }

  /// g_j(z) = f_j(e^{-i alpha_j} z): the chain with the rotation removed.
  TruncatedSeries rotated(std::size_t j) const;

  std::vector<std::string> violations(double tol = 1e-8) const;

 private:
  std::vector<double> times_;
  std::vector<TruncatedSeries> series_;
  std::vector<double> alpha_;
  std::vector<double> decay_;
};

ChainSample solve_chain(const GeneratingFamily& family, std::span<const double> times,
                        std::size_t order = kDefaultOrder, std::size_t points = 0,
                        double radius = 0.5, const ode::Tolerances& tol = {});

/// The (Phi, Pi) pair of an H-family on a knot grid, for the chain with its
/// rotation removed. Pi restricted to interval i is the push-forward of the
/// rate rho_i dt under xi -> e^{-i alpha(t)} xi, alpha(t) = alpha_i + gamma_i (t - t_i).
/// Phi is stored per interval and must vanish.
struct HFamilyRep {
  struct Piece {
    double t0 = 0.0;
    double t1 = 0.0;
    double alpha0 = 0.0;
    double gamma = 0.0;
    CircleMeasure rate;
  };
  std::vector<Piece> pieces;
  std::vector<double> phi;

  /// Rejects nonzero phi, negative rates and unordered pieces.
  HFamilyRep(std::vector<Piece> pieces, std::vector<double> phi = {});
};

HFamilyRep hfamily_from_family(const GeneratingFamily& family);

/// Q(z, [u, v]) = i Phi([u,v]) + int (1 + xi z)/(1 - xi z) Pi(dxi x [u,v]).
cplx hfamily_eval(const HFamilyRep& h, cplx z, double u, double v);

struct ResidualReport {
  double max_residual = 0.0;
  double at_time = 0.0;
  cplx at_z{};
};

/// max over the sample times and z-grid of
///   |g_t(z) - z + z sum_j g'_{s_j}(z) Q(z, [t_j, t_{j+1}])|,
/// midpoint rule with g' at the midpoint interpolated from the two neighbours.
/// The chain is given in f-form; the rotation is removed internally.
ResidualReport integral_residual(const ChainSample& chain, const HFamilyRep& h,
                                 std::span<const cplx> z_grid);

/// Polar grid of points with |z| <= max_radius.
std::vector<cplx> disk_grid(double max_radius, std::size_t radii, std::size_t angles);

struct ExtractionDiagnostics {
  double psd_clip_total = 0.0;     ///< sum of Frobenius adjustments
  double psd_clip_max = 0.0;
  std::size_t clipped_intervals = 0;
  std::vector<std::string> log;
};

struct ExtractionResult {
  GeneratingFamily family;
  ExtractionDiagnostics diagnostics;
};

inline constexpr std::size_t kDefaultExtractionOrder = 8;

/// Recovers (alpha, sigma) from a sampled chain: alpha from the unwrapped
/// argument of c_1, per-interval rates from the difference quotient
///   r(z) = -(g_{j+1}(z) - g_j(z)) / (dt z (g_j'(z) + g_{j+1}'(z)) / 2),
/// Herglotz coefficients of r, rotated back by the midpoint alpha. Only
/// moments up to max_order are kept (clamped to order - 1); the error of
/// coefficient k grows like k dt. Moment matrices that fail PSD are projected
/// back and logged.
ExtractionResult extract_generating_family(const ChainSample& chain,
                                           std::size_t max_order = kDefaultExtractionOrder);

struct GapReport {
  double min_slack = 0.0;  ///< min of RHS - LHS
  std::size_t violations = 0;
  std::size_t checks = 0;
};

/// Checks |g_s(z) - g_t(z)| <= 8|z|/(1-|z|)^4 (1/g_t'(0) - 1/g_s'(0)) for all
/// sampled pairs s < t (at most `max_times` evenly spread samples) and
/// |z| in `radii`.
GapReport gap_bound_check(const ChainSample& chain, std::span<const double> radii = {},
                          double tol = 1e-8, std::size_t angles = 16, std::size_t max_times = 65);

}  // namespace circlech
