#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "circlech/genfamily.hpp"
#include "circlech/ode.hpp"
#include "circlech/series.hpp"

namespace circlech {

enum class LawKind { Classical, Free, Boolean, Monotone };

std::string_view to_string(LawKind kind) noexcept;
/// Accepts "classical", "free", "boolean", "monotone".
LawKind parse_law(std::string_view name);

/// Numerical settings shared by the series-based and ODE-based laws.
struct HemigroupOptions {
  std::size_t order = kDefaultOrder;  ///< truncation order N
  std::size_t circle_points = 0;      ///< FFT size M; 0 picks the smallest power of two >= 2N+2
  double radius = 0.5;                ///< radius of the sampling circle for monotone series
  ode::Tolerances ode{};
};

/// int K_n dsigma with K_n(xi) = (xi^n - 1 - i n Im xi)/(1 - Re xi), K_n(1) = -n^2.
/// Atoms use the closed form; the moment part uses
///   K_n(xi) = -n - 2 sum_{k=1}^{n-1} (n-k) xi^k   (n >= 1),  K_{-n} = conj(K_n).
cplx classical_kernel_integral(const CircleMeasure& sigma, int n);

/// n-th moment of the classical increment mu_{s,t}.
cplx classical_moment(const GeneratingFamily& family, double s, double t, int n);

/// Sigma-transform series exp(-i alpha_{s,t} + H_{sigma_{s,t}}(z)) of the free increment.
TruncatedSeries free_sigma_series(const GeneratingFamily& family, double s, double t,
                                  std::size_t order = kDefaultOrder);
/// eta-transform of the free increment, by reversion of z Sigma(z).
/// Throws DomainError when |m_1| < 1e-12 (Haar degeneration).
TruncatedSeries free_eta_series(const GeneratingFamily& family, double s, double t,
                                std::size_t order = kDefaultOrder);
cplx free_moment(const GeneratingFamily& family, double s, double t, int n,
                 std::size_t order = kDefaultOrder);
/// Pointwise free eta by Newton on w e^{u(w)} = z, seeded at z e^{-u(0)}.
/// Cross-check only; throws SolverError when Newton diverges.
cplx free_eta_pointwise(const GeneratingFamily& family, double s, double t, cplx z);

/// eta-transform z exp(i alpha_{s,t} - H_{sigma_{s,t}}(z)) of the boolean increment.
TruncatedSeries boolean_eta_series(const GeneratingFamily& family, double s, double t,
                                   std::size_t order = kDefaultOrder);
cplx boolean_eta(const GeneratingFamily& family, double s, double t, cplx z);
cplx boolean_moment(const GeneratingFamily& family, double s, double t, int n,
                    std::size_t order = kDefaultOrder);

/// Transition map eta_{s,t}(z) of the monotone hemigroup (radial Loewner flow).
cplx monotone_eta(const GeneratingFamily& family, double s, double t, cplx z,
                  const ode::Tolerances& tol = {});
TruncatedSeries monotone_eta_series(const GeneratingFamily& family, double s, double t,
                                    const HemigroupOptions& opts = {});
cplx monotone_moment(const GeneratingFamily& family, double s, double t, int n,
                     const HemigroupOptions& opts = {});

/// Moments from an eta-transform: coefficients of psi = eta/(1 - eta).
TruncatedSeries psi_from_eta(const TruncatedSeries& eta);

/// n-th moment of the (s,t) increment of the hemigroup of the given kind.
/// Negative n by conjugation; n = 0 gives 1.
cplx moment(LawKind kind, const GeneratingFamily& family, double s, double t, int n,
            const HemigroupOptions& opts = {});

/// e^{i alpha_{s,t} - sigma_{s,t}(T)}: common first moment of the free,
/// boolean and monotone increments (and the classical one).
cplx first_moment(const GeneratingFamily& family, double s, double t);

}  // namespace circlech
