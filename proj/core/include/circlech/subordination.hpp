#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "circlech/genfamily.hpp"
#include "circlech/ode.hpp"

namespace circlech {

struct SubordinationResult {
  GeneratingFamily family;
  /// validate() output for the subordinated family (PSD failures etc.).
  std::vector<std::string> violations;
};

/// Generating family of the monotone hemigroup lambda_{0,s} -> lambda_{s,t}
/// subordinated to the free hemigroup of `family`: alpha is copied and, on
/// each interval,
///   dsigma_i = int_{t_i}^{t_{i+1}} sum_{j>=1} m_j(rho_i) eta_s^j ds,
/// where eta_s is the free eta-series of lambda_{0,s}; the time integral uses
/// 8-point Gauss-Legendre. Interval measures come out in moment form.
SubordinationResult subordinated_family(const GeneratingFamily& family,
                                        std::size_t order = kDefaultOrder);

struct SubordinationReport {
  double max_discrepancy = 0.0;
  double at_time = 0.0;
  cplx at_z{};
  std::size_t checks = 0;
};

/// sup over `times` and `z_grid` of |eta_monotone(0,t,z) - eta_free(0,t,z)|,
/// the monotone side solved from subordinated_family(family).
SubordinationReport verify_subordination(const GeneratingFamily& family, std::span<const double> times,
                                         std::span<const cplx> z_grid,
                                         std::size_t order = kDefaultOrder,
                                         const ode::Tolerances& tol = {});

/// Same, with the subordinated family supplied by the caller.
SubordinationReport verify_subordination(const GeneratingFamily& family,
                                         const GeneratingFamily& subordinated,
                                         std::span<const double> times,
                                         std::span<const cplx> z_grid,
                                         std::size_t order = kDefaultOrder,
                                         const ode::Tolerances& tol = {});

}  // namespace circlech
