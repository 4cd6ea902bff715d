#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "circlech/genfamily.hpp"
#include "circlech/hemigroups.hpp"

namespace circlech {

struct ReportEntry {
  std::string name;
  double value = 0.0;  ///< sup-distance, >= 0
  std::string grid;    ///< description of the grid the sup ran over
  bool pass = true;    ///< value <= tolerance
};

struct ConvergenceReport {
  std::vector<ReportEntry> entries;
  double tolerance = 0.0;

  bool pass() const;
  const ReportEntry& at(const std::string& name) const;
  /// Re-evaluates every entry's pass flag against `tol`.
  void apply_tolerance(double tol);
};

/// Entries "alpha" (sup |alpha_A - alpha_B|) and "sigma" (sup of
/// char_distance(sigma_A(t), sigma_B(t), K)) over the union of both knot
/// grids, restricted to the common horizon.
ConvergenceReport family_distance(const GeneratingFamily& a, const GeneratingFamily& b,
                                  std::size_t K = 8);

/// Entry "<law>": sup over s <= t in `times` and 1 <= n <= n_max of
/// |moment(kind, A, s, t, n) - moment(kind, B, s, t, n)|. Negative orders
/// are conjugates and add nothing to the sup. Empty `times` picks 32 uniform
/// points on the common horizon.
ConvergenceReport hemigroup_distance(LawKind kind, const GeneratingFamily& a,
                                     const GeneratingFamily& b, int n_max = 8,
                                     std::span<const double> times = {},
                                     const HemigroupOptions& opts = {});

struct StudyRow {
  double family_distance = 0.0;    ///< max of the alpha and sigma entries
  double hemigroup_distance = 0.0;
};

/// One row per candidate: (family_distance, hemigroup_distance) against the target.
std::vector<StudyRow> equivalence_study(LawKind kind, const GeneratingFamily& target,
                                        std::span<const GeneratingFamily> candidates,
                                        std::size_t K = 8, int n_max = 8,
                                        std::span<const double> times = {},
                                        const HemigroupOptions& opts = {});

/// CSV with header "name,value,grid,pass".
std::string to_csv(const ConvergenceReport& report);

}  // namespace circlech
