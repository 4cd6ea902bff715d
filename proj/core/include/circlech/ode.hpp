#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "circlech/error.hpp"

namespace circlech::ode {

struct Tolerances {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double min_step = 1e-13;
  std::size_t max_steps = 1'000'000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Adaptive Dormand-Prince 5(4) integration of y' = f(t, y) from t0 to t1 for
/// a batch of complex states advanced with one shared step sequence (the
/// error norm is the max over components). t1 < t0 integrates backward.
///
///   f(double t, std::span<const cplx> y, std::span<cplx> dy)
///   on_step(double t, std::span<const cplx> y_old, std::span<const cplx> y_new)
///
/// on_step runs after every accepted step and may throw to abort. Sharing the
/// step sequence makes the discrete flow the same rational map for every
/// component, which keeps it analytic in the initial value.
template <class Rhs, class OnStep>
void dopri5(Rhs&& f, double t0, double t1, std::span<std::complex<double>> y,
            const Tolerances& tol, OnStep&& on_step, Stats* stats = nullptr) {
  using C = std::complex<double>;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = t1 - t0;
  if (span == 0.0 || y.empty()) return;
  const std::size_t n = y.size();
  const double dir = span > 0.0 ? 1.0 : -1.0;

  std::vector<C> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y_new(n);
  auto stage = [&](double tt, std::vector<C>& out) { f(tt, std::span<const C>(tmp), std::span<C>(out)); };

  double t = t0;
  f(t, std::span<const C>(y.data(), n), std::span<C>(k1));

  double h = std::abs(span);
  for (std::size_t i = 0; i < n; ++i) {
    const double dy = std::abs(k1[i]);
    if (dy > 0.0) h = std::min(h, 0.01 * std::max(std::abs(y[i]), 1e-6) / dy);
  }
  h = std::max(h, 1e-6 * std::abs(span));

  std::size_t steps = 0;
  while (dir * (t1 - t) > 0.0) {
    if (++steps > tol.max_steps) throw SolverError("dopri5: step limit exceeded", t);
    bool last = false;
    if (h >= std::abs(t1 - t)) {
      h = std::abs(t1 - t);
      last = true;
    }
    const double hs = dir * h;
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a21 * k1[i]);
    stage(t + c2 * hs, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    stage(t + c3 * hs, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    stage(t + c4 * hs, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    stage(t + c5 * hs, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    stage(t + hs, k6);
    for (std::size_t i = 0; i < n; ++i)
      y_new[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + hs, std::span<const C>(y_new), std::span<C>(k7));

    double ratio = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const C err = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = tol.abs_tol + tol.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      ratio = std::max(ratio, std::abs(err) / scale);
    }
    if (!std::isfinite(ratio)) {
      h *= 0.1;
      if (stats) ++stats->rejected;
      if (h < tol.min_step) throw SolverError("dopri5: step size underflow", t);
      continue;
    }
    if (ratio <= 1.0) {
      const double t_new = last ? t1 : t + hs;
      on_step(t_new, std::span<const C>(y.data(), n), std::span<const C>(y_new));
      t = t_new;
      std::copy(y_new.begin(), y_new.end(), y.begin());
      std::swap(k1, k7);  // first-same-as-last
      if (stats) ++stats->accepted;
      h *= ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    } else {
      h *= std::clamp(0.9 * std::pow(ratio, -0.25), 0.1, 0.9);
      if (stats) ++stats->rejected;
      if (h < tol.min_step) throw SolverError("dopri5: step size underflow", t);
    }
  }
}

}  // namespace circlech::ode
