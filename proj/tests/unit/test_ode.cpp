#include <doctest.h>

#include <cmath>
#include <vector>

#include "circlech/ode.hpp"

using namespace circlech;
using C = std::complex<double>;

TEST_SUITE("ode") {
  TEST_CASE("linear batch forward and backward") {
    const C lambda(-0.5, 2.0);
    std::vector<C> y{1.0, C(0.0, 2.0), 0.25};
    const auto y0 = y;
    auto f = [&](double, std::span<const C> x, std::span<C> dx) {
      for (std::size_t i = 0; i < x.size(); ++i) dx[i] = lambda * x[i];
    };
    ode::Stats stats;
    ode::dopri5(f, 0.0, 1.5, std::span<C>(y), {}, [](double, auto, auto) {}, &stats);
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(y[i] - y0[i] * std::exp(lambda * 1.5)) < 1e-8);
    CHECK(stats.accepted > 0);

    ode::dopri5(f, 1.5, 0.0, std::span<C>(y), {}, [](double, auto, auto) {});
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(y[i] - y0[i]) < 1e-8);
  }

  TEST_CASE("time-dependent scalar problem") {
    // y' = 2 t y, y(0) = 1 => y = exp(t^2).
    std::vector<C> y{1.0};
    auto f = [](double t, std::span<const C> x, std::span<C> dx) { dx[0] = 2.0 * t * x[0]; };
    ode::dopri5(f, 0.0, 1.0, std::span<C>(y), {}, [](double, auto, auto) {});
    CHECK(std::abs(y[0] - std::exp(1.0)) < 1e-8);
  }

  TEST_CASE("step callback may abort and limits are enforced") {
    std::vector<C> y{1.0};
    auto f = [](double, std::span<const C> x, std::span<C> dx) { dx[0] = x[0]; };
    CHECK_THROWS_AS(ode::dopri5(f, 0.0, 1.0, std::span<C>(y), {},
                                [](double t, auto, auto) {
                                  if (t > 0.5) throw SolverError("stop", t);
                                }),
                    SolverError);
    ode::Tolerances tight;
    tight.max_steps = 2;
    tight.abs_tol = tight.rel_tol = 1e-14;
    std::vector<C> z{1.0};
    CHECK_THROWS_AS(ode::dopri5(f, 0.0, 10.0, std::span<C>(z), tight, [](double, auto, auto) {}), SolverError);
  }
}
