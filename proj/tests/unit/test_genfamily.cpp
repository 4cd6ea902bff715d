#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circlech/error.hpp"
#include "circlech/genfamily.hpp"

using namespace circlech;
using std::numbers::pi;

namespace {

GeneratingFamily normal_family() { return GeneratingFamily({{0.0, 0.0}, {1.0, 0.0}}, {CircleMeasure::dirac(0.0, 0.5)}); }

GeneratingFamily idle_middle() {
  return GeneratingFamily({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}},
                          {CircleMeasure::dirac(0.0, 1.0), CircleMeasure::zero(), CircleMeasure::dirac(1.0, 1.0)});
}

GeneratingFamily random_family(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Knot> knots{{0.0, 0.0}};
  std::vector<CircleMeasure> iv;
  for (int i = 0; i < 6; ++i) {
    knots.push_back({knots.back().t + 0.1 + u(rng), knots.back().alpha + 2.0 * u(rng) - 1.0});
    iv.push_back(CircleMeasure({{2.0 * pi * u(rng), u(rng)}, {2.0 * pi * u(rng), u(rng)}}));
  }
  return GeneratingFamily(knots, iv);
}

}  // namespace

TEST_SUITE("genfamily") {
  TEST_CASE("validate") {
    CHECK(validate(normal_family()).empty());

    const GeneratingFamily neg({{0.0, 0.0}, {1.0, 0.0}}, {CircleMeasure({{0.0, -0.5}})});
    const auto v1 = validate(neg);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0] == "Δσ_0 not non-negative");

    const GeneratingFamily shifted({{0.0, 0.3}, {1.0, 0.3}}, {CircleMeasure::dirac(0.0, 0.5)});
    const auto v2 = validate(shifted);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0] == "α(0) ≠ 0");

    const GeneratingFamily unsorted({{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}, {CircleMeasure(), CircleMeasure()});
    CHECK_FALSE(validate(unsorted).empty());
    const GeneratingFamily mismatch({{0.0, 0.0}, {1.0, 0.0}}, {});
    CHECK_FALSE(validate(mismatch).empty());
    const GeneratingFamily not_psd({{0.0, 0.0}, {1.0, 0.0}}, {CircleMeasure::from_moments({1.0, {0.9, -0.9}})});
    CHECK_FALSE(validate(not_psd).empty());
    CHECK_THROWS_AS(make_validated({{0.0, 0.3}, {1.0, 0.3}}, {CircleMeasure()}), InvalidArgument);
  }

  TEST_CASE("sigma_at and alpha_at") {
    const auto f = normal_family();
    CHECK(f.sigma_at(1.0).mass() == doctest::Approx(0.5));
    CHECK(f.sigma_at(0.5).mass() == doctest::Approx(0.25));
    CHECK(std::abs(f.sigma_at(0.5).moment(3) - 0.25) < 1e-15);
    CHECK(f.sigma_at(0.0).is_zero());
    CHECK(f.alpha_at(0.0) == 0.0);
    CHECK_THROWS_AS(f.sigma_at(1.5), InvalidArgument);
    CHECK_THROWS_AS(f.alpha_at(-0.1), InvalidArgument);

    const GeneratingFamily rot({{0.0, 0.0}, {1.0, pi}}, {CircleMeasure()});
    CHECK(rot.alpha_at(0.25) == doctest::Approx(pi / 4));
  }

  TEST_CASE("interval fields") {
    const auto n = interval_field(normal_family(), 0);
    CHECK(n.gamma == 0.0);
    CHECK(n.rho.mass() == doctest::Approx(0.5));

    const auto r = interval_field(GeneratingFamily({{0.0, 0.0}, {1.0, pi}}, {CircleMeasure()}), 0);
    CHECK(r.gamma == doctest::Approx(pi));
    CHECK(r.rho.is_zero());

    const auto w = interval_field(GeneratingFamily({{0.0, 0.0}, {2.0, 0.0}}, {CircleMeasure::dirac(pi)}), 0);
    CHECK(w.rho.mass() == doctest::Approx(0.5));
    CHECK(std::abs(w.rho.moment(1) + 0.5) < 1e-15);
  }

  TEST_CASE("mass clock and reparameterization") {
    const auto f = normal_family();
    CHECK(mass_clock(f, 1.0) == doctest::Approx(0.5));
    CHECK(reparam_tau(f, 0.25) == doctest::Approx(0.5));

    const auto g = idle_middle();
    const double a1 = mass_clock(g, 1.0);
    CHECK(a1 == doctest::Approx(1.0));
    CHECK(reparam_tau(g, a1) == doctest::Approx(2.0));
    CHECK(mass_clock(g, 1.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(reparam_tau(g, 5.0), InvalidArgument);
  }

  TEST_CASE("standard triples") {
    const std::vector<double> times{0.0, 1.0};
    const std::vector<StandardTriple> gauss{{0.0, 1.0, {}}};
    const auto n = from_standard_triple(times, gauss);
    CHECK(char_distance(n.sigma_at(1.0), CircleMeasure::dirac(0.0, 0.5), 16) < 1e-15);

    const std::vector<StandardTriple> jump{{0.0, 0.0, {{pi, 1.0}}}};
    const auto j = from_standard_triple(times, jump);
    CHECK(j.sigma_at(1.0).mass() == doctest::Approx(2.0));
    CHECK(std::abs(j.sigma_at(1.0).moment(1) + 2.0) < 1e-14);

    const std::vector<StandardTriple> none{{0.0, 0.0, {}}};
    CHECK(from_standard_triple(times, none).sigma_at(1.0).is_zero());

    const std::vector<StandardTriple> bad{{0.0, 0.0, {{0.0, 1.0}}}};
    CHECK_THROWS_AS(from_standard_triple(times, bad), InvalidArgument);
  }

  TEST_CASE("increments are non-negative and the clock inverts") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_family(rng);
      REQUIRE(validate(f).empty());
      const double T = f.horizon();
      double s = T * u(rng), t = T * u(rng);
      if (s > t) std::swap(s, t);
      CHECK(f.sigma_increment(s, t).violations().empty());
      CHECK(mass_clock(f, t) >= mass_clock(f, s));
      CHECK(reparam_tau(f, mass_clock(f, t)) >= t - 1e-12);
      const double uu = mass_clock(f, T) * u(rng);
      CHECK(mass_clock(f, reparam_tau(f, uu)) == doctest::Approx(uu).epsilon(1e-12));
    }
  }

  TEST_CASE("helpers") {
    const auto times = uniform_times(2.0, 4);
    REQUIRE(times.size() == 5);
    CHECK(times.back() == 2.0);
    const auto h = homogeneous_family(0.5, CircleMeasure::dirac(0.0, 1.0), 2.0, 4);
    CHECK(h.interval_count() == 4);
    CHECK(h.alpha_at(2.0) == doctest::Approx(1.0));
    CHECK(h.sigma_at(2.0).mass() == doctest::Approx(2.0));

    const auto slit = slit_family([](double) { return 0.5; }, [](double t) { return t; }, 1.0, 4);
    CHECK(slit.interval_measures()[1].atoms().at(0).theta == doctest::Approx(0.375));
    CHECK(slit.sigma_at(1.0).mass() == doctest::Approx(0.5));

    const auto r = resample(h, uniform_times(2.0, 8));
    CHECK(r.interval_count() == 8);
    CHECK(char_distance(r.sigma_at(1.3), h.sigma_at(1.3), 8) < 1e-14);
  }
}
