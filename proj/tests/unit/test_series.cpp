#include <doctest.h>

#include <cmath>
#include <random>

#include "circlech/error.hpp"
#include "circlech/series.hpp"

using namespace circlech;

namespace {

// Brute-force oracles, deliberately naive.
std::vector<cplx> naive_product(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t n) {
  std::vector<cplx> c(n + 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (i + j <= n) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<cplx> naive_compose(const std::vector<cplx>& outer, const std::vector<cplx>& inner, std::size_t n) {
  std::vector<cplx> result(n + 1), power(n + 1);
  power[0] = 1.0;
  for (std::size_t k = 0; k < outer.size(); ++k) {
    for (std::size_t i = 0; i <= n; ++i) result[i] += outer[k] * power[i];
    power = naive_product(power, inner, n);
  }
  return result;
}

std::vector<cplx> as_vector(const TruncatedSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

TruncatedSeries random_series(std::mt19937& rng, std::size_t n, double c0 = 0.3) {
  std::normal_distribution<double> g(0.0, 1.0);
  TruncatedSeries s(n);
  s[0] = c0;
  for (std::size_t k = 1; k <= n; ++k) s[k] = cplx(g(rng), g(rng)) / double(k * k);
  return s;
}

double catalan(int n) {
  double c = 1.0;
  for (int k = 0; k < n; ++k) c = c * 2.0 * (2 * k + 1) / (k + 2);
  return c;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("multiplication examples") {
    const TruncatedSeries a(3, {1.0, 1.0}), b(3, {1.0, -1.0});
    const TruncatedSeries p = series_mul(a, b);
    CHECK(p[0] == cplx(1.0));
    CHECK(p[1] == cplx(0.0));
    CHECK(p[2] == cplx(-1.0));
    CHECK(p[3] == cplx(0.0));

    CHECK(max_abs_diff(series_mul(a, TruncatedSeries::constant(3, 1.0)), a) == 0.0);

    const TruncatedSeries s(4, {0.0, 1.0, 1.0});
    const auto sq = series_mul(s, s);
    const auto oracle = naive_product(as_vector(s), as_vector(s), 4);
    for (std::size_t k = 0; k <= 4; ++k) CHECK(std::abs(sq[k] - oracle[k]) == 0.0);
    CHECK(sq[2] == cplx(1.0));
    CHECK(sq[3] == cplx(2.0));
    CHECK(sq[4] == cplx(1.0));
  }

  TEST_CASE("order mismatch is rejected") {
    CHECK_THROWS_AS(series_mul(TruncatedSeries(3), TruncatedSeries(4)), InvalidArgument);
    CHECK_THROWS_AS(TruncatedSeries(2, {1.0, 2.0, 3.0, 4.0}), InvalidArgument);
  }

  TEST_CASE("composition") {
    TruncatedSeries geo(4);
    for (std::size_t k = 1; k <= 4; ++k) geo[k] = 1.0;  // z/(1-z)
    const auto c = series_compose(geo, geo);
    const auto oracle = naive_compose(as_vector(geo), as_vector(geo), 4);
    for (std::size_t k = 0; k <= 4; ++k) {
      CHECK(std::abs(c[k] - oracle[k]) < 1e-14);
      if (k > 0) CHECK(std::abs(c[k] - std::pow(2.0, double(k) - 1)) < 1e-14);
    }
    CHECK(max_abs_diff(series_compose(geo, TruncatedSeries::identity(4)), geo) < 1e-15);
    CHECK(max_abs_diff(series_compose(TruncatedSeries::identity(4), geo), geo) < 1e-15);
    CHECK_THROWS_AS(series_compose(geo, TruncatedSeries::constant(4, 0.5)), InvalidArgument);
  }

  TEST_CASE("reversion") {
    const auto id = TruncatedSeries::identity(6);
    CHECK(max_abs_diff(series_reversion(id), id) < 1e-15);

    const TruncatedSeries f(6, {0.0, 1.0, 1.0});
    const auto g = series_reversion(f);
    for (int k = 1; k <= 6; ++k) {
      const double expected = (k % 2 == 1 ? 1.0 : -1.0) * catalan(k - 1);
      CHECK(std::abs(g[k] - expected) < 1e-12);
    }
    const auto back = naive_compose(as_vector(f), as_vector(g), 6);
    for (std::size_t k = 0; k <= 6; ++k) CHECK(std::abs(back[k] - (k == 1 ? 1.0 : 0.0)) < 1e-12);

    const auto half = series_reversion(TruncatedSeries(4, {0.0, 2.0}));
    CHECK(std::abs(half[1] - 0.5) < 1e-15);
    CHECK_THROWS_AS(series_reversion(TruncatedSeries(4, {0.0, 0.0, 1.0})), DomainError);
    CHECK_THROWS_AS(series_reversion(TruncatedSeries(4, {0.1, 1.0})), InvalidArgument);
  }

  TEST_CASE("exp and log") {
    const auto e = series_exp(TruncatedSeries(2, {0.0, 1.0}));
    CHECK(std::abs(e[0] - 1.0) < 1e-15);
    CHECK(std::abs(e[1] - 1.0) < 1e-15);
    CHECK(std::abs(e[2] - 0.5) < 1e-15);
    CHECK(max_abs_diff(series_exp(TruncatedSeries(5)), TruncatedSeries::constant(5, 1.0)) == 0.0);

    const TruncatedSeries f(8, {0.0, 1.0, 3.0});
    CHECK(max_abs_diff(series_log(series_exp(f)), f) < 1e-10);
    CHECK_THROWS_AS(series_log(TruncatedSeries(3, {0.0, 1.0})), DomainError);

    // exp(f)(z) agrees with std::exp of the polynomial at small z.
    const cplx z(0.01, 0.02);
    CHECK(std::abs(series_exp(f).eval(z) - std::exp(f.eval(z))) < 1e-12);
  }

  TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(20240601);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 12;
      const auto a = random_series(rng, n), b = random_series(rng, n), c = random_series(rng, n);
      const auto lhs = series_mul(series_mul(a, b), c), rhs = series_mul(a, series_mul(b, c));
      double scale = 1.0;
      for (const auto& v : lhs.coeffs()) scale = std::max(scale, std::abs(v));
      CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * scale);
      CHECK(max_abs_diff(series_mul(a, b + c), series_mul(a, b) + series_mul(a, c)) <= 1e-12 * scale);
      CHECK(max_abs_diff(series_mul(a, b), series_mul(b, a)) <= 1e-12 * scale);
      const auto oracle = naive_product(as_vector(a), as_vector(b), n);
      const auto ab = series_mul(a, b);
      for (std::size_t k = 0; k <= n; ++k) CHECK(std::abs(ab[k] - oracle[k]) <= 1e-12 * scale);
    }
  }

  TEST_CASE("reversion is a two-sided inverse") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      auto f = random_series(rng, 16, 0.0);
      f[1] = cplx(1.0, 0.3 * trial / 20.0);
      const auto g = series_reversion(f);
      const auto id = TruncatedSeries::identity(16);
      CHECK(max_abs_diff(series_compose(f, g), id) < 1e-10);
      CHECK(max_abs_diff(series_compose(g, f), id) < 1e-10);
    }
  }

  TEST_CASE("exp/log round trip on random series") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_series(rng, 16, 0.2);
      CHECK(max_abs_diff(series_log(series_exp(f)), f) < 1e-10);
    }
  }

  TEST_CASE("reciprocal, derivative and shift") {
    const TruncatedSeries f(5, {1.0, -1.0});
    const auto r = series_reciprocal(f);
    for (std::size_t k = 0; k <= 5; ++k) CHECK(std::abs(r[k] - 1.0) < 1e-15);
    const TruncatedSeries p(3, {1.0, 2.0, 3.0, 4.0});
    const auto d = p.derivative();
    CHECK(d[0] == cplx(2.0));
    CHECK(d[2] == cplx(12.0));
    const auto s = series_shift_down(p);
    CHECK(s.order() == 2);
    CHECK(s[0] == cplx(2.0));
    CHECK(s[2] == cplx(4.0));
  }
}
