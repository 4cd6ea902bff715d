#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circlech/error.hpp"
#include "circlech/measures.hpp"

using namespace circlech;
using std::numbers::pi;

namespace {

CircleMeasure random_atoms(std::mt19937& rng, int count) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi), weight(0.0, 1.0);
  std::vector<Atom> atoms;
  for (int i = 0; i < count; ++i) atoms.push_back({angle(rng), weight(rng)});
  return CircleMeasure(atoms);
}

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("moments of simple measures") {
    CHECK(std::abs(CircleMeasure::dirac(0.0).moment(5) - 1.0) < 1e-15);
    CHECK(std::abs(CircleMeasure::dirac(0.0, 0.5).moment(3) - 0.5) < 1e-15);
    CHECK(std::abs(CircleMeasure::haar().moment(2)) == 0.0);
    CHECK(CircleMeasure::haar(2.0).moment(0) == cplx(2.0));

    const auto d = CircleMeasure::dirac(0.7, 2.0);
    CHECK(std::abs(d.moment(-3) - std::conj(d.moment(3))) < 1e-15);
    CHECK(std::abs(d.moment(1) - std::polar(2.0, 0.7)) < 1e-15);
    CHECK_THROWS_AS(CircleMeasure::haar(1.0, 4).moment(5), InvalidArgument);
  }

  TEST_CASE("Herglotz series") {
    const auto h1 = herglotz_series(CircleMeasure::dirac(0.0), 6);
    CHECK(std::abs(h1[0] - 1.0) < 1e-15);
    for (std::size_t k = 1; k <= 6; ++k) CHECK(std::abs(h1[k] - 2.0) < 1e-15);

    const auto hh = herglotz_series(CircleMeasure::haar(), 6);
    CHECK(std::abs(hh[0] - 1.0) < 1e-15);
    for (std::size_t k = 1; k <= 6; ++k) CHECK(std::abs(hh[k]) < 1e-15);

    // (1/2) delta_{-1}: H(z) = (1/2)(1 - z)/(1 + z); oracle = 1024-point DFT
    // of the closed form on |z| = 0.5.
    const auto half = herglotz_series(CircleMeasure::dirac(pi, 0.5), 8);
    const int M = 1024;
    const double r = 0.5;
    for (int k = 0; k <= 8; ++k) {
      cplx acc{};
      for (int j = 0; j < M; ++j) {
        const cplx z = std::polar(r, 2.0 * pi * j / M);
        acc += 0.5 * (1.0 - z) / (1.0 + z) * std::polar(1.0, -2.0 * pi * j * k / M);
      }
      const cplx oracle = acc / double(M) / std::pow(r, k);
      CHECK(std::abs(half[static_cast<std::size_t>(k)] - oracle) < 1e-12);
    }
    CHECK(std::abs(half[1] + 1.0) < 1e-12);
    CHECK(std::abs(half[2] - 1.0) < 1e-12);
  }

  TEST_CASE("Herglotz evaluation agrees with the series") {
    const CircleMeasure m({{0.3, 0.4}, {2.0, 0.1}});
    const cplx z(0.2, -0.3);
    CHECK(std::abs(herglotz_eval(m, z) - herglotz_series(m, 40).eval(z)) < 1e-12);
    const auto mom = CircleMeasure::from_moments({1.0, {0.5, 0.25}});
    CHECK(std::abs(herglotz_eval(mom, z) - (1.0 + 2.0 * (0.5 * z + 0.25 * z * z))) < 1e-15);
  }

  TEST_CASE("Herglotz real part is non-negative near the boundary") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const auto m = random_atoms(rng, 5);
      for (int j = 0; j < 512; ++j) {
        CHECK(herglotz_eval(m, std::polar(0.9, 2.0 * pi * j / 512)).real() >= -1e-10);
      }
    }
  }

  TEST_CASE("char_distance") {
    const auto m = CircleMeasure::dirac(1.2, 0.7);
    CHECK(char_distance(m, m, 10) == 0.0);
    CHECK(std::abs(char_distance(CircleMeasure::dirac(0.0), CircleMeasure::dirac(0.0, 2.0), 0) - 1.0) < 1e-15);
    CHECK(std::abs(char_distance(CircleMeasure::dirac(0.0), CircleMeasure::haar(), 2) - 0.75) < 1e-15);
  }

  TEST_CASE("char_distance is a metric on random measures") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = random_atoms(rng, 3), b = random_atoms(rng, 4), c = random_atoms(rng, 2);
      const double ab = char_distance(a, b, 8), ba = char_distance(b, a, 8);
      CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
      CHECK(ab <= char_distance(a, c, 8) + char_distance(c, b, 8) + 1e-14);
      CHECK(ab >= 0.0);
    }
  }

  TEST_CASE("rotation push-forward") {
    const auto r = pushforward_rotation(CircleMeasure::dirac(0.0), pi);
    CHECK(std::abs(r.moment(1) + 1.0) < 1e-15);
    CHECK(char_distance(pushforward_rotation(CircleMeasure::haar(), 0.4), CircleMeasure::haar(), 32) == 0.0);
    const auto mom = CircleMeasure::from_moments({0.5, {0.5, 0.5}});
    CHECK(std::abs(pushforward_rotation(mom, pi / 2).moment(1) - cplx(0.0, 0.5)) < 1e-15);

    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const auto m = random_atoms(rng, 4);
      const auto mom = CircleMeasure::from_moments({m.mass(), m.moments(16)});
      const double phi = 1.3 * trial;
      const auto back = pushforward_rotation(pushforward_rotation(mom, phi), -phi);
      for (int k = 0; k <= 16; ++k) CHECK(std::abs(back.moment(k) - mom.moment(k)) < 1e-14);
      // Atoms carry angles, so round-off grows like k |theta| eps.
      const auto atoms = pushforward_rotation(pushforward_rotation(m, phi), -phi);
      for (int k = 0; k <= 4; ++k) CHECK(std::abs(atoms.moment(k) - m.moment(k)) < 1e-14);
    }
  }

  TEST_CASE("Toeplitz PSD check") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      const auto m = random_atoms(rng, 1 + trial % 6);
      MomentSequence seq{m.mass(), m.moments(16)};
      CHECK(CircleMeasure::from_moments(seq).violations().empty());

      std::uniform_real_distribution<double> u(1.01, 2.0);
      MomentSequence bad{1.0, {u(rng), 0.0, 0.0}};
      CHECK_FALSE(CircleMeasure::from_moments(bad).violations().empty());
    }
    // |m_k| <= m_0 alone is not enough: (1, 0.9, -0.9) is not a moment sequence.
    CHECK_FALSE(CircleMeasure::from_moments({1.0, {0.9, -0.9}}).violations().empty());
    CHECK_FALSE(CircleMeasure({{0.0, -1.0}}).violations().empty());
  }

  TEST_CASE("Fejer density reconstruction") {
    for (const auto& [theta, value] : reconstruct_density(CircleMeasure::haar(), 64)) {
      CHECK(value == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-12));
      (void)theta;
    }
    for (const auto& [theta, value] : reconstruct_density(CircleMeasure::zero(), 16)) {
      CHECK(value == 0.0);
      (void)theta;
    }
    const auto d = reconstruct_density(CircleMeasure::dirac(0.0), 256, 32);
    CHECK(d.front().first == 0.0);
    CHECK(d.front().second == doctest::Approx(33.0 / (2.0 * pi)).epsilon(1e-12));
    for (const auto& p : d) CHECK(p.second <= d.front().second + 1e-12);
  }

  TEST_CASE("arithmetic") {
    const auto s = CircleMeasure::dirac(0.0, 1.0) + CircleMeasure::haar(2.0, 4);
    CHECK(s.mass() == doctest::Approx(3.0));
    CHECK(s.moment_order() == 4);
    CHECK(std::abs(s.moment(2) - 1.0) < 1e-15);
    CHECK((0.5 * s).mass() == doctest::Approx(1.5));
    CHECK(CircleMeasure::zero().is_zero());
    CHECK(wrap_angle(-0.5) == doctest::Approx(2.0 * pi - 0.5));
  }
}
