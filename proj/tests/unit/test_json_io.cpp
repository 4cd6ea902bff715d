#include <doctest.h>

#include <cmath>

#include "circlech/json_io.hpp"

using namespace circlech;

TEST_SUITE("json_io") {
  TEST_CASE("measure round trip") {
    const CircleMeasure m({{0.25, 0.5}, {3.0, 1.0 / 3.0}}, MomentSequence{0.1, {cplx(0.01, -0.02)}});
    const auto back = measure_from_json(parse_json(to_json(m).dump()));
    CHECK(char_distance(m, back, 1) == 0.0);
    CHECK(back.atoms().size() == 2);
    CHECK_THROWS_AS(measure_from_json(parse_json(R"({"atoms":[{"theta":"x"}]})")), ParseError);
  }

  TEST_CASE("family round trip and validation") {
    const auto f = homogeneous_family(0.3, CircleMeasure({{1.0, 0.2}}), 1.0, 2);
    const auto back = family_from_json(to_json(f));
    CHECK(family_distance(f, back).at("sigma").value == 0.0);
    CHECK(family_distance(f, back).at("alpha").value == 0.0);

    const auto bad = parse_json(R"({"knots":[{"t":0,"alpha":0.3},{"t":1,"alpha":0.3}],
                                    "interval_measures":[{"atoms":[]}]})");
    try {
      family_from_json(bad);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      REQUIRE(e.violations().size() == 1);
      CHECK(e.violations()[0] == "α(0) ≠ 0");
    }
    CHECK_THROWS_AS(family_from_json(parse_json(R"({"knots":3})")), ParseError);
    CHECK_THROWS_AS(parse_json("{\"knots\": ["), ParseError);
  }

  TEST_CASE("chain serialization is exact and stable") {
    const auto f = homogeneous_family(0.7, CircleMeasure::dirac(2.0, 0.3), 1.0, 1);
    const auto chain = solve_chain(f, uniform_times(1.0, 4), 8);
    const std::string text = chain_to_json_string(chain);
    const auto back = chain_from_json(parse_json(text));
    REQUIRE(back.size() == chain.size());
    for (std::size_t j = 0; j < chain.size(); ++j) CHECK(max_abs_diff(back.series()[j], chain.series()[j]) == 0.0);
    CHECK(chain_to_json_string(back) == text);
  }

  TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2.0) == "2");
  }
}
