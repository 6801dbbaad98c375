#include <doctest.h>

#include "oslab/pointcount.hpp"
#include "support.hpp"

using namespace oslab;

TEST_SUITE("pointcount") {
  TEST_CASE("interpolation recovers x^2 + 1 and notices a bad sample") {
    std::vector<std::pair<long, Integer>> samples = {{2, 5}, {3, 10}, {5, 26}, {7, 50}};
    const CountPolynomial f = fit_count_polynomial(samples, 3);
    CHECK(f.verified);
    CHECK(f.integral());
    CHECK(f.coeffs == std::vector<Rational>{1, 0, 1});
    CHECK(f(Rational(4)) == 17);
    samples.back().second = 51;
    CHECK_FALSE(fit_count_polynomial(samples, 3).verified);
  }

  TEST_CASE("cusp ideal counts over small fields") {
    const CurveGerm g = CurveGerm::make(2, 3);
    for (int prime : {2, 3, 5}) {
      CAPTURE(prime);
      CHECK(pointcount_oracle(g, 0, prime) == 1);
      CHECK(pointcount_oracle(g, 1, prime) == 1);  // only the maximal ideal
      CHECK(pointcount_oracle(g, 2, prime) == prime + 1);
      CHECK(pointcount_oracle(g, 3, prime) == prime + 1);
    }
  }

  TEST_CASE("smooth germ has one ideal per colength") {
    const CurveGerm g = CurveGerm::make(1, 3);
    for (int l = 0; l <= 4; ++l) CHECK(pointcount_oracle(g, l, 3) == 1);
  }

  TEST_CASE("census splits by generator count") {
    const CurveGerm g = CurveGerm::make(2, 3);
    const auto census = ideal_census(g, 2, 5);
    CHECK(census == std::map<int, long>{{1, 5}, {2, 1}});
    const auto strata = stratum_polynomials(g, 3);
    REQUIRE(strata.size() == 2);
    CHECK(strata.at(1).coeffs == std::vector<Rational>{0, 1});
    CHECK(strata.at(2).coeffs == std::vector<Rational>{1});
  }

  TEST_CASE("polynomial value at 1 is the module count") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}}) {
      const CurveGerm g = CurveGerm::make(p, q);
      const auto hist = module_histogram(enumerate_modules(g, 3));
      std::map<int, long> by_n;
      for (const auto& [nm, c] : hist) by_n[nm.first] += c;
      for (int l = 0; l <= 3; ++l) {
        const CountPolynomial f = ideal_count_polynomial(g, l);
        CHECK(f.verified);
        CHECK(f(1) == by_n[l]);
      }
    }
  }

  TEST_CASE("nested pairs for the cusp") {
    const CurveGerm g = CurveGerm::make(2, 3);
    const std::map<std::pair<int, int>, std::vector<Rational>> expected = {
        {{0, 0}, {1}},    {{0, 1}, {1}},    {{0, 2}, {}},  {{1, 0}, {1}}, {{1, 1}, {1, 1}},
        {{1, 2}, {1}},    {{2, 0}, {1, 1}}, {{2, 1}, {1, 2}}, {{2, 2}, {1}}};
    for (const auto& [jr, coeffs] : expected) {
      CAPTURE(jr.first);
      CAPTURE(jr.second);
      const CountPolynomial f = nested_pair_polynomial(g, jr.first, jr.second);
      CHECK(f.verified);
      CHECK(f.coeffs == coeffs);
    }
  }

  TEST_CASE("truncation covers the conductor and limits are enforced") {
    const CurveGerm g = CurveGerm::make(3, 4);
    CHECK(pointcount_truncation(g, 3) >= g.conductor() + 3);
    CHECK_THROWS_AS(pointcount_oracle(g, kPointcountMaxLevel + 1, 2), PointcountError);
    CHECK_THROWS_AS(pointcount_oracle(g, 1, 4), PointcountError);
  }
}
