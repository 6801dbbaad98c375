#include <doctest.h>

#include "oslab/braid.hpp"
#include "support.hpp"

using namespace oslab;

namespace {

const Series kZ = testing::z_power(1);
const Series kA = Series::var(Var::a);
const Series kAinv = Series::var(Var::a, -1);

Series z_power(int k) { return testing::z_power(k); }
Series over(const HomflyValue& v, int depth) { return testing::over_denominator(v, depth); }

}  // namespace

TEST_SUITE("braid") {
  TEST_CASE("parse and format") {
    const BraidWord b = parse_braid("1,-2, 1", 3);
    CHECK(b.letters == std::vector<int>{1, -2, 1});
    CHECK(format_braid(b) == "1,-2,1");
    CHECK(parse_braid("", 1).letters.empty());
    CHECK_THROWS_AS(parse_braid("1,x", 2), BraidError);
    CHECK_THROWS_AS(parse_braid("3", 3), BraidError);
    CHECK_THROWS_AS(parse_braid("0", 3), BraidError);
  }

  TEST_CASE("components, exponent sum, torus words") {
    CHECK(parse_braid("1,1,1", 2).component_count() == 1);
    CHECK(parse_braid("1,1", 2).component_count() == 2);
    CHECK(parse_braid("", 3).component_count() == 3);
    CHECK(parse_braid("1,-2,1", 3).exponent_sum() == 1);
    CHECK(torus_braid(3, 2) == parse_braid("1,1,1", 2));
    CHECK(torus_braid(2, 3) == parse_braid("1,2,1,2", 3));
    CHECK(milnor_number(3, 4) == 6);
    CHECK_THROWS_WITH_AS(milnor_number(2, 4), "gcd(p,q) must be 1", BraidError);
    CHECK(mirror(parse_braid("1,-2", 3)) == parse_braid("-1,2", 3));
  }

  TEST_CASE("unknot normalization") {
    const HomflyValue u = unknot_value();
    CHECK(u.den_power == 1);
    CHECK(u.numerator == kA - kAinv);
    CHECK(homfly(parse_braid("", 1)) == u);
    CHECK(homfly(parse_braid("1", 2)) == u);
    CHECK(homfly(parse_braid("-1", 2)) == u);
    CHECK(homfly(parse_braid("1,2", 3)) == u);
  }

  TEST_CASE("split unions multiply") {
    const HomflyValue u = unknot_value();
    CHECK(homfly(parse_braid("", 2)) == u * u);
    CHECK(homfly(parse_braid("1,1,1", 3)) == homfly(parse_braid("1,1,1", 2)) * u);
  }

  TEST_CASE("two-strand torus links follow the skein recursion") {
    // P_k = a^{-2} P_{k-2} + a^{-1} z P_{k-1}, from P_0 = U^2 and P_1 = U,
    // over the denominator z^depth.
    const int depth = 12;
    const Series u = (kA - kAinv) * z_power(depth - 1);
    std::map<int, Series> p;
    p[0] = (kA - kAinv) * (kA - kAinv) * z_power(depth - 2);
    p[1] = u;
    for (int k = 2; k <= 8; ++k) p[k] = Series::var(Var::a, -2) * p[k - 2] + kAinv * kZ * p[k - 1];
    // P_{k-2} = a^2 P_k - a z P_{k-1}
    for (int k = -1; k >= -6; --k) p[k] = Series::var(Var::a, 2) * p[k + 2] - kA * kZ * p[k + 1];
    for (const auto& [k, num] : p) {
      BraidWord b{2, {}};
      for (int i = 0; i < std::abs(k); ++i) b.letters.push_back(k > 0 ? 1 : -1);
      CAPTURE(k);
      CHECK(over(homfly(b), depth) == num);
    }
  }

  TEST_CASE("trefoil closed form") {
    const HomflyValue v = homfly(parse_braid("1,1,1", 2));
    CHECK(v.to_string() == "(a^-5 - a^-3*q^-2 - a^-3 - a^-3*q^2 + a^-1*q^-2 + a^-1*q^2) / (q - q^-1)^1");
  }

  TEST_CASE("mirror image inverts a and q") {
    std::mt19937_64 rng(testing::test_seed() + 10);
    for (int i = 0; i < 40; ++i) {
      const BraidWord b = testing::random_braid(rng, 2 + static_cast<int>(rng() % 3), 7);
      CHECK(homfly(mirror(b)) == homfly(b).mirrored());
    }
  }

  TEST_CASE("skein relation on seeded random triples") {
    const auto seed = testing::test_seed();
    MESSAGE("seed " << seed);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 80; ++i) {
      const BraidWord b = testing::random_braid(rng, 2 + static_cast<int>(rng() % 3), 8, 1);
      const std::size_t pos = rng() % b.letters.size();
      CAPTURE(format_braid(b));
      CHECK(testing::skein_defect(b, pos).is_zero());
    }
  }

  TEST_CASE("Markov moves") {
    std::mt19937_64 rng(testing::test_seed() + 11);
    for (int i = 0; i < 40; ++i) {
      const int strands = 2 + static_cast<int>(rng() % 3);
      const BraidWord b = testing::random_braid(rng, strands, 6);
      const HomflyValue base = homfly(b);
      const int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(strands - 1));
      const int s = rng() % 2 ? g : -g;
      BraidWord conj{strands, {s}};
      conj.letters.insert(conj.letters.end(), b.letters.begin(), b.letters.end());
      conj.letters.push_back(-s);
      CHECK(homfly(conj) == base);
      BraidWord stab{strands + 1, b.letters};
      stab.letters.push_back(rng() % 2 ? strands : -strands);
      CHECK(homfly(stab) == base);
    }
  }

  TEST_CASE("Hecke engine matches the skein-tree oracle on random words") {
    std::mt19937_64 rng(testing::test_seed() + 12);
    for (int i = 0; i < 60; ++i) {
      const BraidWord b = testing::random_braid(rng, 2 + static_cast<int>(rng() % 3), 8);
      CAPTURE(format_braid(b));
      CHECK(homfly(b) == homfly_skein_tree(b));
    }
  }

  TEST_CASE("limits are enforced") {
    BraidWord b{2, std::vector<int>(10, 1)};
    CHECK_THROWS_AS(homfly(b, HomflyOptions{5, 9}), BraidError);
    CHECK_THROWS_AS(homfly(BraidWord{12, {}}), BraidError);
    CHECK_THROWS_AS(homfly_skein_tree(BraidWord{2, std::vector<int>(13, 1)}), BraidError);
  }

  TEST_CASE("q-expansion of the unknot") {
    // (a - a^{-1}) / (q - q^{-1}) = (a^{-1} - a) (q + q^3 + q^5 + ...)
    const Series s = expand_q_series(unknot_value(), 7);
    Series expected(make_caps({{Var::q, 7}}));
    for (int k = 1; k <= 7; k += 2) {
      expected.add_term(MonomialKey::of(Var::q, k) * MonomialKey::of(Var::a, -1), 1);
      expected.add_term(MonomialKey::of(Var::q, k) * MonomialKey::of(Var::a, 1), -1);
    }
    CHECK(agree_within_caps(s, expected));
  }

  TEST_CASE("json carries numerator and denominator power") {
    const auto j = to_json(unknot_value());
    CHECK(j.at("den_power") == 1);
    CHECK(series_from_json(j.at("numerator")) == kA - kAinv);
  }
}
