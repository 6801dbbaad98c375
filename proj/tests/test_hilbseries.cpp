#include <doctest.h>

#include "oslab/hilbseries.hpp"
#include "support.hpp"

using namespace oslab;

namespace {

Series at_y_minus_one(const Series& s) { return series_substitute(s, {{Var::y, {-1, MonomialKey::one()}}}); }

MonomialKey mono(std::int64_t a, std::int64_t q) {
  MonomialKey k;
  k[Var::a] = a;
  k[Var::q] = q;
  return k;
}

std::map<int, long> counts_by_colength(const CurveGerm& g, int nmax) {
  std::map<int, long> by_n;
  for (const auto& [nm, c] : module_histogram(enumerate_modules(g, nmax))) by_n[nm.first] += c;
  return by_n;
}

const std::vector<std::pair<int, int>> kGerms = {{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}};

}  // namespace

TEST_SUITE("hilbseries") {
  TEST_CASE("Euler characteristics of Hodge data") {
    CHECK(HodgeData::point().euler() == 1);
    CHECK(HodgeData::affine_line().euler() == 1);
    CHECK(HodgeData::punctured_line().euler() == 0);
    for (int g = 0; g <= 3; ++g) CHECK(HodgeData::smooth_curve(g).euler() == 2 - 2 * g);
  }

  TEST_CASE("symmetric products: point and punctured line") {
    const Series point = symmetric_product_series(HodgeData::point(), 6);
    for (int k = 0; k <= 6; ++k) CHECK(point.coeff(MonomialKey::of(Var::q, 2 * k)) == 1);
    CHECK(point.size() == 7);
    const Series cstar = at_y_minus_one(symmetric_product_series(HodgeData::punctured_line(), 6));
    CHECK(cstar == Series::constant(1, cstar.caps()));
  }

  TEST_CASE("symmetric products of smooth curves specialize to (1 - q^2)^{-chi}") {
    for (int g = 0; g <= 3; ++g) {
      const Series s = at_y_minus_one(symmetric_product_series(HodgeData::smooth_curve(g), 8));
      const Series expected =
          power_product({{MonomialKey::of(Var::q, 2), -1, Rational(2 * g - 2)}}, make_caps({{Var::q, 16}}));
      CAPTURE(g);
      CHECK(agree_within_caps(s, expected));
    }
  }

  TEST_CASE("affine line keeps its weight") {
    // (1 - y^2 q^2)^{-1}
    const Series s = symmetric_product_series(HodgeData::affine_line(), 4);
    for (int k = 0; k <= 4; ++k) CHECK(s.coeff(MonomialKey::of(Var::q, 2 * k) * MonomialKey::of(Var::y, 2 * k)) == 1);
    CHECK(s.size() == 5);
  }

  TEST_CASE("Gaussian binomials") {
    Series g42;
    for (auto [e, c] : std::vector<std::pair<int, int>>{{0, 1}, {2, 1}, {4, 2}, {6, 1}, {8, 1}})
      g42.add_term(MonomialKey::of(Var::y, e), c);
    CHECK(gaussian(4, 2) == g42);
    for (int s = 0; s <= 6; ++s)
      for (int r = 0; r <= s; ++r) {
        CHECK(gaussian(s, r) == gaussian(s, s - r));
        const Series at_one = series_substitute(gaussian(s, r), {{Var::y, {1, MonomialKey::one()}}});
        CHECK(at_one.constant_term() == binomial(Rational(s), r));
      }
  }

  TEST_CASE("cusp local series from the hand histogram") {
    // one module (0,1), one (1,2), and for n >= 2 one each of m = 1, 2
    const Series s = local_top_series(CurveGerm::make(2, 3), 5);
    Series expected(make_caps({{Var::q, 10}}));
    auto add = [&](int n, int m) {
      for (int j = 0; j <= m; ++j) expected.add_term(mono(2 * j, 2 * n), binomial(Rational(m), j) * (j % 2 ? -1 : 1));
    };
    add(0, 1);
    add(1, 2);
    for (int n = 2; n <= 5; ++n) {
      add(n, 1);
      add(n, 2);
    }
    CHECK(s == expected);
  }

  TEST_CASE("Oblomkov-Shende comparison for small torus knots") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {1, 3}}) {
      CAPTURE(p);
      CAPTURE(q);
      const OsReport r = os_verify(p, q, 14);
      CHECK(r.passed());
      CHECK(r.mismatches() == 0);
      CHECK_FALSE(r.coefficients.empty());
    }
  }

  TEST_CASE("a wrong Milnor number is caught") {
    const OsReport r = os_verify(2, 3, 10, 4L);
    CHECK_FALSE(r.passed());
    CHECK(r.mismatches() > 0);
  }

  TEST_CASE("smooth germs match in closed form") {
    for (int k = 1; k <= 5; ++k) CHECK(os_smooth_closed_form(k));
  }

  TEST_CASE("refined series at y = -1") {
    for (auto [p, q] : kGerms) {
      const CurveGerm g = CurveGerm::make(p, q);
      const Series local = local_top_series(g, 8);
      CHECK(refined_local_series(g, 8, RefinedBackend::euler) == local);
    }
    const CurveGerm cusp = CurveGerm::make(2, 3);
    CHECK(agree_within_caps(at_y_minus_one(refined_local_series(cusp, 4, RefinedBackend::pointcount)),
                            local_top_series(cusp, 4)));
    CHECK_THROWS_AS(refined_local_series(cusp, kPointcountBackendMaxN + 1, RefinedBackend::pointcount), HilbError);
    CHECK(parse_backend("pointcount") == RefinedBackend::pointcount);
    CHECK_FALSE(parse_backend("hodge"));
  }

  TEST_CASE("two assemblies of the small-b series agree") {
    for (auto [p, q] : kGerms) {
      CAPTURE(p);
      CAPTURE(q);
      CHECK(smallb_two_path(CurveGerm::make(p, q), 8, std::min(p, q)).passed());
    }
  }

  TEST_CASE("global series at a = 0 counts points stratum by stratum") {
    // chi(Hilb^n) = sum_j #modules(j) * chi(Sym^{n-j}(X minus p)), with
    // chi(Sym^k Y) = (-1)^k binom(-chi(Y), k).
    const CurveGerm g = CurveGerm::make(3, 4);
    const int nmax = 7;
    const auto counts = counts_by_colength(g, nmax);
    for (long chi : {-1L, 0L, 1L, 2L, 3L}) {
      const Series global = global_top_series(g, nmax, chi);
      for (int n = 0; n <= nmax; ++n) {
        Rational expected = 0;
        for (int j = 0; j <= n; ++j)
          expected += Rational(counts.at(j)) * binomial(Rational(-(chi - 1)), n - j) * ((n - j) % 2 ? -1 : 1);
        CAPTURE(chi);
        CAPTURE(n);
        CHECK(global.coeff(MonomialKey::of(Var::q, 2 * n)) == expected);
      }
    }
    CHECK(global_top_series(g, nmax, kAffineGermChi) == local_top_series(g, nmax));
  }

  TEST_CASE("rational compact models") {
    const CurveGerm cusp = CurveGerm::make(2, 3);
    const CompactCurveData cubic = default_compact_model(cusp);
    CHECK(cubic.degree == 3);
    CHECK(cubic.chi_OC == 0);
    CHECK(cubic.chi_OC_from_degree() == 0);
    CHECK(cubic.chi_top == 2);
    CHECK(cubic.hodge_punctured == HodgeData::affine_line());
    CHECK(default_compact_model(CurveGerm::make(3, 4)).degree == 4);
    CHECK(default_compact_model(CurveGerm::make(1, 2)).degree == 1);
    CHECK_THROWS_AS(default_compact_model(CurveGerm::make(2, 5)), HilbError);
    CHECK_THROWS_AS(CompactCurveData::rational_unibranch(4, cusp), HilbError);
  }

  TEST_CASE("motivic compact series specializes to the topological one") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {1, 1}}) {
      const CurveGerm g = CurveGerm::make(p, q);
      const CompactCurveData c = default_compact_model(g);
      const int nmax = p * q == 1 ? 4 : 3;
      CHECK(euler_specialization(motivic_compact_series(c, g, nmax)) == compact_top_series(c, g, nmax));
    }
  }

  TEST_CASE("small-b series of the cusp in degree T^0") {
    // (1 - u)^{-1} sum_n #modules(n) u^n
    const CurveGerm cusp = CurveGerm::make(2, 3);
    const Series z = small_b_series(default_compact_model(cusp), cusp, 8);
    const std::vector<int> expected = {1, 2, 4, 6, 8, 10, 12, 14, 16};
    for (int n = 0; n <= 8; ++n) CHECK(z.coeff(MonomialKey::of(Var::u, n)) == expected[static_cast<std::size_t>(n)]);
  }

  TEST_CASE("Gopakumar-Vafa table of the cuspidal cubic") {
    // (1 - u)^2 Z = (1 - u) [(1 + T) + u (1 + T)^2 + u^2 (2 + 3T + T^2)/(1 - u)]
    //             = 1 + u^2 + T (1 + u + u^2) + T^2 u
    const CurveGerm cusp = CurveGerm::make(2, 3);
    const GvTable t = gv_expand(small_b_series(default_compact_model(cusp), cusp, 10));
    const std::map<std::pair<std::int64_t, std::int64_t>, Rational> expected = {
        {{0, 0}, 1}, {{0, 2}, 1}, {{1, 0}, 1}, {{1, 1}, 1}, {{1, 2}, 1}, {{2, 1}, 1}};
    CHECK(t.values == expected);
    for (const auto& [r, finite] : t.finite) CHECK(finite);
    CHECK_THROWS_AS(gv_expand(Series::var(Var::u)), HilbError);
  }
}
