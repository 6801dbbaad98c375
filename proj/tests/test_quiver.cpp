#include <doctest.h>

#include "oslab/quiver.hpp"
#include "support.hpp"

using namespace oslab;

TEST_SUITE("quiver") {
  TEST_CASE("the potential consists of closed paths") {
    const QuiverPresentation q = QuiverPresentation::local_p2();
    CHECK(q.arrows.size() == 10);
    CHECK(q.potential.size() == 6);
    CHECK(q.potential_is_cyclic());
    CHECK(q.broken_terms().empty());
    CHECK(q.arrow("b3").target == 4);
    CHECK_THROWS_AS(q.arrow("d"), QuiverError);
  }

  TEST_CASE("b3 ending at node 3 breaks two terms") {
    QuiverPresentation q = QuiverPresentation::local_p2();
    for (auto& a : q.arrows)
      if (a.name == "b3") a.target = 3;
    CHECK(q.broken_terms() == std::vector<std::string>{"s1b3a1", "s2b3a2"});
  }

  TEST_CASE("dimensions at hand-checked vectors") {
    // Ar = 3 v1 v2 + 2 v2 v3 + v2 v4 + v3 v4, Al = v3 v1 + 2 v4 v1
    CHECK(dims(DimVector::make(1, 1, 1, 1)) == QuiverDims{10, 7, 3, 4});
    CHECK(dims(DimVector::make(2, 1, 0, 3)) == QuiverDims{6 + 3 + 12, 6 + 3, 12, 14});
    CHECK(dims(DimVector::make(0, 0, 0, 0)) == QuiverDims{});
    CHECK_THROWS_AS(DimVector::make(1, -1, 0, 0), QuiverError);
  }

  TEST_CASE("sheaf and framed dimension vectors") {
    CHECK(v_of_sheaf(1, -1) == DimVector::make(3, 2, 1, 1));
    CHECK(v_framed(1, 0, 1, 0) == DimVector::make(3, 2, 1, 1));
    CHECK(v_framed(2, 1, 1, 3) == DimVector::make(5, 3, 4, 1));
    CHECK_THROWS_AS(v_framed(1, 3, 1, 0), QuiverError);
  }

  TEST_CASE("dims are additive and quadratic on seeded vectors") {
    std::mt19937_64 rng(testing::test_seed() + 20);
    std::uniform_int_distribution<long> d(0, 6);
    for (int i = 0; i < 200; ++i) {
      const DimVector v = DimVector::make(d(rng), d(rng), d(rng), d(rng));
      const DimVector w = DimVector::make(d(rng), d(rng), d(rng), d(rng));
      const DimVector sum = DimVector::make(v[1] + w[1], v[2] + w[2], v[3] + w[3], v[4] + w[4]);
      const QuiverDims a = dims(v), b = dims(w), s = dims(sum), pair = dims_pairing(v, w);
      CHECK(a.dimA == a.dimAr + a.dimAl);
      CHECK(s.dimA - a.dimA - b.dimA == pair.dimA);
      CHECK(s.dimAr - a.dimAr - b.dimAr == pair.dimAr);
      CHECK(s.dimAl - a.dimAl - b.dimAl == pair.dimAl);
      CHECK(s.dimG - a.dimG - b.dimG == pair.dimG);
      const QuiverDims twice = dims_pairing(v, v);
      CHECK(twice.dimA == 2 * a.dimA);
      CHECK(twice.dimG == 2 * a.dimG);
    }
  }

  TEST_CASE("audit of single points") {
    const AuditRow row = exponent_audit(1, 1, 0, 1);
    CHECK(row.v == DimVector::make(3, 2, 2, 1));
    CHECK(row.target == 0);
    CHECK(row.matches(Reading::half_gauge_minus_arrows_plus_left));
    const AuditRow other = exponent_audit(2, 0, -1, 2);
    CHECK(other.target == -2);
    CHECK(other.matches(Reading::half_gauge_minus_arrows_plus_left));
    CHECK_FALSE(other.matches(Reading::literal));
  }

  TEST_CASE("audit grid singles out one reading") {
    const AuditReport rep = exponent_audit_grid(2, 2, 2, 2);
    CHECK(rep.dims_additive);
    CHECK(rep.readings_holding_everywhere() == std::vector<Reading>{Reading::half_gauge_minus_arrows_plus_left});
    for (const auto& row : rep.rows) {
      CHECK(row.v[4] >= 0);
      CHECK(row.d.dimG - row.d.dimAr + row.d.dimAl == row.r * row.r - row.k * row.k);
    }
    const std::string md = rep.markdown();
    CHECK(md.find("`(G - A)/2 + Al`") != std::string::npos);
    CHECK(rep.json().at("points").size() == rep.rows.size());
  }

  TEST_CASE("motivic substitution for the cusp at small caps") {
    const CurveGerm cusp = CurveGerm::make(2, 3);
    const CompactCurveData cubic = default_compact_model(cusp);
    const QuotMotives motives = oracle_quot_motives(cusp, cubic, 1, 1);
    CHECK(motives.at({0, 0}).constant_term() == 1);
    const MotivicAssembly m = motivic_smallb_assemble(cusp, cubic, 1, 1, motives);
    CHECK(m.cancellation);
    CHECK(m.passed());
  }

  TEST_CASE("corrupted motives fail the assembly") {
    const CurveGerm cusp = CurveGerm::make(2, 3);
    const CompactCurveData cubic = default_compact_model(cusp);
    QuotMotives motives = oracle_quot_motives(cusp, cubic, 1, 1);
    motives[{1, 1}] += Series::var(Var::Lhalf, 2);
    CHECK_FALSE(motivic_smallb_assemble(cusp, cubic, 1, 1, motives).passed());
  }
}
