#pragma once

// Framed stable-pair invariants across walls in the B-field parameter b, the
// conifold DT invariants N(r, n) and the factorization of the b -> -infinity
// series.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oslab/hilbseries.hpp"
#include "oslab/ring.hpp"
#include "oslab/semimodule.hpp"

namespace oslab {

class WallcrossError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WallSpec {
  int r = 0;
  long n = 0;
  std::vector<Rational> walls;  // strictly increasing
};

/// All -n'/(2r') with 1 <= r' <= r strictly inside (b_lo, b_hi).
WallSpec critical_values(int r, long n, const Rational& b_lo, const Rational& b_hi);

/// (-1)^{r-1} / r^2 when r divides n, else 0.
Rational dt_invariant(int r, long n);

enum class TableRole { p_minus_infinity, p_zero_plus, p_intermediate, n_dt };
std::string role_name(TableRole role);

/// Values on r in [0, rmax], n in [floor, nmax]; entries below the floor are
/// zero, entries beyond rmax or nmax are out of range.
class InvariantTable {
 public:
  InvariantTable(TableRole role, int rmax, long floor, long nmax);

  TableRole role() const { return role_; }
  int rmax() const { return rmax_; }
  long floor() const { return floor_; }
  long nmax() const { return nmax_; }

  /// Throws WallcrossError outside the populated range (below the floor is 0).
  Rational at(int r, long n) const;
  void set(int r, long n, const Rational& value);
  const std::map<std::pair<int, long>, Rational>& values() const { return values_; }

  bool integral() const;
  /// sum value T^r u^n, capped at T^rmax u^nmax.
  Series to_series() const;
  bool same_values(const InvariantTable& rhs) const { return values_ == rhs.values_; }

 private:
  TableRole role_;
  int rmax_;
  long floor_;
  long nmax_;
  std::map<std::pair<int, long>, Rational> values_;  // nonzero entries only
};

InvariantTable dt_table(int rmax, long nmax);

/// prod_{k >= 1} (1 + T u^k)^k through T^tmax u^umax.
Series conifold_series(int tmax, int umax);

enum class ConifoldSign { plain, alternating };

/// exp(sum_{r, n > 0} s(n) n N(r, n) T^r u^n) with s(n) = 1 or (-1)^n.
Series dt_exponential(int tmax, int umax, ConifoldSign sign);

struct ExpIdentityReport {
  Series lhs;
  Series rhs;
  std::vector<MonomialKey> mismatches;
  bool passed() const { return mismatches.empty(); }
};
ExpIdentityReport exp_identity_check(int tmax, int umax, ConifoldSign sign = ConifoldSign::plain);

/// P_{b-}(r, n) - P_{b+}(r, n) at the wall b_c, as a finite sum over
/// decompositions with slope n_i / r_i = -2 b_c.
Rational wall_jump(const InvariantTable& before, const Rational& b_c, const InvariantTable& dt, int r, long n);

/// P_{-infinity} from P_{0-} by the summed formula (all positive slopes).
InvariantTable resummed_jump(const InvariantTable& p0minus, int rmax, long nmax);

/// P_{-infinity} from P_{0-} by crossing every wall, nearest to 0 first.
InvariantTable iterate_walls(const InvariantTable& p0minus, int rmax, long nmax);

/// P_{0+}(r, n) read off the small-b series; floor chi(O_C).
InvariantTable small_b_table(const CompactCurveData& curve, const CurveGerm& germ, int rmax, long nmax,
                             unsigned threads = 0);

struct FactorizationReport {
  InvariantTable p0plus;
  InvariantTable pminus;
  Series z_minus_infinity;
  Series conifold_times_small_b;
  Series composite_lhs;  // Z_{-inf}(T -> -a^2, u -> q^2)
  Series composite_rhs;  // conifold(T -> -a^2, u -> q^2) q^{2 chi(O_C)} Z_C^top
  bool integral = false;
  bool product_match = false;
  bool composite_match = false;
  bool passed() const { return integral && product_match && composite_match; }
};

/// `sign` selects the conifold factor used on the right-hand sides; the
/// alternating choice is a negative control.
FactorizationReport factorization_check(const CurveGerm& germ, const CompactCurveData& curve, int rmax, long nmax,
                                        ConifoldSign sign = ConifoldSign::plain, unsigned threads = 0);

nlohmann::json to_json(const InvariantTable& t);

}  // namespace oslab
