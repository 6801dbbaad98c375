#pragma once

// The four-node quiver with potential attached to local P^2: arrow-space and
// gauge-group dimensions, dimension vectors of framed sheaves, the motivic
// weight exponent audit, and the small-b motivic substitution identity.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "oslab/hilbseries.hpp"
#include "oslab/ring.hpp"

namespace oslab {

class QuiverError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Arrow {
  std::string name;
  int source = 1;  // nodes are 1..4
  int target = 1;
  bool left = false;
};

/// One signed cyclic word; arrows listed left to right and composed right to
/// left, so the last arrow acts first.
struct PotentialTerm {
  int sign = 1;
  std::vector<std::string> word;
};

struct QuiverPresentation {
  std::vector<Arrow> arrows;
  std::vector<PotentialTerm> potential;

  /// a1,a2,a3: 1->2; b1,b2: 2->3; b3: 2->4; c: 3->4; r: 3->1; s1,s2: 4->1,
  /// with W = r(b1a2 - b2a1) + s1(cb1a3 - b3a1) + s2(cb2a3 - b3a2).
  static QuiverPresentation local_p2();

  const Arrow& arrow(const std::string& name) const;
  /// True when every potential term is a closed path.
  bool potential_is_cyclic() const;
  /// Names of terms that fail to close up.
  std::vector<std::string> broken_terms() const;
};

struct DimVector {
  std::array<long, 4> v{};

  /// Throws QuiverError on a negative component.
  static DimVector make(long v1, long v2, long v3, long v4);
  long operator[](int node) const { return v[static_cast<std::size_t>(node - 1)]; }
  bool operator==(const DimVector&) const = default;
};

struct QuiverDims {
  long dimA = 0;
  long dimAr = 0;
  long dimAl = 0;
  long dimG = 0;
  bool operator==(const QuiverDims&) const = default;
};

QuiverDims dims(const DimVector& v, const QuiverPresentation& quiver = QuiverPresentation::local_p2());

/// Symmetric pairing dims(v + w) - dims(v) - dims(w) predicted arrow by arrow:
/// sum over arrows of v_s w_t + w_s v_t, and 2 sum v_i w_i for the gauge group.
QuiverDims dims_pairing(const DimVector& v, const DimVector& w,
                        const QuiverPresentation& quiver = QuiverPresentation::local_p2());

/// (2k - chi, k - chi, -chi, -chi).
DimVector v_of_sheaf(long k, long chi);
/// ((N+2)k - n, (N+1)k - n, Nk - n + r, Nk - n).
DimVector v_framed(long k, long n, long N, long r);

/// Candidate readings of the weight exponent at v_F, each compared with
/// (r^2 - k^2)/2.
enum class Reading { half_gauge_minus_arrows_plus_half_left, half_gauge_minus_arrows_plus_left, half_gauge_minus_right,
                     literal };
inline constexpr std::array<Reading, 4> kAllReadings = {
    Reading::half_gauge_minus_arrows_plus_half_left, Reading::half_gauge_minus_arrows_plus_left,
    Reading::half_gauge_minus_right, Reading::literal};
std::string reading_formula(Reading r);
Rational evaluate_reading(Reading r, const QuiverDims& d);

struct AuditRow {
  long k = 0;
  long r = 0;
  long n = 0;
  long N = 0;
  DimVector v;
  QuiverDims d;
  Rational target;                  // (r^2 - k^2)/2
  std::map<Reading, Rational> values;
  bool matches(Reading reading) const { return values.at(reading) == target; }
};

/// Throws QuiverError when v_framed(k, n, N, r) has a negative component.
AuditRow exponent_audit(long k, long r, long n, long N);

struct AuditReport {
  long kmax = 0;
  long rmax = 0;
  long nmax = 0;
  long Nmax = 0;
  std::vector<AuditRow> rows;
  std::map<Reading, long> matches;
  bool dims_additive = true;  // dimA = dimAr + dimAl on every row

  std::vector<Reading> readings_holding_everywhere() const;
  std::string markdown() const;
  nlohmann::json json() const;
};

/// Grid 1 <= k <= kmax, 0 <= r <= rmax, 0 <= N <= Nmax and |n| <= nmax,
/// keeping n <= Nk so that v_framed stays nonnegative.
AuditReport exponent_audit_grid(long kmax, long rmax, long nmax, long Nmax);

/// [Q^{[l, r]}(C)] as a polynomial in Lhalf (L = Lhalf^2).
using QuotMotives = std::map<std::pair<int, int>, Series>;

/// Motives from the finite-field nested-pair counts at the singular point and
/// the symmetric products of C minus p.
QuotMotives oracle_quot_motives(const CurveGerm& germ, const CompactCurveData& curve, int lmax, int rmax);

struct MotivicAssembly {
  Series z0plus;     // in u, T, Lhalf
  Series lhs;        // after u -> q^2 Lhalf, T -> a^2
  Series rhs;        // Lhalf^{1-k^2} q^{2 chi(O_C)} Z^mot_C
  bool cancellation = false;  // Lhalf exponents independent of l after substitution
  bool passed() const { return cancellation && lhs == rhs; }
};

MotivicAssembly motivic_smallb_assemble(const CurveGerm& germ, const CompactCurveData& curve, int rmax, int lmax,
                                        const QuotMotives& quot_motives);

}  // namespace oslab
