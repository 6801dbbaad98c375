#pragma once

// Hilbert-scheme generating functions of the germ x^p = y^q and of compact
// rational curves carrying it: local, global, refined and motivic series.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oslab/braid.hpp"
#include "oslab/ring.hpp"
#include "oslab/semimodule.hpp"

namespace oslab {

class HilbError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One graded piece of compactly supported cohomology: degree k, weight w,
/// rank h.
struct HodgeEntry {
  int k = 0;
  int w = 0;
  int h = 1;
  bool operator==(const HodgeEntry&) const = default;
};

struct HodgeData {
  std::vector<HodgeEntry> entries;

  /// Validates k, w >= 0, h >= 1 and uniqueness of (k, w).
  static HodgeData make(std::vector<HodgeEntry> entries);
  static HodgeData point() { return make({{0, 0, 1}}); }
  static HodgeData affine_line() { return make({{2, 2, 1}}); }
  static HodgeData punctured_line() { return make({{1, 0, 1}, {2, 2, 1}}); }
  /// A smooth projective curve of genus g.
  static HodgeData smooth_curve(int genus);

  long euler() const;
  bool operator==(const HodgeData&) const = default;
};

/// Reduced irreducible plane curve C of degree k with a single singular
/// point p.
struct CompactCurveData {
  int degree = 1;
  long chi_OC = 1;
  long chi_top = 2;
  HodgeData hodge_punctured;  // C minus p

  /// Rational curve whose only singularity is the given unibranch germ.
  /// Requires delta = (k-1)(k-2)/2.
  static CompactCurveData rational_unibranch(int degree, const CurveGerm& germ);
  /// 1 - (k-1)(k-2)/2, the arithmetic-genus value of chi(O_C).
  long chi_OC_from_degree() const;
};

/// The degree-k rational model used by default: the smallest k with
/// (k-1)(k-2)/2 = delta.  Throws if delta is not triangular.
CompactCurveData default_compact_model(const CurveGerm& germ);

/// sum over modules of colength <= nmax of q^{2n} (1 - a^2)^m, capped at q^{2 nmax}.
Series local_top_series(const CurveGerm& germ, int nmax, unsigned threads = 0);
/// Same sum from a precomputed module list.
Series local_top_series(const std::vector<GammaModule>& modules, int nmax);

struct CoefficientCheck {
  std::int64_t a_exp = 0;
  std::int64_t q_exp = 0;
  Rational knot_side;
  Rational hilbert_side;
  bool match() const { return knot_side == hilbert_side; }
};

struct OsReport {
  int p = 0;
  int q = 0;
  std::int64_t order = 0;
  long mu_used = 0;
  std::vector<CoefficientCheck> coefficients;  // union of supports through q^order
  bool passed() const;
  std::size_t mismatches() const;
};

/// Compares the q-expansion of the HOMFLY polynomial of the germ's link with
/// (a/q)^{mu-1} times the local series through q^order.  `mu_override`
/// replaces the Milnor number (negative controls).
OsReport os_verify(int p, int q, std::int64_t order, std::optional<long> mu_override = std::nullopt,
                   unsigned threads = 0);

/// Exact identity for a smooth germ (1, k): HOMFLY of the closure of
/// sigma_1 ... sigma_{k-1} equals (a/q)^{-1} (1 - a^2) / (1 - q^2), checked by
/// cross-multiplication.
bool os_smooth_closed_form(int k);

/// Gaussian binomial [s, r] in y^2 (a series in y).
Series gaussian(int s, int r);

enum class RefinedBackend { euler, pointcount };
std::optional<RefinedBackend> parse_backend(const std::string& name);
inline constexpr int kPointcountBackendMaxN = 4;

/// sum q^{2l} a^{2r} y^{r^2} P_y(H^{[l,r]}) with P_y(H^{[l,r]}) assembled
/// from strata S^l_s and Grassmannians Gr(s, r).  The euler backend evaluates
/// at y = -1 (no y in the output).
Series refined_local_series(const CurveGerm& germ, int nmax, RefinedBackend backend, unsigned threads = 0);

/// sum_n q^{2n} P_y(S^n X) as a product over entries of
/// (1 - (-y)^w q^2)^{-(-1)^k h}, capped at q^{2 cap}.
Series symmetric_product_series(const HodgeData& h, int cap);

/// (1 - q^2)^{1 - chi} times the local series.
Series global_top_series(const CurveGerm& germ, int nmax, long chi, unsigned threads = 0);
/// chi of the affine curve x^p = y^q (homeomorphic to C).
inline constexpr long kAffineGermChi = 1;

/// sum q^{2n} a^{2r} L^{r^2/2} [H^{[n,r]}(C)], with classes as polynomials in
/// L = Lhalf^2.  Only the pointcount backend carries motivic information.
Series motivic_compact_series(const CompactCurveData& curve, const CurveGerm& germ, int nmax);

/// Lhalf -> 1 and a^2 -> -a^2.
Series euler_specialization(const Series& motivic);

/// Compact series Z_C^top(q, a) = (1 - q^2)^{1 - chi(C)} Z_{C,p}.
Series compact_top_series(const CompactCurveData& curve, const CurveGerm& germ, int nmax, unsigned threads = 0);

/// Z_{0+}(u, T) = u^{chi(O_C)} (1 - u)^{1 - chi(C)} sum u^n (1 + T)^m, capped
/// at u^{ucap}.
Series small_b_series(const CompactCurveData& curve, const CurveGerm& germ, int ucap, unsigned threads = 0);

/// Grassmannian-fibration assembly sum q^{2l} T^r sum_s C(s, r) #S^l_s versus
/// the direct sum q^{2n} (1 + T)^m; both capped at q^{2 nmax}, T^{rmax}.
struct TwoPathReport {
  Series fibration;
  Series direct;
  bool passed() const { return fibration == direct; }
};
TwoPathReport smallb_two_path(const CurveGerm& germ, int nmax, int rmax, unsigned threads = 0);

struct GvTable {
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> values;  // (r, p) -> N_r^p
  std::map<std::int64_t, bool> finite;  // r -> polynomial within the u cap
  std::int64_t ucap = 0;
};
/// Coefficients of (1 - u)^2 Z per power of T.
GvTable gv_expand(const Series& z0plus);

nlohmann::json to_json(const OsReport& r);
nlohmann::json to_json(const GvTable& t);

}  // namespace oslab
