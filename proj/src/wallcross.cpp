#include "oslab/wallcross.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oslab {

namespace {

Rational inverse_factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(Integer(1), f);
}

// Visits every nonempty ordered tuple (r_i, n_i) with r_i >= 1, sum r_i <=
// rbudget and n_i drawn from choices(r_i), reporting (sum r, sum n, length,
// prod n_i N(r_i, n_i)).
using TupleVisitor = std::function<void(int, long, int, const Rational&)>;
using NChoices = std::function<std::vector<long>(int, long)>;  // (r_i, n budget) -> n_i

void visit_tuples(int rbudget, long nbudget, const NChoices& choices, const InvariantTable& dt, int rsum,
                  long nsum, int length, const Rational& weight, const TupleVisitor& visit) {
  for (int ri = 1; ri <= rbudget; ++ri) {
    for (long ni : choices(ri, nbudget)) {
      const Rational w = weight * ni * dt.at(ri, ni);
      if (w == 0) continue;
      visit(rsum + ri, nsum + ni, length + 1, w);
      visit_tuples(rbudget - ri, nbudget - ni, choices, dt, rsum + ri, nsum + ni, length + 1, w, visit);
    }
  }
}

}  // namespace

WallSpec critical_values(int r, long n, const Rational& b_lo, const Rational& b_hi) {
  WallSpec spec{r, n, {}};
  if (r <= 0 || b_lo >= b_hi) return spec;
  std::set<Rational> walls;
  for (int rp = 1; rp <= r; ++rp) {
    // -n'/(2 rp) in (b_lo, b_hi)  <=>  -2 rp b_hi < n' < -2 rp b_lo
    const Rational lo = -2 * rp * b_hi;
    const Rational hi = -2 * rp * b_lo;
    Integer start;
    mpz_fdiv_q(start.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    for (Integer np = start; np <= hi; ++np) {
      Rational value(-np, Integer(2 * rp));
      value.canonicalize();
      if (value > b_lo && value < b_hi) walls.insert(value);
    }
  }
  spec.walls.assign(walls.begin(), walls.end());
  return spec;
}

Rational dt_invariant(int r, long n) {
  if (r <= 0) throw WallcrossError("dt_invariant needs r >= 1");
  if (n % r != 0) return 0;
  return Rational(r % 2 == 1 ? 1 : -1, r * r);
}

std::string role_name(TableRole role) {
  switch (role) {
    case TableRole::p_minus_infinity: return "P_minus_infinity";
    case TableRole::p_zero_plus: return "P_zero_plus";
    case TableRole::p_intermediate: return "P_intermediate";
    case TableRole::n_dt: return "N_dt";
  }
  return "unknown";
}

InvariantTable::InvariantTable(TableRole role, int rmax, long floor, long nmax)
    : role_(role), rmax_(rmax), floor_(floor), nmax_(nmax) {
  if (rmax < 0) throw WallcrossError("rmax must be nonnegative");
}

Rational InvariantTable::at(int r, long n) const {
  if (r < 0 || r > rmax_ || n > nmax_)
    throw WallcrossError(role_name(role_) + " table has no entry (" + std::to_string(r) + ", " + std::to_string(n) + ")");
  if (n < floor_) return 0;
  auto it = values_.find({r, n});
  return it == values_.end() ? Rational(0) : it->second;
}

void InvariantTable::set(int r, long n, const Rational& value) {
  if (r < 0 || r > rmax_ || n > nmax_ || n < floor_)
    throw WallcrossError("table entry (" + std::to_string(r) + ", " + std::to_string(n) + ") outside the table");
  if (role_ == TableRole::n_dt && r > 0 && n % r != 0 && value != 0)
    throw WallcrossError("DT entries vanish unless r divides n");
  if (value == 0)
    values_.erase({r, n});
  else
    values_[{r, n}] = value;
}

bool InvariantTable::integral() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& kv) { return kv.second.get_den() == 1; });
}

Series InvariantTable::to_series() const {
  Series s(make_caps({{Var::T, rmax_}, {Var::u, nmax_}}));
  for (const auto& [rn, v] : values_) {
    MonomialKey k;
    k[Var::T] = rn.first;
    k[Var::u] = rn.second;
    s.add_term(k, v);
  }
  return s;
}

InvariantTable dt_table(int rmax, long nmax) {
  InvariantTable t(TableRole::n_dt, rmax, -nmax, nmax);
  for (int r = 1; r <= rmax; ++r)
    for (long n = -nmax; n <= nmax; ++n) t.set(r, n, dt_invariant(r, n));
  return t;
}

Series conifold_series(int tmax, int umax) {
  std::vector<PowerFactor> factors;
  for (int k = 1; k <= umax; ++k) factors.push_back({MonomialKey::of(Var::T) * MonomialKey::of(Var::u, k), 1, k});
  return power_product(factors, make_caps({{Var::T, tmax}, {Var::u, umax}}));
}

Series dt_exponential(int tmax, int umax, ConifoldSign sign) {
  Series exponent(make_caps({{Var::T, tmax}, {Var::u, umax}}));
  for (int r = 1; r <= tmax; ++r)
    for (long n = 1; n <= umax; ++n) {
      Rational c = dt_invariant(r, n) * n;
      if (sign == ConifoldSign::alternating && n % 2 == 1) c = -c;
      MonomialKey k;
      k[Var::T] = r;
      k[Var::u] = n;
      exponent.add_term(k, c);
    }
  return series_exp(exponent);
}

ExpIdentityReport exp_identity_check(int tmax, int umax, ConifoldSign sign) {
  ExpIdentityReport report{dt_exponential(tmax, umax, sign), conifold_series(tmax, umax), {}};
  std::set<MonomialKey> keys;
  for (const auto& [k, c] : report.lhs.terms()) keys.insert(k);
  for (const auto& [k, c] : report.rhs.terms()) keys.insert(k);
  for (const auto& k : keys)
    if (report.lhs.coeff(k) != report.rhs.coeff(k)) report.mismatches.push_back(k);
  return report;
}

Rational wall_jump(const InvariantTable& before, const Rational& b_c, const InvariantTable& dt, int r, long n) {
  const Rational slope = -2 * b_c;
  // Parts with n_i above the budget would push P_{b+} below its floor.
  const NChoices on_wall = [&](int ri, long budget) -> std::vector<long> {
    const Rational ni = slope * ri;
    if (ni.get_den() != 1 || ni > budget) return {};
    return {ni.get_num().get_si()};
  };
  Rational jump = 0;
  visit_tuples(r, n - before.floor(), on_wall, dt, 0, 0, 0, Rational(1), [&](int rs, long ns, int len, const Rational& w) {
    jump += inverse_factorial(len) * w * before.at(r - rs, n - ns);
  });
  return jump;
}

InvariantTable resummed_jump(const InvariantTable& p0minus, int rmax, long nmax) {
  if (p0minus.rmax() < rmax || p0minus.nmax() < nmax) throw WallcrossError("insufficient table range");
  const long floor = p0minus.floor();
  const InvariantTable dt = dt_table(rmax, std::max<long>(nmax - floor, 1));
  InvariantTable out(TableRole::p_minus_infinity, rmax, floor, nmax);
  const NChoices positive = [](int, long budget) {
    std::vector<long> ns;
    for (long ni = 1; ni <= budget; ++ni) ns.push_back(ni);
    return ns;
  };
  for (int r = 0; r <= rmax; ++r) {
    for (long n = floor; n <= nmax; ++n) {
      Rational value = p0minus.at(r, n);
      visit_tuples(r, n - floor, positive, dt, 0, 0, 0, Rational(1), [&](int rs, long ns, int len, const Rational& w) {
        value += inverse_factorial(len) * w * p0minus.at(r - rs, n - ns);
      });
      out.set(r, n, value);
    }
  }
  return out;
}

InvariantTable iterate_walls(const InvariantTable& p0minus, int rmax, long nmax) {
  if (p0minus.rmax() < rmax || p0minus.nmax() < nmax) throw WallcrossError("insufficient table range");
  const long floor = p0minus.floor();
  // Slopes n_i / r_i never exceed nmax - floor, so every wall that matters
  // lies in (-(nmax - floor)/2 - 1, 0).
  Rational b_lo(-(nmax - floor), 2);
  b_lo.canonicalize();
  b_lo -= 1;
  const WallSpec spec = critical_values(rmax, nmax, b_lo, Rational(0));
  const InvariantTable dt = dt_table(rmax, std::max<long>(nmax - floor, 1));

  InvariantTable current(TableRole::p_intermediate, rmax, floor, nmax);
  for (int r = 0; r <= rmax; ++r)
    for (long n = floor; n <= nmax; ++n) current.set(r, n, p0minus.at(r, n));
  for (auto it = spec.walls.rbegin(); it != spec.walls.rend(); ++it) {
    InvariantTable next(TableRole::p_intermediate, rmax, floor, nmax);
    for (int r = 0; r <= rmax; ++r)
      for (long n = floor; n <= nmax; ++n) next.set(r, n, current.at(r, n) + wall_jump(current, *it, dt, r, n));
    current = std::move(next);
  }
  InvariantTable out(TableRole::p_minus_infinity, rmax, floor, nmax);
  for (const auto& [rn, v] : current.values()) out.set(rn.first, rn.second, v);
  return out;
}

InvariantTable small_b_table(const CompactCurveData& curve, const CurveGerm& germ, int rmax, long nmax,
                             unsigned threads) {
  InvariantTable t(TableRole::p_zero_plus, rmax, curve.chi_OC, nmax);
  if (nmax < curve.chi_OC) return t;
  const Series z = small_b_series(curve, germ, static_cast<int>(nmax), threads);
  for (const auto& [k, c] : z.terms())
    if (k[Var::T] <= rmax) t.set(static_cast<int>(k[Var::T]), k[Var::u], c);
  return t;
}

FactorizationReport factorization_check(const CurveGerm& germ, const CompactCurveData& curve, int rmax, long nmax,
                                        ConifoldSign sign, unsigned threads) {
  const long floor = curve.chi_OC;
  InvariantTable p0 = small_b_table(curve, germ, rmax, nmax, threads);
  InvariantTable pinf = resummed_jump(p0, rmax, nmax);
  FactorizationReport report{p0, pinf, pinf.to_series(), {}, {}, {}, pinf.integral(), false, false};

  // The conifold factor must reach u^{nmax - floor} when the floor is negative.
  const auto umax = static_cast<int>(nmax - std::min<long>(floor, 0));
  const Series conifold =
      sign == ConifoldSign::plain ? conifold_series(rmax, umax) : dt_exponential(rmax, umax, ConifoldSign::alternating);
  report.conifold_times_small_b = (conifold * p0.to_series()).truncated(Var::u, nmax);
  report.product_match = report.z_minus_infinity == report.conifold_times_small_b;

  const Caps target = make_caps({{Var::a, 2 * static_cast<std::int64_t>(rmax)}, {Var::q, 2 * nmax}});
  const SubstitutionRules rules{{Var::T, {-1, MonomialKey::of(Var::a, 2)}}, {Var::u, {1, MonomialKey::of(Var::q, 2)}}};
  report.composite_lhs = series_substitute(report.z_minus_infinity, rules, target);

  const Series conifold_aq = series_substitute(
      conifold, rules, make_caps({{Var::a, 2 * static_cast<std::int64_t>(rmax)}, {Var::q, 2 * static_cast<std::int64_t>(umax)}}));
  const Series ztop = compact_top_series(curve, germ, static_cast<int>(std::max<long>(nmax - floor, 0)), threads);
  Series shifted;
  for (const auto& [k, c] : ztop.terms()) shifted.add_term(k * MonomialKey::of(Var::q, 2 * floor), c);
  report.composite_rhs = (conifold_aq * shifted).truncated(target);
  report.composite_match = report.composite_lhs == report.composite_rhs;
  return report;
}

nlohmann::json to_json(const InvariantTable& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (int r = 0; r <= t.rmax(); ++r)
    for (long n = std::max(t.floor(), -t.nmax()); n <= t.nmax(); ++n)
      entries.push_back({{"r", r}, {"n", n}, {"value", rational_to_string(t.at(r, n))}});
  return {{"role", role_name(t.role())},
          {"rmax", t.rmax()},
          {"floor", t.floor()},
          {"nmax", t.nmax()},
          {"entries", entries}};
}

}  // namespace oslab
