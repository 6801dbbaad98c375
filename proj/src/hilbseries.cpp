#include "oslab/hilbseries.hpp"

#include <algorithm>
#include <set>

#include "oslab/pointcount.hpp"

namespace oslab {

namespace {

MonomialKey mono(std::initializer_list<std::pair<Var, std::int64_t>> exps) {
  MonomialKey k;
  for (const auto& [v, e] : exps) k[v] = e;
  return k;
}

// Copies the terms of s under new caps; the caller vouches that s is complete
// within them.
Series with_caps(const Series& s, const Caps& caps) {
  Series out(caps);
  for (const auto& [k, c] : s.terms()) out.add_term(k, c);
  return out;
}

// (1 + sign * x)^m as an exact polynomial.
Series binomial_power(const MonomialKey& x, int sign, int m) {
  Series out;
  Integer c = 1;
  for (int j = 0; j <= m; ++j) {
    Rational coef(c);
    if (sign < 0 && j % 2 == 1) coef = -coef;
    out.add_term(x.pow(j), coef);
    c = c * (m - j) / (j + 1);
  }
  return out;
}

Rational evaluate_at_minus_one(const Series& s, Var v) {
  Rational acc = 0;
  for (const auto& [k, c] : s.terms()) acc += (k[v] % 2 == 0) ? c : Rational(-c);
  return acc;
}

// (1 - q^2)^exponent through q^cap.
Series one_minus_q2_power(const Rational& exponent, std::int64_t cap) {
  return power_product({{MonomialKey::of(Var::q, 2), -1, exponent}}, make_caps({{Var::q, cap}}));
}

}  // namespace

HodgeData HodgeData::make(std::vector<HodgeEntry> entries) {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : entries) {
    if (e.k < 0 || e.w < 0 || e.h < 1) throw HilbError("Hodge entries need k, w >= 0 and h >= 1");
    if (!seen.insert({e.k, e.w}).second) throw HilbError("duplicate Hodge entry (k, w)");
  }
  std::sort(entries.begin(), entries.end(),
            [](const HodgeEntry& x, const HodgeEntry& y) { return std::pair(x.k, x.w) < std::pair(y.k, y.w); });
  return HodgeData{std::move(entries)};
}

HodgeData HodgeData::smooth_curve(int genus) {
  if (genus < 0) throw HilbError("genus must be nonnegative");
  std::vector<HodgeEntry> e{{0, 0, 1}, {2, 2, 1}};
  if (genus > 0) e.push_back({1, 1, 2 * genus});
  return make(std::move(e));
}

long HodgeData::euler() const {
  long chi = 0;
  for (const auto& e : entries) chi += (e.k % 2 == 0 ? 1 : -1) * e.h;
  return chi;
}

CompactCurveData CompactCurveData::rational_unibranch(int degree, const CurveGerm& germ) {
  if (degree < 1) throw HilbError("degree must be positive");
  const long genus = static_cast<long>(degree - 1) * (degree - 2) / 2;
  if (germ.delta() != genus)
    throw HilbError("a rational degree-" + std::to_string(degree) + " curve needs delta = " + std::to_string(genus));
  // C is homeomorphic to P^1 through its normalisation, and C minus p is A^1.
  return CompactCurveData{degree, 1 - genus, 2, HodgeData::affine_line()};
}

long CompactCurveData::chi_OC_from_degree() const {
  return 1 - static_cast<long>(degree - 1) * (degree - 2) / 2;
}

CompactCurveData default_compact_model(const CurveGerm& germ) {
  for (int k = 1; static_cast<long>(k - 1) * (k - 2) / 2 <= germ.delta(); ++k)
    if (static_cast<long>(k - 1) * (k - 2) / 2 == germ.delta()) return CompactCurveData::rational_unibranch(k, germ);
  throw HilbError("no rational plane model: delta = " + std::to_string(germ.delta()) + " is not (k-1)(k-2)/2");
}

Series local_top_series(const std::vector<GammaModule>& modules, int nmax) {
  Series out(make_caps({{Var::q, 2 * static_cast<std::int64_t>(nmax)}}));
  std::map<int, Series> powers;
  for (const auto& d : modules) {
    if (d.colength() > nmax) continue;
    const int m = d.mingens();
    auto it = powers.find(m);
    if (it == powers.end()) it = powers.emplace(m, binomial_power(MonomialKey::of(Var::a, 2), -1, m)).first;
    out += it->second.shifted(MonomialKey::of(Var::q, 2 * d.colength()));
  }
  return out;
}

Series local_top_series(const CurveGerm& germ, int nmax, unsigned threads) {
  return local_top_series(enumerate_modules(germ, nmax, threads), nmax);
}

bool OsReport::passed() const { return !coefficients.empty() && mismatches() == 0; }

std::size_t OsReport::mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(coefficients.begin(), coefficients.end(), [](const CoefficientCheck& c) { return !c.match(); }));
}

OsReport os_verify(int p, int q, std::int64_t order, std::optional<long> mu_override, unsigned threads) {
  const CurveGerm germ = CurveGerm::make(p, q);
  OsReport report;
  report.p = p;
  report.q = q;
  report.order = order;
  report.mu_used = mu_override.value_or(milnor_number(p, q));
  const long shift = report.mu_used - 1;

  // The germ's link, as the mirror of the positive torus braid on min(p, q)
  // strands.
  const BraidWord link = mirror(torus_braid(std::max(p, q), std::min(p, q)));
  const Series knot = expand_q_series(homfly(link), order);

  const auto nmax = static_cast<int>(std::max<std::int64_t>(0, (order + shift + 1) / 2));
  const Series z = local_top_series(germ, nmax, threads);
  Series hilbert;
  for (const auto& [k, c] : z.terms()) hilbert.add_term(k * mono({{Var::a, shift}, {Var::q, -shift}}), c);
  hilbert = hilbert.truncated(Var::q, order);

  std::set<MonomialKey> support;
  for (const auto& [k, c] : knot.terms()) support.insert(k);
  for (const auto& [k, c] : hilbert.terms()) support.insert(k);
  for (const auto& k : support)
    report.coefficients.push_back({k[Var::a], k[Var::q], knot.coeff(k), hilbert.coeff(k)});
  return report;
}

bool os_smooth_closed_form(int k) {
  const BraidWord b = mirror(torus_braid(1, k));
  const HomflyValue h = homfly(b);
  // N / (q - q^{-1})^d == (a/q)^{-1} (1 - a^2) / (1 - q^2)
  //   <=>  a N (1 - q^2) == q (1 - a^2) (q - q^{-1})^d
  const Series one_minus_q2 = Series::constant(1) - Series::var(Var::q, 2);
  const Series lhs = h.numerator.shifted(MonomialKey::of(Var::a, 1)) * one_minus_q2;
  Series rhs = (Series::constant(1) - Series::var(Var::a, 2)).shifted(MonomialKey::of(Var::q, 1));
  const Series z = Series::var(Var::q, 1) - Series::var(Var::q, -1);
  for (int i = 0; i < h.den_power; ++i) rhs = rhs * z;
  // Also the local series itself must be the geometric closed form.
  const Series local = local_top_series(CurveGerm::make(1, k), 8);
  const Series closed = (Series::constant(1) - Series::var(Var::a, 2)) * one_minus_q2_power(-1, 16);
  return lhs == rhs && local == closed;
}

Series gaussian(int s, int r) {
  if (r < 0 || s < 0 || r > s) return Series();
  // [s, r] = [s-1, r-1] + y^{2r} [s-1, r]
  std::vector<std::vector<Series>> table(static_cast<std::size_t>(s) + 1);
  for (int n = 0; n <= s; ++n) {
    table[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    table[static_cast<std::size_t>(n)][0] = Series::constant(1);
    table[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)] = Series::constant(1);
    for (int j = 1; j < n; ++j) {
      const auto& prev = table[static_cast<std::size_t>(n) - 1];
      table[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] =
          prev[static_cast<std::size_t>(j) - 1] + prev[static_cast<std::size_t>(j)].shifted(MonomialKey::of(Var::y, 2 * j));
    }
  }
  return table[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)];
}

std::optional<RefinedBackend> parse_backend(const std::string& name) {
  if (name == "euler") return RefinedBackend::euler;
  if (name == "pointcount") return RefinedBackend::pointcount;
  return std::nullopt;
}

Series refined_local_series(const CurveGerm& germ, int nmax, RefinedBackend backend, unsigned threads) {
  if (backend == RefinedBackend::pointcount && nmax > kPointcountBackendMaxN)
    throw HilbError("pointcount backend supports nmax <= " + std::to_string(kPointcountBackendMaxN));
  const ModuleHistogram hist = module_histogram(enumerate_modules(germ, nmax, threads));
  std::map<std::pair<int, int>, long> strata;  // (l, s) -> count
  for (const auto& [nm, count] : hist) strata[nm] += count;

  const Caps caps = make_caps({{Var::q, 2 * static_cast<std::int64_t>(nmax)}});
  Series out(caps);
  std::map<int, std::map<int, CountPolynomial>> fitted;
  for (const auto& [ls, count] : strata) {
    const auto [l, s] = ls;
    Series motive = Series::constant(count);
    if (backend == RefinedBackend::pointcount) {
      if (!fitted.count(l)) fitted[l] = stratum_polynomials(germ, l);
      auto it = fitted[l].find(s);
      if (it == fitted[l].end()) throw HilbError("finite-field census misses a stratum");
      const CountPolynomial& f = it->second;
      if (!f.verified || !f.integral()) throw HilbError("stratum count is not a verified integral polynomial");
      if (f(1) != count) throw HilbError("stratum polynomial at 1 disagrees with the module count");
      motive = f.as_series(Var::y, 2);
    }
    for (int r = 0; r <= s; ++r) {
      const Series term = motive * gaussian(s, r);
      out += term.shifted(mono({{Var::q, 2 * l}, {Var::a, 2 * r}, {Var::y, static_cast<std::int64_t>(r) * r}}));
    }
  }
  if (backend == RefinedBackend::euler) out = series_substitute(out, {{Var::y, {-1, MonomialKey::one()}}});
  return out;
}

Series symmetric_product_series(const HodgeData& h, int cap) {
  std::vector<PowerFactor> factors;
  for (const auto& e : h.entries) {
    const int sign = e.w % 2 == 0 ? -1 : 1;  // 1 - (-y)^w q^2
    const int exponent = (e.k % 2 == 0 ? -1 : 1) * e.h;
    factors.push_back({mono({{Var::y, e.w}, {Var::q, 2}}), sign, Rational(exponent)});
  }
  return power_product(factors, make_caps({{Var::q, 2 * static_cast<std::int64_t>(cap)}}));
}

Series global_top_series(const CurveGerm& germ, int nmax, long chi, unsigned threads) {
  const std::int64_t cap = 2 * static_cast<std::int64_t>(nmax);
  return one_minus_q2_power(Rational(1 - chi), cap) * local_top_series(germ, nmax, threads);
}

Series compact_top_series(const CompactCurveData& curve, const CurveGerm& germ, int nmax, unsigned threads) {
  return global_top_series(germ, nmax, curve.chi_top, threads);
}

Series motivic_compact_series(const CompactCurveData& curve, const CurveGerm& germ, int nmax) {
  for (const auto& e : curve.hodge_punctured.entries)
    if (e.w % 2 != 0) throw HilbError("odd weights have no polynomial class in L");
  const SubstitutionRules to_motive{{Var::y, {1, MonomialKey::of(Var::Lhalf)}}};
  const Series local = series_substitute(refined_local_series(germ, nmax, RefinedBackend::pointcount), to_motive);
  const Series sym = series_substitute(symmetric_product_series(curve.hodge_punctured, nmax), to_motive);
  return sym * local;
}

Series euler_specialization(const Series& motivic) {
  Series out(motivic.caps());
  for (const auto& [key, coef] : motivic.terms()) {
    MonomialKey k = key;
    Rational c = coef;
    if (k[Var::a] % 2 != 0) throw HilbError("euler specialisation needs even powers of a");
    if ((k[Var::a] / 2) % 2 != 0) c = -c;
    k[Var::Lhalf] = 0;
    out.add_term(k, c);
  }
  return out;
}

Series small_b_series(const CompactCurveData& curve, const CurveGerm& germ, int ucap, unsigned threads) {
  const Caps caps = make_caps({{Var::u, ucap}});
  const std::int64_t nmax = ucap - curve.chi_OC;
  if (nmax < 0) return Series(caps);
  Series sum;
  std::map<int, Series> powers;
  for (const auto& d : enumerate_modules(germ, static_cast<int>(nmax), threads)) {
    const int m = d.mingens();
    auto it = powers.find(m);
    if (it == powers.end()) it = powers.emplace(m, binomial_power(MonomialKey::of(Var::T), 1, m)).first;
    sum += it->second.shifted(MonomialKey::of(Var::u, d.colength()));
  }
  const Series factor = power_product({{MonomialKey::of(Var::u), -1, Rational(1 - curve.chi_top)}},
                                      make_caps({{Var::u, nmax}}));
  const Series product = factor * sum;
  Series shifted;
  for (const auto& [k, c] : product.terms()) shifted.add_term(k * MonomialKey::of(Var::u, curve.chi_OC), c);
  return with_caps(shifted, caps);
}

TwoPathReport smallb_two_path(const CurveGerm& germ, int nmax, int rmax, unsigned threads) {
  const Caps caps = make_caps({{Var::q, 2 * static_cast<std::int64_t>(nmax)}, {Var::T, rmax}});
  const auto modules = enumerate_modules(germ, nmax, threads);
  TwoPathReport report{Series(caps), Series(caps)};
  for (const auto& [nm, count] : module_histogram(modules)) {
    const auto [l, s] = nm;
    for (int r = 0; r <= std::min(s, rmax); ++r) {
      const Rational chi_gr = evaluate_at_minus_one(gaussian(s, r), Var::y);
      report.fibration.add_term(mono({{Var::q, 2 * l}, {Var::T, r}}), chi_gr * count);
    }
  }
  for (const auto& d : modules)
    report.direct += binomial_power(MonomialKey::of(Var::T), 1, d.mingens()).shifted(MonomialKey::of(Var::q, 2 * d.colength()));
  return report;
}

GvTable gv_expand(const Series& z0plus) {
  const auto ucap = z0plus.cap(Var::u);
  if (!ucap) throw HilbError("gv_expand needs a u cap");
  for (const auto& [k, c] : z0plus.terms())
    for (Var v : kAllVars)
      if (v != Var::T && v != Var::u && k[v] != 0) throw HilbError("gv_expand expects a series in T and u");
  const Series one_minus_u_sq = Series::constant(1) - Series::var(Var::u, 1) * Rational(2) + Series::var(Var::u, 2);
  const Series product = one_minus_u_sq * z0plus;
  GvTable table;
  table.ucap = *ucap;
  std::map<std::int64_t, std::int64_t> top;
  for (const auto& [k, c] : product.terms()) {
    table.values[{k[Var::T], k[Var::u]}] = c;
    auto [it, inserted] = top.try_emplace(k[Var::T], k[Var::u]);
    if (!inserted) it->second = std::max(it->second, k[Var::u]);
  }
  for (const auto& [r, deg] : top) table.finite[r] = deg < *ucap;
  return table;
}

nlohmann::json to_json(const OsReport& r) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : r.coefficients)
    coeffs.push_back({{"a", c.a_exp},
                      {"q", c.q_exp},
                      {"knot", rational_to_string(c.knot_side)},
                      {"hilbert", rational_to_string(c.hilbert_side)},
                      {"match", c.match()}});
  return {{"p", r.p},          {"q", r.q},
          {"order", r.order},  {"mu", r.mu_used},
          {"passed", r.passed()}, {"mismatches", r.mismatches()},
          {"coefficients", coeffs}};
}

nlohmann::json to_json(const GvTable& t) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& [rp, v] : t.values)
    values.push_back({{"r", rp.first}, {"p", rp.second}, {"value", rational_to_string(v)}});
  nlohmann::json finite = nlohmann::json::object();
  for (const auto& [r, f] : t.finite) finite[std::to_string(r)] = f;
  return {{"ucap", t.ucap}, {"values", values}, {"finite", finite}};
}

}  // namespace oslab
