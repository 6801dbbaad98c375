#include "oslab/braid.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>

namespace oslab {

namespace {

// Laurent polynomials in (a, z) with integer coefficients; the native ring of
// the Hecke trace.
using AzKey = std::pair<std::int64_t, std::int64_t>;

class AzPoly {
 public:
  AzPoly() = default;
  static AzPoly monomial(std::int64_t a, std::int64_t z, const Integer& c = 1) {
    AzPoly p;
    p.add({a, z}, c);
    return p;
  }

  void add(const AzKey& k, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  AzPoly& operator+=(const AzPoly& rhs) {
    for (const auto& [k, c] : rhs.terms_) add(k, c);
    return *this;
  }
  AzPoly& operator-=(const AzPoly& rhs) {
    for (const auto& [k, c] : rhs.terms_) add(k, -c);
    return *this;
  }
  friend AzPoly operator+(AzPoly l, const AzPoly& r) { return l += r; }
  friend AzPoly operator-(AzPoly l, const AzPoly& r) { return l -= r; }
  friend AzPoly operator*(const AzPoly& l, const AzPoly& r) {
    AzPoly out;
    for (const auto& [k1, c1] : l.terms_)
      for (const auto& [k2, c2] : r.terms_) out.add({k1.first + k2.first, k1.second + k2.second}, c1 * c2);
    return out;
  }
  AzPoly shifted(std::int64_t da, std::int64_t dz) const {
    AzPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), AzKey{k.first + da, k.second + dz}, c);
    return out;
  }
  bool is_zero() const { return terms_.empty(); }
  const std::map<AzKey, Integer>& terms() const { return terms_; }

 private:
  std::map<AzKey, Integer> terms_;
};

AzPoly unknot_az() { return AzPoly::monomial(1, -1) - AzPoly::monomial(-1, -1); }

AzPoly unknot_power(int c) {
  AzPoly out = AzPoly::monomial(0, 0);
  const AzPoly u = unknot_az();
  for (int i = 0; i < c; ++i) out = out * u;
  return out;
}

// Exact division of a Laurent polynomial in q (coefficients in a) by q - q^{-1}.
std::optional<Series> divide_by_z(const Series& num) {
  auto range = num.degree_range(Var::q);
  if (!range) return Series();
  std::map<std::int64_t, Series> coeff;  // q exponent -> series in a
  for (std::int64_t e = range->first; e <= range->second; ++e) coeff[e] = num.coefficient_of(Var::q, e);
  // c_e = m_{e-1} - m_{e+1}; solve downward from the top exponent.
  std::map<std::int64_t, Series> m;
  for (std::int64_t e = range->second; e >= range->first; --e) {
    Series next = m.count(e + 1) ? m[e + 1] : Series();
    m[e - 1] = coeff[e] + next;
  }
  Series quotient;
  for (const auto& [e, s] : m) quotient += s.shifted(MonomialKey::of(Var::q, e));
  const Series z = Series::var(Var::q, 1) - Series::var(Var::q, -1);
  if (!(quotient * z - num).is_zero()) return std::nullopt;
  return quotient;
}

HomflyValue canonicalize(Series numerator, int den_power) {
  while (den_power > 0 && !numerator.is_zero()) {
    auto reduced = divide_by_z(numerator);
    if (!reduced) break;
    numerator = std::move(*reduced);
    --den_power;
  }
  if (numerator.is_zero()) den_power = 0;
  return {std::move(numerator), den_power};
}

HomflyValue from_az(const AzPoly& p) {
  std::int64_t zmin = 0;
  for (const auto& [k, c] : p.terms()) zmin = std::min(zmin, k.second);
  AzPoly n = p.shifted(0, -zmin);
  int d = static_cast<int>(-zmin);
  // Strip z factors while the numerator vanishes at z = 0.
  while (d > 0 && !n.is_zero()) {
    bool divisible = std::none_of(n.terms().begin(), n.terms().end(),
                                  [](const auto& kv) { return kv.first.second == 0; });
    if (!divisible) break;
    n = n.shifted(0, -1);
    --d;
  }
  // z^k = sum_j C(k,j) (-1)^j q^{k-2j}
  Series num;
  for (const auto& [k, c] : n.terms()) {
    const auto [ea, ez] = k;
    Integer binom = 1;
    for (std::int64_t j = 0; j <= ez; ++j) {
      MonomialKey key;
      key[Var::a] = ea;
      key[Var::q] = ez - 2 * j;
      Integer coef = c * binom;
      if (j % 2 == 1) coef = -coef;
      num.add_term(key, Rational(coef));
      binom = binom * (ez - j) / (j + 1);
    }
  }
  if (num.is_zero()) d = 0;
  return {std::move(num), d};
}

using Perm = std::vector<std::uint8_t>;
using HeckeElement = std::map<Perm, AzPoly>;

// Right multiplication by g_{j+1} (swaps one-line positions j, j+1), or by its
// inverse g - z.
HeckeElement mul_generator(const HeckeElement& x, std::size_t j, bool inverse) {
  HeckeElement out;
  const AzPoly z = AzPoly::monomial(0, 1);
  for (const auto& [w, c] : x) {
    Perm ws = w;
    std::swap(ws[j], ws[j + 1]);
    if (w[j] < w[j + 1]) {
      out[ws] += c;
    } else {
      out[w] += z * c;
      out[ws] += c;
    }
  }
  if (inverse) {
    for (const auto& [w, c] : x) out[w] -= z * c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

class TraceEngine {
 public:
  AzPoly trace(const Perm& w) {
    if (w.empty()) return AzPoly::monomial(0, 0);
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    const std::size_t n = w.size();
    const auto top = static_cast<std::uint8_t>(n - 1);
    const std::size_t p = static_cast<std::size_t>(std::find(w.begin(), w.end(), top) - w.begin());
    AzPoly result;
    if (p == n - 1) {
      result = unknot_az() * trace(Perm(w.begin(), w.end() - 1));
    } else {
      // w = u s_{n-1} s_{n-2} ... s_{p+1} with u in S_{n-1}, so
      // Tr(T_w) = a Tr(T_u g_{n-2} ... g_{p+1}).
      Perm u;
      for (auto x : w)
        if (x != top) u.push_back(x);
      HeckeElement e{{u, AzPoly::monomial(0, 0)}};
      for (std::size_t j = n - 2; j-- > p;) e = mul_generator(e, j, false);
      for (const auto& [v, c] : e) result += c * trace(v);
      result = result.shifted(1, 0);
    }
    memo_.emplace(w, result);
    return result;
  }

 private:
  std::map<Perm, AzPoly> memo_;
};

AzPoly hecke_homfly_az(const BraidWord& b) {
  Perm id(static_cast<std::size_t>(b.strands));
  std::iota(id.begin(), id.end(), 0);
  HeckeElement e{{id, AzPoly::monomial(0, 0)}};
  for (int l : b.letters) e = mul_generator(e, static_cast<std::size_t>(std::abs(l) - 1), l < 0);
  TraceEngine engine;
  AzPoly tr;
  for (const auto& [w, c] : e) tr += c * engine.trace(w);
  return tr.shifted(-b.exponent_sum(), 0);
}

AzPoly skein_tree_az(const std::vector<int>& letters, int strands) {
  const std::size_t levels = letters.size();
  std::vector<int> first_visit(levels, 0);  // +1 over, -1 under
  std::vector<bool> used(static_cast<std::size_t>(strands), false);
  int components = 0;
  std::optional<std::size_t> bad;
  for (int start = 0; start < strands; ++start) {
    if (used[static_cast<std::size_t>(start)]) continue;
    ++components;
    int pos = start;
    do {
      used[static_cast<std::size_t>(pos)] = true;
      for (std::size_t level = 0; level < levels; ++level) {
        const int l = letters[level];
        const int left = std::abs(l) - 1;
        if (pos != left && pos != left + 1) continue;
        const bool left_to_right = pos == left;
        const bool over = l > 0 ? left_to_right : !left_to_right;
        if (first_visit[level] == 0) {
          first_visit[level] = over ? 1 : -1;
          if (!over && !bad) bad = level;
        }
        pos = left_to_right ? left + 1 : left;
      }
    } while (pos != start);
  }
  if (!bad) return unknot_power(components);

  std::vector<int> flipped = letters;
  flipped[*bad] = -flipped[*bad];
  std::vector<int> deleted = letters;
  deleted.erase(deleted.begin() + static_cast<std::ptrdiff_t>(*bad));
  const AzPoly pf = skein_tree_az(flipped, strands);
  const AzPoly pd = skein_tree_az(deleted, strands);
  if (letters[*bad] > 0) {
    // P(L+) = a^{-2} P(L-) + a^{-1} z P(L0)
    return pf.shifted(-2, 0) + pd.shifted(-1, 1);
  }
  // P(L-) = a^2 P(L+) - a z P(L0)
  return pf.shifted(2, 0) - pd.shifted(1, 1);
}

}  // namespace

void BraidWord::validate() const {
  if (strands < 1) throw BraidError("braid must have at least one strand");
  for (int l : letters) {
    if (l == 0 || std::abs(l) > strands - 1)
      throw BraidError("braid letter " + std::to_string(l) + " out of range for B_" + std::to_string(strands));
  }
}

int BraidWord::exponent_sum() const {
  int e = 0;
  for (int l : letters) e += l > 0 ? 1 : -1;
  return e;
}

int BraidWord::component_count() const {
  validate();
  std::vector<int> perm(static_cast<std::size_t>(strands));
  std::iota(perm.begin(), perm.end(), 0);
  for (int l : letters) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    std::swap(perm[i], perm[i + 1]);
  }
  std::vector<bool> seen(perm.size(), false);
  int cycles = 0;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(perm[x])) seen[x] = true;
  }
  return cycles;
}

BraidWord parse_braid(const std::string& text, int strands) {
  BraidWord b{strands, {}};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      b.letters.push_back(std::stoi(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw BraidError("");
    } catch (const std::exception&) {
      throw BraidError("invalid braid letter '" + item + "'");
    }
  }
  b.validate();
  return b;
}

std::string format_braid(const BraidWord& b) {
  std::string out;
  for (std::size_t i = 0; i < b.letters.size(); ++i) out += (i ? "," : "") + std::to_string(b.letters[i]);
  return out;
}

BraidWord mirror(const BraidWord& b) {
  BraidWord m = b;
  for (int& l : m.letters) l = -l;
  return m;
}

BraidWord torus_braid(int p, int q) {
  if (p < 1 || q < 1) throw BraidError("torus_braid: p and q must be positive");
  BraidWord b{q, {}};
  for (int k = 0; k < p; ++k)
    for (int i = 1; i < q; ++i) b.letters.push_back(i);
  return b;
}

long milnor_number(int p, int q) {
  if (p < 1 || q < 1) throw BraidError("milnor_number: p and q must be positive");
  if (std::gcd(p, q) != 1) throw BraidError("gcd(p,q) must be 1");
  return static_cast<long>(p - 1) * (q - 1);
}

SkeinTriple skein_triple(const BraidWord& b, std::size_t position) {
  b.validate();
  if (position >= b.letters.size()) throw BraidError("skein_triple: position out of range");
  SkeinTriple t{b, b, b};
  const int g = std::abs(b.letters[position]);
  t.plus.letters[position] = g;
  t.minus.letters[position] = -g;
  t.zero.letters.erase(t.zero.letters.begin() + static_cast<std::ptrdiff_t>(position));
  return t;
}

HomflyValue HomflyValue::operator*(const HomflyValue& rhs) const {
  return canonicalize(numerator * rhs.numerator, den_power + rhs.den_power);
}

HomflyValue HomflyValue::mirrored() const {
  SubstitutionRules rules{{Var::a, {1, MonomialKey::of(Var::a, -1)}}, {Var::q, {1, MonomialKey::of(Var::q, -1)}}};
  Series num = series_substitute(numerator, rules);
  if (den_power % 2 == 1) num *= Rational(-1);
  return {num, den_power};
}

std::string HomflyValue::to_string() const {
  if (den_power == 0) return numerator.to_string();
  return "(" + numerator.to_string() + ") / (q - q^-1)^" + std::to_string(den_power);
}

HomflyValue unknot_value() { return from_az(unknot_az()); }

HomflyValue homfly(const BraidWord& b, const HomflyOptions& options) {
  b.validate();
  if (b.crossings() > options.max_crossings)
    throw BraidError("crossing limit exceeded (" + std::to_string(b.crossings()) + " > " +
                     std::to_string(options.max_crossings) + ")");
  if (b.strands > options.max_strands)
    throw BraidError("strand limit exceeded (" + std::to_string(b.strands) + " > " +
                     std::to_string(options.max_strands) + ")");
  return from_az(hecke_homfly_az(b));
}

HomflyValue homfly_skein_tree(const BraidWord& b, std::size_t max_crossings) {
  b.validate();
  if (b.crossings() > max_crossings) throw BraidError("skein-tree oracle: crossing limit exceeded");
  return from_az(skein_tree_az(b.letters, b.strands));
}

Series expand_q_series(const HomflyValue& value, std::int64_t order) {
  const Caps caps = make_caps({{Var::q, order}});
  auto range = value.numerator.degree_range(Var::q);
  if (!range) return Series(caps);
  const int d = value.den_power;
  const std::int64_t window = std::max<std::int64_t>(0, order - d - range->first);
  const Series geometric =
      power_product({{MonomialKey::of(Var::q, 2), -1, Rational(-d)}}, make_caps({{Var::q, window}}));
  Series factor;  // exact copy so the product is truncated only at `order`
  for (const auto& [k, c] : geometric.terms()) factor.add_term(k, c);
  Series out = value.numerator.shifted(MonomialKey::of(Var::q, d)) * factor;
  if (d % 2 == 1) out *= Rational(-1);
  return out.truncated(caps);
}

nlohmann::json to_json(const HomflyValue& v) {
  return {{"numerator", to_json(v.numerator)}, {"den_power", v.den_power}};
}

}  // namespace oslab
