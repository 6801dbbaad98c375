#include "oslab/ring.hpp"

#include <algorithm>
#include <sstream>

namespace oslab {

namespace {

constexpr std::array<std::string_view, kVarCount> kNames = {"a", "q", "T", "u", "y", "Lhalf"};

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(x, y, &out)) throw std::overflow_error("monomial exponent overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("monomial exponent overflow");
  return out;
}

// A series can be exponentiated / powered to completion only when repeated
// multiplication eventually leaves the capped window.
bool is_nilpotent_under_caps(const MonomialKey& key, const Caps& caps) {
  bool grows = false;
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (!caps[i]) continue;
    if (key.exps[i] < 0) return false;
    if (key.exps[i] > 0) grows = true;
  }
  return grows;
}

void require_nilpotent(const Series& s, const char* what) {
  if (s.exact()) throw SeriesError(std::string(what) + ": a truncation cap is required");
  for (const auto& [key, c] : s.terms()) {
    if (!is_nilpotent_under_caps(key, s.caps()))
      throw SeriesError(std::string(what) + ": term does not leave the capped window");
  }
}

std::string monomial_text(const MonomialKey& key) {
  std::string out;
  for (std::size_t i = 0; i < kVarCount; ++i) {
    const auto e = key.exps[i];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += kNames[i];
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string_view var_name(Var v) { return kNames[static_cast<std::size_t>(v)]; }

std::optional<Var> parse_var(std::string_view name) {
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (kNames[i] == name) return static_cast<Var>(i);
  return std::nullopt;
}

MonomialKey MonomialKey::of(Var v, std::int64_t e) {
  MonomialKey k;
  k[v] = e;
  return k;
}

bool MonomialKey::is_one() const {
  return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

MonomialKey MonomialKey::operator*(const MonomialKey& rhs) const {
  MonomialKey out;
  for (std::size_t i = 0; i < kVarCount; ++i) out.exps[i] = checked_add(exps[i], rhs.exps[i]);
  return out;
}

MonomialKey MonomialKey::pow(std::int64_t k) const {
  MonomialKey out;
  for (std::size_t i = 0; i < kVarCount; ++i) out.exps[i] = checked_mul(exps[i], k);
  return out;
}

Caps no_caps() { return Caps{}; }

Caps intersect_caps(const Caps& lhs, const Caps& rhs) {
  Caps out;
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (lhs[i] && rhs[i])
      out[i] = std::min(*lhs[i], *rhs[i]);
    else
      out[i] = lhs[i] ? lhs[i] : rhs[i];
  }
  return out;
}

Caps make_caps(std::initializer_list<std::pair<Var, std::int64_t>> list) {
  Caps out;
  for (const auto& [v, c] : list) out[static_cast<std::size_t>(v)] = c;
  return out;
}

Series Series::constant(const Rational& c, Caps caps) {
  return monomial(MonomialKey::one(), c, caps);
}

Series Series::monomial(const MonomialKey& key, const Rational& c, Caps caps) {
  Series s(caps);
  s.add_term(key, c);
  return s;
}

Series Series::var(Var v, std::int64_t e, Caps caps) {
  return monomial(MonomialKey::of(v, e), 1, caps);
}

bool Series::exact() const {
  return std::none_of(caps_.begin(), caps_.end(), [](const auto& c) { return c.has_value(); });
}

Rational Series::coeff(const MonomialKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Series::within_caps(const MonomialKey& key) const {
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (caps_[i] && key.exps[i] > *caps_[i]) return false;
  return true;
}

void Series::add_term(const MonomialKey& key, const Rational& c) {
  if (c == 0 || !within_caps(key)) return;
  Rational value = c;
  value.canonicalize();
  auto [it, inserted] = terms_.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

Series Series::truncated(const Caps& caps) const {
  Series out(intersect_caps(caps_, caps));
  for (const auto& [key, c] : terms_)
    if (out.within_caps(key)) out.terms_.emplace_hint(out.terms_.end(), key, c);
  return out;
}

Series Series::truncated(Var v, std::int64_t cap) const {
  Caps c;
  c[static_cast<std::size_t>(v)] = cap;
  return truncated(c);
}

Series& Series::operator+=(const Series& rhs) {
  caps_ = intersect_caps(caps_, rhs.caps_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (!within_caps(it->first))
      it = terms_.erase(it);
    else
      ++it;
  }
  for (const auto& [key, c] : rhs.terms_) add_term(key, c);
  return *this;
}

Series& Series::operator-=(const Series& rhs) {
  Series neg = rhs;
  neg *= Rational(-1);
  return *this += neg;
}

Series& Series::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, value] : terms_) value *= c;
  return *this;
}

Series operator*(const Series& lhs, const Series& rhs) {
  Series out(intersect_caps(lhs.caps_, rhs.caps_));
  for (const auto& [k1, c1] : lhs.terms_) {
    for (const auto& [k2, c2] : rhs.terms_) {
      const MonomialKey k = k1 * k2;
      if (!out.within_caps(k)) continue;
      out.add_term(k, c1 * c2);
    }
  }
  return out;
}

Series Series::shifted(const MonomialKey& key) const {
  Series out(caps_);
  for (const auto& [k, c] : terms_) out.add_term(k * key, c);
  return out;
}

Series Series::coefficient_of(Var v, std::int64_t e) const {
  Caps caps = caps_;
  caps[static_cast<std::size_t>(v)].reset();
  Series out(caps);
  for (const auto& [k, c] : terms_) {
    if (k[v] != e) continue;
    MonomialKey rest = k;
    rest[v] = 0;
    out.add_term(rest, c);
  }
  return out;
}

std::optional<std::pair<std::int64_t, std::int64_t>> Series::degree_range(Var v) const {
  if (terms_.empty()) return std::nullopt;
  std::int64_t lo = terms_.begin()->first[v], hi = lo;
  for (const auto& [k, c] : terms_) {
    lo = std::min(lo, k[v]);
    hi = std::max(hi, k[v]);
  }
  return std::make_pair(lo, hi);
}

std::string Series::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    const std::string mono = monomial_text(key);
    Rational mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (mono.empty())
      os << rational_to_string(mag);
    else if (mag == 1)
      os << mono;
    else
      os << rational_to_string(mag) << "*" << mono;
  }
  std::string caps;
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (!caps_[i]) continue;
    caps += caps.empty() ? "" : ", ";
    caps += std::string(kNames[i]) + "<=" + std::to_string(*caps_[i]);
  }
  if (!caps.empty()) os << "  [" << caps << "]";
  return os.str();
}

bool agree_within_caps(const Series& lhs, const Series& rhs) { return (lhs - rhs).is_zero(); }

Series series_exp(const Series& s) {
  if (s.constant_term() != 0) throw SeriesError("series_exp: constant term must be zero");
  require_nilpotent(s, "series_exp");
  Series result = Series::constant(1, s.caps());
  Series term = Series::constant(1, s.caps());
  for (std::int64_t k = 1;; ++k) {
    term = term * s;
    term *= Rational(1, k);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

Series series_log(const Series& s) {
  if (s.constant_term() != 1) throw SeriesError("series_log: constant term must be one");
  Series f = s - Series::constant(1);
  require_nilpotent(f, "series_log");
  Series result(s.caps());
  Series power = Series::constant(1, s.caps());
  for (std::int64_t k = 1;; ++k) {
    power = power * f;
    if (power.is_zero()) break;
    result += power * Rational(k % 2 == 1 ? 1 : -1, k);
  }
  return result;
}

Series series_substitute(const Series& s, const SubstitutionRules& rules,
                         const std::optional<Caps>& target_caps) {
  Caps caps;
  if (target_caps) {
    caps = *target_caps;
  } else {
    for (Var v : kAllVars) {
      const auto cap = s.cap(v);
      if (!cap) continue;
      auto it = rules.find(v);
      if (it == rules.end()) {
        auto& slot = caps[static_cast<std::size_t>(v)];
        slot = slot ? std::min(*slot, *cap) : *cap;
        continue;
      }
      const MonomialKey& m = it->second.mono;
      std::optional<Var> single;
      bool pure = true;
      for (Var w : kAllVars) {
        if (m[w] == 0) continue;
        if (m[w] < 0 || single) pure = false;
        single = w;
      }
      if (!pure || !single) continue;
      const std::int64_t derived = checked_mul(*cap, m[*single]);
      auto& slot = caps[static_cast<std::size_t>(*single)];
      slot = slot ? std::min(*slot, derived) : derived;
    }
  }
  Series out(caps);
  for (const auto& [key, c] : s.terms()) {
    MonomialKey image;
    Rational coef = c;
    for (Var v : kAllVars) {
      const std::int64_t e = key[v];
      if (e == 0) continue;
      auto it = rules.find(v);
      if (it == rules.end()) {
        image = image * MonomialKey::of(v, e);
        continue;
      }
      if (it->second.sign != 1 && it->second.sign != -1)
        throw SeriesError("series_substitute: sign must be +1 or -1");
      image = image * it->second.mono.pow(e);
      if (it->second.sign < 0 && (e % 2 != 0)) coef = -coef;
    }
    out.add_term(image, coef);
  }
  return out;
}

Rational binomial(const Rational& e, std::int64_t j) {
  Rational out = 1;
  for (std::int64_t i = 0; i < j; ++i) {
    out *= (e - Rational(i));
    out /= Rational(i + 1);
  }
  return out;
}

Series power_product(const std::vector<PowerFactor>& factors, const Caps& caps) {
  Series result = Series::constant(1, caps);
  for (const auto& f : factors) {
    if (f.exponent == 0) continue;
    if (!is_nilpotent_under_caps(f.base, caps))
      throw SeriesError("power_product: factor base has no positive degree in a capped variable");
    Series factor(caps);
    MonomialKey power;
    Rational sign_pow = 1;
    for (std::int64_t j = 0;; ++j) {
      if (!factor.within_caps(power)) break;
      const Rational c = binomial(f.exponent, j);
      if (j > 0 && c == 0) break;  // nonnegative integer exponent
      factor.add_term(power, c * sign_pow);
      power = power * f.base;
      sign_pow *= f.sign;
    }
    result = result * factor;
  }
  return result;
}

std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  Rational r;
  if (r.set_str(std::string(text), 10) != 0) throw SeriesError("invalid rational: " + std::string(text));
  r.canonicalize();
  return r;
}

nlohmann::json to_json(const Series& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : s.terms()) {
    terms.push_back({{"exps", key.exps}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  }
  nlohmann::json caps = nlohmann::json::object();
  for (Var v : kAllVars)
    if (auto cap = s.cap(v)) caps[std::string(var_name(v))] = *cap;
  return {{"terms", terms}, {"caps", caps}};
}

Series series_from_json(const nlohmann::json& j) {
  Caps caps;
  for (const auto& [name, value] : j.at("caps").items()) {
    auto v = parse_var(name);
    if (!v) throw SeriesError("unknown variable in caps: " + name);
    caps[static_cast<std::size_t>(*v)] = value.get<std::int64_t>();
  }
  Series s(caps);
  for (const auto& t : j.at("terms")) {
    MonomialKey key;
    const auto exps = t.at("exps").get<std::vector<std::int64_t>>();
    if (exps.size() != kVarCount) throw SeriesError("exponent vector has wrong length");
    std::copy(exps.begin(), exps.end(), key.exps.begin());
    Rational c(Integer(t.at("num").get<std::string>()), Integer(t.at("den").get<std::string>()));
    c.canonicalize();
    s.add_term(key, c);
  }
  return s;
}

}  // namespace oslab
