#pragma once

// Exact multivariate Laurent / truncated power series over Q.
//
// Every generating function in the library lives in one ring with the fixed
// ordered variable set (a, q, T, u, y, Lhalf).  The Lhalf slot counts
// half-units of the Lefschetz motive, so L^{r^2/2} is stored as Lhalf^{r^2}.
//
// A Series may carry an upper degree cap per variable.  Terms above a cap are
// never stored, binary operations intersect caps, and a series without caps is
// an exact Laurent polynomial.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace oslab {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Var : std::size_t { a = 0, q = 1, T = 2, u = 3, y = 4, Lhalf = 5 };
inline constexpr std::size_t kVarCount = 6;
inline constexpr std::array<Var, kVarCount> kAllVars = {Var::a, Var::q, Var::T,
                                                        Var::u, Var::y, Var::Lhalf};

std::string_view var_name(Var v);
std::optional<Var> parse_var(std::string_view name);

/// Raised when an operation on series cannot be carried out exactly.
class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MonomialKey {
  std::array<std::int64_t, kVarCount> exps{};

  static MonomialKey one() { return {}; }
  static MonomialKey of(Var v, std::int64_t e = 1);

  std::int64_t operator[](Var v) const { return exps[static_cast<std::size_t>(v)]; }
  std::int64_t& operator[](Var v) { return exps[static_cast<std::size_t>(v)]; }

  bool is_one() const;
  /// Checked product; throws std::overflow_error on int64 overflow.
  MonomialKey operator*(const MonomialKey& rhs) const;
  MonomialKey pow(std::int64_t k) const;

  auto operator<=>(const MonomialKey&) const = default;
};

using Caps = std::array<std::optional<std::int64_t>, kVarCount>;

Caps no_caps();
Caps intersect_caps(const Caps& lhs, const Caps& rhs);
Caps make_caps(std::initializer_list<std::pair<Var, std::int64_t>> list);

class Series {
 public:
  using TermMap = std::map<MonomialKey, Rational>;

  Series() = default;
  explicit Series(Caps caps) : caps_(caps) {}

  static Series constant(const Rational& c, Caps caps = no_caps());
  static Series monomial(const MonomialKey& key, const Rational& c = 1, Caps caps = no_caps());
  static Series var(Var v, std::int64_t e = 1, Caps caps = no_caps());

  const TermMap& terms() const { return terms_; }
  const Caps& caps() const { return caps_; }
  std::optional<std::int64_t> cap(Var v) const { return caps_[static_cast<std::size_t>(v)]; }
  bool exact() const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const MonomialKey& key) const;
  Rational constant_term() const { return coeff(MonomialKey::one()); }
  bool within_caps(const MonomialKey& key) const;

  /// Adds c * key, dropping it when it exceeds a cap.
  void add_term(const MonomialKey& key, const Rational& c);

  /// Tightens caps (intersection) and drops terms that no longer fit.
  Series truncated(const Caps& caps) const;
  Series truncated(Var v, std::int64_t cap) const;

  Series& operator+=(const Series& rhs);
  Series& operator-=(const Series& rhs);
  Series& operator*=(const Rational& c);

  friend Series operator+(Series lhs, const Series& rhs) { return lhs += rhs; }
  friend Series operator-(Series lhs, const Series& rhs) { return lhs -= rhs; }
  friend Series operator-(Series s) { return s *= Rational(-1); }
  friend Series operator*(Series lhs, const Rational& c) { return lhs *= c; }
  friend Series operator*(const Rational& c, Series rhs) { return rhs *= c; }
  friend Series operator*(const Series& lhs, const Series& rhs);

  /// Multiplies by a monomial; caps are kept.
  Series shifted(const MonomialKey& key) const;

  /// Equal terms and equal caps.
  bool operator==(const Series& rhs) const = default;

  /// Coefficient of v^e, as a series in the remaining variables.
  Series coefficient_of(Var v, std::int64_t e) const;
  /// Minimum and maximum exponent of v over stored terms (nullopt when zero).
  std::optional<std::pair<std::int64_t, std::int64_t>> degree_range(Var v) const;

  std::string to_string() const;

 private:
  TermMap terms_;
  Caps caps_{};
};

/// True when lhs and rhs agree on every coefficient inside their joint caps.
bool agree_within_caps(const Series& lhs, const Series& rhs);

Series series_exp(const Series& s);
Series series_log(const Series& s);

struct SignedMonomial {
  int sign = 1;
  MonomialKey mono;
};
using SubstitutionRules = std::map<Var, SignedMonomial>;

/// Exact monomial substitution.  Target caps are derived for variables whose
/// image is a pure positive power of a single variable (and unchanged
/// variables keep their caps); pass `target_caps` to override.
Series series_substitute(const Series& s, const SubstitutionRules& rules,
                         const std::optional<Caps>& target_caps = std::nullopt);

/// A factor (1 + sign * base)^exponent.
struct PowerFactor {
  MonomialKey base;
  int sign = 1;
  Rational exponent = 1;
};

/// Truncated product of binomial series.  Every base must have nonnegative
/// exponents in the capped variables and a positive exponent in at least one.
Series power_product(const std::vector<PowerFactor>& factors, const Caps& caps);

/// Generalised binomial coefficient e(e-1)...(e-j+1)/j!.
Rational binomial(const Rational& e, std::int64_t j);

std::string rational_to_string(const Rational& r);
Rational parse_rational(std::string_view text);

nlohmann::json to_json(const Series& s);
Series series_from_json(const nlohmann::json& j);

}  // namespace oslab
