#pragma once

// Braid words and the unreduced HOMFLY polynomial of their closures.
//
// Normalisation: a P(L+) - a^{-1} P(L-) = (q - q^{-1}) P(L0), unknot
// (a - a^{-1}) / (q - q^{-1}).  With this normalisation the value is
// P(b) = a^{-e(b)} Tr(b), where e is the exponent sum and Tr is the Ocneanu
// trace on the Hecke algebra (g_i - g_i^{-1} = z, z = q - q^{-1}) with
//   Tr(x g_n) = a Tr(x),  Tr(x) = (a - a^{-1})/z Tr_n(x)  for x in H_n.
// Both stabilisations b sigma_n^{+1} and b sigma_n^{-1} preserve the value, so
// no framing or writhe constant beyond a^{-e} is needed.

#include <cstddef>
#include <string>
#include <vector>

#include "oslab/ring.hpp"

namespace oslab {

class BraidError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;  // letter i means sigma_{|i|}^{sign(i)}

  /// Throws BraidError when the strand count or a letter index is invalid.
  void validate() const;
  std::size_t crossings() const { return letters.size(); }
  int exponent_sum() const;
  /// Number of components of the closure (cycles of the underlying permutation).
  int component_count() const;

  bool operator==(const BraidWord&) const = default;
};

/// Parses "1,-2,1" style words; an empty string is the empty word.
BraidWord parse_braid(const std::string& text, int strands);
std::string format_braid(const BraidWord& b);

BraidWord mirror(const BraidWord& b);
/// The word (sigma_1 ... sigma_{q-1})^p in B_q.
BraidWord torus_braid(int p, int q);
/// Milnor number (p-1)(q-1) of x^p = y^q; requires gcd(p, q) = 1.
long milnor_number(int p, int q);

struct SkeinTriple {
  BraidWord plus;
  BraidWord minus;
  BraidWord zero;
};
SkeinTriple skein_triple(const BraidWord& b, std::size_t position);

/// numerator(a, q) / (q - q^{-1})^den_power, with numerator not divisible by
/// (q - q^{-1}) unless den_power == 0.
struct HomflyValue {
  Series numerator;
  int den_power = 0;

  bool operator==(const HomflyValue&) const = default;
  HomflyValue operator*(const HomflyValue& rhs) const;
  /// (a, q) -> (a^{-1}, q^{-1}).
  HomflyValue mirrored() const;
  std::string to_string() const;
};

HomflyValue unknot_value();

struct HomflyOptions {
  std::size_t max_crossings = 64;
  int max_strands = 9;
};

/// Hecke-algebra trace engine.
HomflyValue homfly(const BraidWord& b, const HomflyOptions& options = {});

/// Naive skein-tree resolver (exponential); used as an independent oracle.
/// Switches the first crossing met from below in a base-pointed traversal
/// until the diagram is descending, i.e. a split unlink.
HomflyValue homfly_skein_tree(const BraidWord& b, std::size_t max_crossings = 12);

/// Expansion of a HomflyValue around q = 0, using
/// (q - q^{-1})^{-d} = (-q)^d (1 - q^2)^{-d}; coefficients through q^order.
Series expand_q_series(const HomflyValue& value, std::int64_t order);

nlohmann::json to_json(const HomflyValue& v);

}  // namespace oslab
