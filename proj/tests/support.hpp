#pragma once

// Shared helpers for the unit and acceptance suites: seeds, random braids,
// random series and an independent brute-force module enumerator.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oslab/braid.hpp"
#include "oslab/ring.hpp"
#include "oslab/semimodule.hpp"

namespace oslab::testing {

inline constexpr std::uint64_t kDefaultSeed = 20261016;

/// OSLAB_TEST_SEED overrides the pinned seed.
inline std::uint64_t test_seed() {
  if (const char* env = std::getenv("OSLAB_TEST_SEED")) return std::strtoull(env, nullptr, 10);
  return kDefaultSeed;
}

inline BraidWord random_braid(std::mt19937_64& rng, int strands, int max_crossings, int min_crossings = 0) {
  BraidWord b;
  b.strands = strands;
  if (strands < 2) return b;
  std::uniform_int_distribution<int> len(min_crossings, max_crossings);
  std::uniform_int_distribution<int> gen(1, strands - 1);
  const int n = len(rng);
  for (int i = 0; i < n; ++i) b.letters.push_back(rng() % 2 ? gen(rng) : -gen(rng));
  return b;
}

/// A sparse series in a, q, T with small integer coefficients and exponents.
inline Series random_series(std::mt19937_64& rng, int terms, const Caps& caps = no_caps()) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> expo(-2, 3);
  std::uniform_int_distribution<int> pos(0, 3);
  Series s(caps);
  for (int i = 0; i < terms; ++i) {
    MonomialKey key;
    key[Var::a] = expo(rng);
    key[Var::q] = caps[static_cast<std::size_t>(Var::q)] ? pos(rng) : expo(rng);
    key[Var::T] = pos(rng);
    Rational c(coef(rng), 1 + static_cast<int>(rng() % 3));
    c.canonicalize();
    s.add_term(key, c);
  }
  return s;
}

/// (q - q^{-1})^k
inline Series z_power(int k) {
  const Series z = Series::var(Var::q) - Series::var(Var::q, -1);
  Series out = Series::constant(1);
  for (int i = 0; i < k; ++i) out = out * z;
  return out;
}

/// Numerator of v over the fixed denominator (q - q^{-1})^depth.
inline Series over_denominator(const HomflyValue& v, int depth) {
  if (v.den_power > depth) throw std::invalid_argument("denominator deeper than requested");
  return v.numerator * z_power(depth - v.den_power);
}

/// a P(L+) - a^{-1} P(L-) - (q - q^{-1}) P(L0) for the crossing at `position`,
/// over a common denominator; zero when the skein relation holds.
inline Series skein_defect(const BraidWord& b, std::size_t position) {
  const SkeinTriple t = skein_triple(b, position);
  const HomflyValue plus = homfly(t.plus);
  const HomflyValue minus = homfly(t.minus);
  const HomflyValue zero = homfly(t.zero);
  const int depth = std::max({plus.den_power, minus.den_power, zero.den_power}) + 1;
  return Series::var(Var::a) * over_denominator(plus, depth) - Series::var(Var::a, -1) * over_denominator(minus, depth) -
         z_power(1) * over_denominator(zero, depth);
}

/// Every semigroup ideal Delta of colength n <= nmax, found by testing all
/// candidate complements inside Gamma; returns (n, m) -> count.  A missing
/// element k forces k - g out of Delta for every g in Gamma with k - g in
/// Gamma, and for k >= c there are at least k - c + 1 - delta of those, so all
/// missing elements lie below n + 2c + 1.
inline std::map<std::pair<int, int>, long> brute_force_histogram(int p, int q, int nmax) {
  const int c = (p - 1) * (q - 1);
  auto in_gamma = [&](int x) {
    if (x < 0) return false;
    for (int i = 0; i * p <= x; ++i)
      if ((x - i * p) % q == 0) return true;
    return false;
  };
  std::map<std::pair<int, int>, long> hist;
  for (int n = 0; n <= nmax; ++n) {
    const int bound = n + 2 * c + 1;
    std::vector<int> pool;
    for (int x = 0; x < bound; ++x)
      if (in_gamma(x)) pool.push_back(x);
    if (n > static_cast<int>(pool.size())) continue;
    std::vector<int> pick(pool.size(), 0);
    std::fill(pick.end() - n, pick.end(), 1);
    do {
      std::set<int> missing;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (pick[i]) missing.insert(pool[i]);
      auto in = [&](int x) { return in_gamma(x) && !missing.count(x); };
      bool closed = true;
      for (int x = 0; x < bound && closed; ++x)
        if (in(x) && (!in(x + p) || !in(x + q))) closed = false;
      if (!closed) continue;
      int m = 0;
      for (int d = 0; d < bound + p + q; ++d)
        if (in(d) && !in(d - p) && !in(d - q)) ++m;
      ++hist[{n, m}];
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return hist;
}

}  // namespace oslab::testing
