#pragma once

// The value semigroup of x^p = y^q and its cofinite modules (monomial ideals).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oslab {

class SemimoduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unibranch germ x^p = y^q with semigroup Gamma = <p, q>.
struct CurveGerm {
  int p = 1;
  int q = 1;

  /// Throws SemimoduleError unless p, q >= 1 and gcd(p, q) = 1.
  static CurveGerm make(int p, int q);

  long mu() const { return static_cast<long>(p - 1) * (q - 1); }
  long conductor() const { return mu(); }
  long delta() const { return mu() / 2; }

  bool in_semigroup(long x) const;
  /// Semigroup elements in [0, bound), increasing.
  std::vector<long> elements_below(long bound) const;
  /// k-th smallest semigroup element (k = 0 gives 0).
  long element(long k) const;
  std::vector<long> gaps() const;

  bool operator==(const CurveGerm&) const = default;
};

/// Cofinite Gamma-module Delta, stored through its finite complement in Gamma.
class GammaModule {
 public:
  /// Validates that Gamma minus `gaps` is closed under +p and +q.
  static GammaModule from_gaps(const CurveGerm& germ, std::vector<long> gaps);
  static GammaModule principal(const CurveGerm& germ, long d);
  static GammaModule unit(const CurveGerm& germ) { return principal(germ, 0); }

  const CurveGerm& germ() const { return germ_; }
  /// Elements of Gamma not in Delta, increasing.
  const std::vector<long>& gaps() const { return gaps_; }
  bool contains(long x) const;
  long min_element() const;

  int colength() const { return static_cast<int>(gaps_.size()); }
  /// Elements d of Delta with d - p and d - q both outside Delta.
  std::vector<long> generators() const;
  int mingens() const { return static_cast<int>(generators().size()); }

  bool operator==(const GammaModule& rhs) const { return germ_ == rhs.germ_ && gaps_ == rhs.gaps_; }
  /// Lexicographic on the gap list.
  bool operator<(const GammaModule& rhs) const { return gaps_ < rhs.gaps_; }

 private:
  GammaModule(CurveGerm germ, std::vector<long> gaps) : germ_(germ), gaps_(std::move(gaps)) {}
  CurveGerm germ_;
  std::vector<long> gaps_;
};

struct ModuleInvariants {
  int n = 0;
  int m = 0;
  bool operator==(const ModuleInvariants&) const = default;
};

ModuleInvariants module_invariants(const GammaModule& d);

/// All modules of colength <= nmax, sorted by gap list.  threads = 0 uses the
/// hardware concurrency.
std::vector<GammaModule> enumerate_modules(const CurveGerm& germ, int nmax, unsigned threads = 0);

/// (n, m) -> number of modules.
using ModuleHistogram = std::map<std::pair<int, int>, long>;
ModuleHistogram module_histogram(const std::vector<GammaModule>& modules);

}  // namespace oslab
