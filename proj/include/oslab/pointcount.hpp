#pragma once

// Brute-force ideal counts in F_p[t^p, t^q] / (t^M) by linear algebra over
// a prime field.  Small l and small primes only.

#include <map>
#include <vector>

#include "oslab/ring.hpp"
#include "oslab/semimodule.hpp"

namespace oslab {

class PointcountError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kPointcountMaxLevel = 5;
inline constexpr int kPointcountPrimes[] = {2, 3, 5, 7};

/// Truncation order used for colength <= lmax: ideals I of colength at most
/// lmax and their products m I all contain every series of valuation >= M.
long pointcount_truncation(const CurveGerm& germ, int lmax);

/// Number of ideals of colength l.
long pointcount_oracle(const CurveGerm& germ, int l, int prime);

/// Ideals of colength l split by their minimal number of generators s.
std::map<int, long> ideal_census(const CurveGerm& germ, int l, int prime);

/// Number of pairs m J <= I <= J with colength(J) = l and dim J / I = r,
/// checked by containment between the two ideal lists.
long nested_pair_count(const CurveGerm& germ, int l, int r, int prime);

/// Integer-valued polynomial in the field size, fitted by interpolation.
struct CountPolynomial {
  std::vector<Rational> coeffs;  // ascending powers
  bool verified = false;         // matched every sample beyond those used in the fit

  Rational operator()(const Rational& x) const;
  bool integral() const;
  /// Coefficients as an exact series in one variable.
  Series as_series(Var v, std::int64_t step = 1) const;
};

/// Interpolates through the first `fit_points` samples and checks the rest.
CountPolynomial fit_count_polynomial(const std::vector<std::pair<long, Integer>>& samples, std::size_t fit_points);

/// Polynomial for pointcount_oracle(germ, l, .), fitted on 2, 3, 5 and checked on 7.
CountPolynomial ideal_count_polynomial(const CurveGerm& germ, int l);
/// s -> polynomial count of the colength-l stratum with s generators.
std::map<int, CountPolynomial> stratum_polynomials(const CurveGerm& germ, int l);
CountPolynomial nested_pair_polynomial(const CurveGerm& germ, int l, int r);

}  // namespace oslab
