#include "oslab/pointcount.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>

namespace oslab {

namespace {

using Vec = std::vector<int>;
using Space = std::vector<Vec>;  // reduced row echelon form

struct Field {
  int p;
  int add(int x, int y) const { return (x + y) % p; }
  int sub(int x, int y) const { return (x - y + p) % p; }
  int mul(int x, int y) const { return x * y % p; }
  int inv(int x) const {
    int r = 1;
    for (int e = p - 2, b = x; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r;
  }
};

Space rref(Space rows, const Field& f) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const int inv = f.inv(rows[rank][c]);
    for (int& x : rows[rank]) x = f.mul(x, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const int factor = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = f.sub(rows[r][k], f.mul(factor, rows[rank][k]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

Space join(const Space& a, const Space& b, const Field& f) {
  Space rows = a;
  rows.insert(rows.end(), b.begin(), b.end());
  return rref(std::move(rows), f);
}

bool contains(const Space& big, const Space& small, const Field& f) {
  return join(big, small, f).size() == big.size();
}

// The algebra F_p[t^p, t^q]/(t^M) with monomial basis t^g, g in Gamma, g < M.
struct Algebra {
  std::vector<long> basis;
  std::map<long, std::size_t> index;
  long M;

  Vec shift(const Vec& v, long s) const {
    Vec out(basis.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (v[i] == 0) continue;
      auto it = index.find(basis[i] + s);
      if (it != index.end()) out[it->second] = v[i];
    }
    return out;
  }
};

struct Lattice {
  int lmax;
  std::vector<std::vector<Space>> levels;  // levels[l] = ideals of colength l
  std::vector<std::vector<Space>> max_times;  // m J for each ideal, same layout
};

Space maximal_times(const Space& J, const Algebra& A, const CurveGerm& germ, const Field& f) {
  Space rows;
  for (const Vec& v : J) {
    rows.push_back(A.shift(v, germ.p));
    rows.push_back(A.shift(v, germ.q));
  }
  return rref(std::move(rows), f);
}

std::shared_ptr<const Lattice> build_lattice(const CurveGerm& germ, int prime, int lmax) {
  const Field f{prime};
  Algebra A;
  A.M = pointcount_truncation(germ, lmax);
  A.basis = germ.elements_below(A.M);
  for (std::size_t i = 0; i < A.basis.size(); ++i) A.index[A.basis[i]] = i;
  const std::size_t dim = A.basis.size();

  auto lat = std::make_shared<Lattice>();
  lat->lmax = lmax;
  Space whole;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e(dim, 0);
    e[i] = 1;
    whole.push_back(e);
  }
  lat->levels.push_back({whole});
  for (int l = 0; l <= lmax; ++l) {
    std::vector<Space> mjs;
    std::set<Space> next;
    for (const Space& J : lat->levels[static_cast<std::size_t>(l)]) {
      Space mJ = maximal_times(J, A, germ, f);
      mjs.push_back(mJ);
      if (l == lmax) continue;
      // Complement of m J inside J.
      Space w;
      Space running = mJ;
      for (const Vec& v : J) {
        Space grown = join(running, {v}, f);
        if (grown.size() > running.size()) {
          w.push_back(v);
          running = std::move(grown);
        }
      }
      const std::size_t s = w.size();
      // Hyperplanes of J containing m J, one per normalised functional phi.
      std::vector<int> phi(s, 0);
      for (std::size_t lead = 0; lead < s; ++lead) {
        std::fill(phi.begin(), phi.end(), 0);
        phi[lead] = 1;
        const std::size_t free = s - lead - 1;
        long combos = 1;
        for (std::size_t i = 0; i < free; ++i) combos *= prime;
        for (long code = 0; code < combos; ++code) {
          long c = code;
          for (std::size_t i = lead + 1; i < s; ++i, c /= prime) phi[i] = static_cast<int>(c % prime);
          Space rows = mJ;
          for (std::size_t i = 0; i < s; ++i) {
            if (i == lead) continue;
            Vec v = w[i];
            for (std::size_t k = 0; k < dim; ++k) v[k] = f.sub(v[k], f.mul(phi[i], w[lead][k]));
            rows.push_back(v);
          }
          next.insert(rref(std::move(rows), f));
        }
      }
    }
    lat->max_times.push_back(std::move(mjs));
    if (l < lmax) lat->levels.emplace_back(next.begin(), next.end());
  }
  return lat;
}

std::shared_ptr<const Lattice> lattice(const CurveGerm& germ, int prime, int lmax) {
  CurveGerm::make(germ.p, germ.q);
  if (lmax < 0 || lmax > kPointcountMaxLevel)
    throw PointcountError("colength must lie in [0, " + std::to_string(kPointcountMaxLevel) + "]");
  if (std::find(std::begin(kPointcountPrimes), std::end(kPointcountPrimes), prime) == std::end(kPointcountPrimes))
    throw PointcountError("prime must be one of 2, 3, 5, 7");
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const Lattice>> cache;
  const auto key = std::make_tuple(germ.p, germ.q, prime);
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->lmax >= lmax) return it->second;
  }
  auto built = build_lattice(germ, prime, lmax);
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (!slot || slot->lmax < built->lmax) slot = built;
  return slot;
}

}  // namespace

long pointcount_truncation(const CurveGerm& germ, int lmax) {
  // Ideals of colength <= lmax contain every t^g with g >= N; one more step of
  // min(p, q) keeps the products m I exact modulo t^M as well.
  const long N = std::max<long>({germ.conductor() + lmax, germ.element(lmax) + germ.conductor(), 1});
  return N + std::min(germ.p, germ.q);
}

long pointcount_oracle(const CurveGerm& germ, int l, int prime) {
  return static_cast<long>(lattice(germ, prime, l)->levels[static_cast<std::size_t>(l)].size());
}

std::map<int, long> ideal_census(const CurveGerm& germ, int l, int prime) {
  auto lat = lattice(germ, prime, l);
  std::map<int, long> out;
  const auto& ideals = lat->levels[static_cast<std::size_t>(l)];
  const auto& mjs = lat->max_times[static_cast<std::size_t>(l)];
  for (std::size_t i = 0; i < ideals.size(); ++i) ++out[static_cast<int>(ideals[i].size() - mjs[i].size())];
  return out;
}

long nested_pair_count(const CurveGerm& germ, int l, int r, int prime) {
  if (r < 0) throw PointcountError("r must be nonnegative");
  auto lat = lattice(germ, prime, l + r);
  const Field f{prime};
  const auto& outer = lat->levels[static_cast<std::size_t>(l)];
  const auto& mjs = lat->max_times[static_cast<std::size_t>(l)];
  const auto& inner = lat->levels[static_cast<std::size_t>(l + r)];
  long count = 0;
  for (std::size_t j = 0; j < outer.size(); ++j)
    for (const Space& I : inner)
      if (contains(outer[j], I, f) && contains(I, mjs[j], f)) ++count;
  return count;
}

Rational CountPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool CountPolynomial::integral() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Series CountPolynomial::as_series(Var v, std::int64_t step) const {
  Series s;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    s.add_term(MonomialKey::of(v, static_cast<std::int64_t>(i) * step), coeffs[i]);
  return s;
}

CountPolynomial fit_count_polynomial(const std::vector<std::pair<long, Integer>>& samples, std::size_t fit_points) {
  if (fit_points == 0 || fit_points > samples.size()) throw PointcountError("not enough samples to fit");
  CountPolynomial poly;
  poly.coeffs.assign(fit_points, Rational(0));
  // Lagrange interpolation, basis polynomials expanded in ascending powers.
  for (std::size_t i = 0; i < fit_points; ++i) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < fit_points; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * samples[j].first;
      }
      basis = std::move(next);
      denom *= samples[i].first - samples[j].first;
    }
    const Rational scale = Rational(samples[i].second) / denom;
    for (std::size_t k = 0; k < basis.size(); ++k) poly.coeffs[k] += basis[k] * scale;
  }
  while (!poly.coeffs.empty() && poly.coeffs.back() == 0) poly.coeffs.pop_back();
  poly.verified = true;
  for (std::size_t i = fit_points; i < samples.size(); ++i)
    if (poly(samples[i].first) != Rational(samples[i].second)) poly.verified = false;
  return poly;
}

namespace {

template <typename F>
CountPolynomial fit_over_primes(F&& count) {
  std::vector<std::pair<long, Integer>> samples;
  for (int p : kPointcountPrimes) samples.emplace_back(p, Integer(count(p)));
  return fit_count_polynomial(samples, 3);
}

}  // namespace

CountPolynomial ideal_count_polynomial(const CurveGerm& germ, int l) {
  return fit_over_primes([&](int p) { return pointcount_oracle(germ, l, p); });
}

std::map<int, CountPolynomial> stratum_polynomials(const CurveGerm& germ, int l) {
  std::map<int, std::map<int, long>> census;  // prime -> s -> count
  std::set<int> strata;
  for (int p : kPointcountPrimes) {
    census[p] = ideal_census(germ, l, p);
    for (const auto& [s, n] : census[p]) strata.insert(s);
  }
  std::map<int, CountPolynomial> out;
  for (int s : strata) {
    out[s] = fit_over_primes([&](int p) {
      auto it = census[p].find(s);
      return it == census[p].end() ? 0L : it->second;
    });
  }
  return out;
}

CountPolynomial nested_pair_polynomial(const CurveGerm& germ, int l, int r) {
  return fit_over_primes([&](int p) { return nested_pair_count(germ, l, r, p); });
}

}  // namespace oslab
