#include "oslab/semimodule.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <numeric>
#include <string>
#include <thread>

namespace oslab {

CurveGerm CurveGerm::make(int p, int q) {
  if (p < 1 || q < 1) throw SemimoduleError("p and q must be positive");
  if (std::gcd(p, q) != 1) throw SemimoduleError("gcd(p,q) must be 1");
  return CurveGerm{p, q};
}

bool CurveGerm::in_semigroup(long x) const {
  if (x < 0) return false;
  if (x >= conductor()) return true;
  for (long a = 0; a <= x; a += p)
    if ((x - a) % q == 0) return true;
  return false;
}

std::vector<long> CurveGerm::elements_below(long bound) const {
  std::vector<long> out;
  for (long x = 0; x < bound; ++x)
    if (in_semigroup(x)) out.push_back(x);
  return out;
}

long CurveGerm::element(long k) const {
  long x = -1;
  for (long seen = -1; seen < k;)
    if (in_semigroup(++x)) ++seen;
  return x;
}

std::vector<long> CurveGerm::gaps() const {
  std::vector<long> out;
  for (long x = 0; x < conductor(); ++x)
    if (!in_semigroup(x)) out.push_back(x);
  return out;
}

GammaModule GammaModule::from_gaps(const CurveGerm& germ, std::vector<long> gaps) {
  std::sort(gaps.begin(), gaps.end());
  if (std::adjacent_find(gaps.begin(), gaps.end()) != gaps.end())
    throw SemimoduleError("duplicate gap");
  for (long g : gaps)
    if (!germ.in_semigroup(g)) throw SemimoduleError("gap " + std::to_string(g) + " is not a semigroup element");
  GammaModule d(germ, std::move(gaps));
  // Closure: if x is in Delta then so are x + p and x + q, i.e. no gap sits
  // p or q above a member.
  for (long g : d.gaps_) {
    for (long step : {static_cast<long>(germ.p), static_cast<long>(germ.q)}) {
      if (d.contains(g - step))
        throw SemimoduleError("not closed: " + std::to_string(g - step) + " + " + std::to_string(step));
    }
  }
  return d;
}

GammaModule GammaModule::principal(const CurveGerm& germ, long d) {
  if (!germ.in_semigroup(d)) throw SemimoduleError("generator must lie in the semigroup");
  std::vector<long> gaps;
  for (long x : germ.elements_below(d + germ.conductor()))
    if (!germ.in_semigroup(x - d)) gaps.push_back(x);
  return GammaModule(germ, std::move(gaps));
}

bool GammaModule::contains(long x) const {
  return germ_.in_semigroup(x) && !std::binary_search(gaps_.begin(), gaps_.end(), x);
}

long GammaModule::min_element() const {
  for (long x = 0;; ++x)
    if (contains(x)) return x;
}

std::vector<long> GammaModule::generators() const {
  const long top = std::max(gaps_.empty() ? 0L : gaps_.back() + 1, germ_.conductor()) +
                   std::max(germ_.p, germ_.q);
  std::vector<long> out;
  for (long d = 0; d <= top; ++d)
    if (contains(d) && !contains(d - germ_.p) && !contains(d - germ_.q)) out.push_back(d);
  return out;
}

ModuleInvariants module_invariants(const GammaModule& d) { return {d.colength(), d.mingens()}; }

namespace {

// Depth-first decision over the semigroup elements below the bound: each is in
// Delta when forced by closure, otherwise either a gap or a member.
void search(const CurveGerm& germ, const std::vector<long>& elems, std::size_t idx, int nmax,
            std::vector<char>& member, std::vector<long>& gaps, std::vector<GammaModule>& out) {
  if (idx == elems.size()) {
    out.push_back(GammaModule::from_gaps(germ, gaps));
    return;
  }
  const long x = elems[idx];
  auto is_member = [&](long y) {
    if (y < 0) return false;
    auto it = std::lower_bound(elems.begin(), elems.end(), y);
    return it != elems.end() && *it == y && member[static_cast<std::size_t>(it - elems.begin())];
  };
  const bool forced = is_member(x - germ.p) || is_member(x - germ.q);
  if (!forced && static_cast<int>(gaps.size()) < nmax) {
    gaps.push_back(x);
    member[idx] = 0;
    search(germ, elems, idx + 1, nmax, member, gaps, out);
    gaps.pop_back();
  }
  member[idx] = 1;
  search(germ, elems, idx + 1, nmax, member, gaps, out);
}

}  // namespace

std::vector<GammaModule> enumerate_modules(const CurveGerm& germ, int nmax, unsigned threads) {
  CurveGerm::make(germ.p, germ.q);
  if (nmax < 0) throw SemimoduleError("nmax must be nonnegative");
  // A module of colength <= nmax has minimum <= element(nmax), and every gap
  // lies below minimum + conductor.
  const long bound = germ.element(nmax) + germ.conductor() + 1;
  const std::vector<long> elems = germ.elements_below(bound);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  // Partition by the minimum of Delta: the first j elements are gaps.
  auto branch = [&](int j) {
    std::vector<GammaModule> out;
    std::vector<char> member(elems.size(), 0);
    std::vector<long> gaps(elems.begin(), elems.begin() + j);
    member[static_cast<std::size_t>(j)] = 1;
    search(germ, elems, static_cast<std::size_t>(j) + 1, nmax, member, gaps, out);
    return out;
  };
  std::vector<std::vector<GammaModule>> parts(static_cast<std::size_t>(nmax) + 1);
  std::vector<std::future<void>> jobs;
  std::atomic<int> next{0};
  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(nmax) + 1);
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&] {
      for (int j; (j = next.fetch_add(1)) <= nmax;) parts[static_cast<std::size_t>(j)] = branch(j);
    }));
  }
  for (auto& job : jobs) job.get();

  std::vector<GammaModule> all;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end());
  return all;
}

ModuleHistogram module_histogram(const std::vector<GammaModule>& modules) {
  ModuleHistogram h;
  for (const auto& d : modules) ++h[{d.colength(), d.mingens()}];
  return h;
}

}  // namespace oslab
