#include "unicoh/combinat.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "unicoh/errors.hpp"

namespace unicoh {

unsigned long binomial_ul(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned long v = 1;
  for (unsigned long i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

Int binomial_z(unsigned long n, unsigned long k) {
  if (k > n) return Int(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

const std::vector<std::vector<int>>& subsets(int n, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, k});
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  if (k >= 0 && k <= n) {
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = i;
    while (true) {
      out.push_back(s);
      int i = k - 1;
      while (i >= 0 && s[i] == n - k + i) --i;
      if (i < 0) break;
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
    if (k == 0) out = {{}};
  }
  return cache.emplace(std::make_pair(n, k), std::move(out)).first->second;
}

int subset_index(int n, const std::vector<int>& s) {
  const auto& all = subsets(n, int(s.size()));
  auto it = std::lower_bound(all.begin(), all.end(), s);
  require(it != all.end() && *it == s, Errc::Internal, "subset not found");
  return int(it - all.begin());
}

int merge_sign(const std::vector<int>& a, const std::vector<int>& b) {
  long inversions = 0;
  for (int x : b) {
    for (int y : a) {
      if (y == x) return 0;
      if (y > x) ++inversions;
    }
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

std::vector<int> merge_sets(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

} // namespace unicoh
