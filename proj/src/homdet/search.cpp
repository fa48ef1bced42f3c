#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "gassmann/errors.hpp"
#include "gassmann/homdet.hpp"

namespace gassmann {

namespace {

constexpr std::size_t kMaxSearchVariables = 12;
constexpr std::uint64_t kLargePrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

}  // namespace

std::uint64_t det_mod(const Pattern& pat, const std::vector<std::uint64_t>& residues, std::uint64_t p) {
  const std::size_t m = pat.size();
  std::vector<std::uint64_t> a(m * m);
  for (std::size_t e = 0; e < m * m; ++e) a[e] = residues[pat.entries()[e]];
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t r = k;
    while (r < m && a[r * m + k] == 0) ++r;
    if (r == m) return 0;
    if (r != k) {
      for (std::size_t c = k; c < m; ++c) std::swap(a[k * m + c], a[r * m + c]);
      det = (p - det) % p;
    }
    det = mulmod(det, a[k * m + k], p);
    std::uint64_t inv = powmod(a[k * m + k], p - 2, p);
    for (std::size_t i = k + 1; i < m; ++i) {
      std::uint64_t f = mulmod(a[i * m + k], inv, p);
      if (f == 0) continue;
      for (std::size_t c = k; c < m; ++c) a[i * m + c] = (a[i * m + c] + p - mulmod(f, a[k * m + c], p)) % p;
    }
  }
  return det;
}

bool determinant_nonzero(const Pattern& pat, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, kLargePrime - 1);
  std::vector<std::uint64_t> r(pat.variables());
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& x : r) x = dist(rng);
    if (det_mod(pat, r, kLargePrime) != 0) return true;
  }
  return false;
}

namespace {

std::uint64_t residue(long long x, std::uint64_t p) {
  long long r = x % static_cast<long long>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
}

// Lazily filled table: is det nonzero mod q at each residue vector.
class ResidueFilter {
 public:
  ResidueFilter(const Pattern& p, std::uint64_t q) : pattern_(p), q_(q) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < p.variables(); ++i) size *= q;
    table_ = std::vector<std::atomic<signed char>>(size);
    for (auto& t : table_) t.store(-1, std::memory_order_relaxed);
  }

  bool passes(const Assignment& a) {
    std::size_t key = 0;
    std::vector<std::uint64_t> res(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      res[i] = residue(a[i], q_);
      key = key * q_ + res[i];
    }
    signed char v = table_[key].load(std::memory_order_relaxed);
    if (v < 0) {
      v = det_mod(pattern_, res, q_) != 0 ? 1 : 0;
      table_[key].store(v, std::memory_order_relaxed);
    }
    return v == 1;
  }

 private:
  const Pattern& pattern_;
  std::uint64_t q_;
  std::vector<std::atomic<signed char>> table_;
};

}  // namespace

std::optional<Assignment> unimodular_search(const Pattern& p, long long box_bound, SearchStats* stats,
                                            unsigned workers) {
  const std::size_t k = p.variables();
  if (k > kMaxSearchVariables)
    throw PreconditionFailed("search supports at most " + std::to_string(kMaxSearchVariables) + " variables");
  if (box_bound < 0) throw InvalidDatum("negative box bound");
  if (k == 0) return std::nullopt;

  std::vector<long long> digits{0};
  for (long long d = 1; d <= box_bound; ++d) {
    digits.push_back(d);
    digits.push_back(-d);
  }
  ResidueFilter mod2(p, 2), mod3(p, 3);
  std::atomic<std::uint64_t> visited{0}, small{0}, large{0};
  std::vector<std::optional<Assignment>> found(digits.size());
  // digit index of variable 0 at which a witness is known; later slices can stop
  std::atomic<std::size_t> best{digits.size()};

  auto run_slice = [&](std::size_t first) {
    std::vector<std::size_t> idx(k, 0);
    idx[0] = first;
    Assignment a(k);
    std::uint64_t local_visited = 0, local_small = 0, local_large = 0;
    while (true) {
      if (best.load(std::memory_order_relaxed) < first) break;
      for (std::size_t i = 0; i < k; ++i) a[i] = digits[idx[i]];
      ++local_visited;
      if (mod2.passes(a) && mod3.passes(a)) {
        ++local_small;
        std::vector<std::uint64_t> res(k);
        for (std::size_t i = 0; i < k; ++i) res[i] = residue(a[i], kLargePrime);
        auto d = det_mod(p, res, kLargePrime);
        if (d == 1 || d == kLargePrime - 1) {
          ++local_large;
          if (abs(det_at(p, a)) == 1) {
            found[first] = a;
            std::size_t cur = best.load();
            while (first < cur && !best.compare_exchange_weak(cur, first)) {
            }
            break;
          }
        }
      }
      std::size_t i = k;
      while (i > 1 && ++idx[i - 1] == digits.size()) idx[--i] = 0;
      if (i == 1) break;
    }
    visited += local_visited;
    small += local_small;
    large += local_large;
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(digits.size()));
  std::atomic<std::size_t> next_slice{0};
  auto worker = [&] {
    for (std::size_t s; (s = next_slice++) < digits.size();) run_slice(s);
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (stats) {
    stats->visited = visited;
    stats->passed_small_primes = small;
    stats->passed_large_prime = large;
  }
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

}  // namespace gassmann
