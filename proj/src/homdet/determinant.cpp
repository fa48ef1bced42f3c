#include <numeric>
#include <random>

#include "gassmann/errors.hpp"
#include "gassmann/homdet.hpp"
#include "gassmann/properties.hpp"

namespace gassmann {

mpz_class bareiss_determinant(std::vector<mpz_class> a, std::size_t m) {
  if (a.size() != m * m) throw InvalidDatum("matrix size mismatch");
  if (m == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a[k * m + k] == 0) {
      std::size_t r = k + 1;
      while (r < m && a[r * m + k] == 0) ++r;
      if (r == m) return 0;
      for (std::size_t c = k; c < m; ++c) std::swap(a[k * m + c], a[r * m + c]);
      sign = -sign;
    }
    const mpz_class& pivot = a[k * m + k];
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        mpz_class& t = a[i * m + j];
        t = t * pivot - a[i * m + k] * a[k * m + j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
  }
  return sign * a[m * m - 1];
}

mpz_class det_at(const Pattern& p, const std::vector<mpz_class>& values) {
  if (values.size() != p.variables()) throw InvalidDatum("assignment has wrong length");
  std::vector<mpz_class> a;
  a.reserve(p.entries().size());
  for (auto v : p.entries()) a.push_back(values[v]);
  return bareiss_determinant(std::move(a), p.size());
}

mpz_class det_at(const Pattern& p, const Assignment& values) {
  std::vector<mpz_class> v;
  v.reserve(values.size());
  for (auto x : values) v.emplace_back(static_cast<long>(x));
  return det_at(p, v);
}

std::vector<Assignment> default_samples(std::size_t variables, std::size_t random_count, long long range,
                                        std::uint64_t seed) {
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < variables; ++i) {
    Assignment a(variables, 0);
    a[i] = 1;
    out.push_back(std::move(a));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> dist(-range, range);
  for (std::size_t r = 0; r < random_count; ++r) {
    Assignment a(variables);
    for (auto& x : a) x = dist(rng);
    out.push_back(std::move(a));
  }
  return out;
}

mpz_class sample_gcd(const Pattern& p, const std::vector<Assignment>& samples) {
  mpz_class g = 0;
  for (const auto& s : samples) {
    mpz_class d = det_at(p, s);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::vector<unsigned> primes_dividing_d(const Ambient& amb, const Subgroup& h1, const Subgroup& h2) {
  std::vector<unsigned> out;
  for (unsigned p : prime_divisors(h1.order()))
    if (!p_locally_equivalent(amb, h1, h2, p).verdict) out.push_back(p);
  return out;
}

}  // namespace gassmann
