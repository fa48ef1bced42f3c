#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "gassmann/equivalence.hpp"

namespace gassmann {

// m x m matrix of variable ids (0-based; 1-based in text).
class Pattern {
 public:
  Pattern() = default;
  Pattern(std::size_t m, std::size_t variables, std::vector<std::uint32_t> entries);

  std::size_t size() const { return m_; }
  std::size_t variables() const { return k_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return entries_[i * m_ + j]; }
  const std::vector<std::uint32_t>& entries() const { return entries_; }
  // occurrences of each variable in row 0
  std::vector<std::size_t> cell_sizes() const;
  bool operator==(const Pattern&) const = default;

 private:
  std::size_t m_ = 0;
  std::size_t k_ = 0;
  std::vector<std::uint32_t> entries_;
};

// Text form: "pattern <m> <k>" followed by m rows of m variable ids in 1..k; '#' comments.
Pattern parse_pattern_text(std::string_view text);
Pattern parse_pattern_file(const std::filesystem::path& path);
std::string print_pattern(const Pattern& p);

struct DoubleCosetCell {
  // least element index of the double coset
  ElemId representative;
  // number of right cosets of H1 (equivalently of H2) it contains
  std::size_t size;
};

struct DoubleCosetDecomposition {
  // sorted by (size, representative); cell v is variable v
  std::vector<DoubleCosetCell> cells;
  // rows: cosets of H1, columns: cosets of H2, each in CosetAction order
  Pattern pattern;
};

// Orbits of the diagonal action on pairs of cosets. Throws IndexMismatch on unequal indices.
DoubleCosetDecomposition double_cosets(const Subgroup& h1, const Subgroup& h2);

using Assignment = std::vector<long long>;

mpz_class det_at(const Pattern& p, const Assignment& values);
mpz_class det_at(const Pattern& p, const std::vector<mpz_class>& values);
// Fraction-free elimination on a square matrix given row-major.
mpz_class bareiss_determinant(std::vector<mpz_class> a, std::size_t m);

// Unit vectors followed by random_count assignments with entries in [-range, range].
std::vector<Assignment> default_samples(std::size_t variables, std::size_t random_count = 8, long long range = 3,
                                        std::uint64_t seed = 0x5eed);
mpz_class sample_gcd(const Pattern& p, const std::vector<Assignment>& samples);

// Determinant of the pattern at residues mod a prime p.
std::uint64_t det_mod(const Pattern& p, const std::vector<std::uint64_t>& residues, std::uint64_t prime);
// Randomized test that the determinant polynomial is not identically zero, evaluated
// mod 2^61-1. A false "zero" has probability at most (m / 2^61)^trials.
bool determinant_nonzero(const Pattern& p, std::size_t trials = 2, std::uint64_t seed = 0x5eed);

// Primes dividing |H1| at which the pair is not p-locally equivalent.
std::vector<unsigned> primes_dividing_d(const Ambient& amb, const Subgroup& h1, const Subgroup& h2);

struct FactorForm {
  enum class Kind { Linear, Quadratic };
  Kind kind = Kind::Linear;
  // linear: one coefficient per factor variable
  std::vector<long long> coefficients;
  // quadratic: a (x_i - x_j)^2 + b (x_k - x_l)^2, 0-based variable ids
  long long a = 0, b = 0;
  std::size_t i = 0, j = 0, k = 0, l = 0;
  unsigned exponent = 1;

  std::size_t degree() const { return kind == Kind::Linear ? 1 : 2; }
  mpz_class evaluate(const std::vector<mpz_class>& x) const;
};

struct FactorList {
  int sign = 1;
  std::size_t variables = 0;
  std::vector<FactorForm> factors;
  // factor variable i is pattern variable varmap[i] (0-based)
  std::vector<std::size_t> varmap;

  std::size_t total_degree() const;
  mpz_class evaluate(const std::vector<mpz_class>& x) const;
};

// Text form, one item per line, '#' comments:
//   sign +1|-1
//   varmap v1 .. vk          optional, 1-based pattern variables
//   lin c1 .. ck ^e
//   quad a b (xi-xj) (xk-xl) ^e
FactorList parse_factor_text(std::string_view text);
FactorList parse_factor_file(const std::filesystem::path& path);
std::string print_factors(const FactorList& f);

struct FactorCheck {
  bool ok = false;
  // det = orientation * sign * product, fixed by the first nonzero trial
  int orientation = 0;
  std::size_t trials = 0;
  // pattern-variable assignment at which the identity failed
  std::optional<Assignment> counterexample;
};

struct VerifyOptions {
  std::size_t trials = 20;
  long long range = 50;
  std::uint64_t seed = 20240611;
};

// Throws DegreeMismatch when the factor degrees do not sum to the pattern size.
FactorCheck verify_factor_product(const Pattern& p, const FactorList& f, const VerifyOptions& opt = {});

struct LabelingResult {
  std::vector<std::size_t> varmap;
  int orientation;
};

// All varmaps permuting variables of equal cell size under which the product matches.
std::vector<LabelingResult> resolve_labeling(const Pattern& p, const FactorList& f, const VerifyOptions& opt = {});

struct SignSystem {
  std::vector<int> signs;
  bool solvable = false;
  std::optional<std::vector<mpz_class>> solution;
};

struct UnimodularityCertificate {
  enum class Status { ExistsWitness, CertifiedNonexistent, Unknown };
  Status status = Status::Unknown;
  // factor-variable assignment with product +-1
  std::optional<std::vector<mpz_class>> witness;
  std::vector<SignSystem> systems;
  std::string reason;
};

std::string to_string(UnimodularityCertificate::Status s);

// Decides whether the product can equal +-1 at an integer point. With a pattern,
// a witness is re-checked by det_at after mapping through the varmap.
// Throws UnsupportedForm for quadratic factors that are not positive semidefinite.
UnimodularityCertificate unimodularity_certificate(const FactorList& f, const Pattern* pattern = nullptr);

// Some integer solution of A x = b (A given row-major with n columns), or nullopt.
std::optional<std::vector<mpz_class>> solve_integer_system(const std::vector<std::vector<mpz_class>>& a,
                                                           const std::vector<mpz_class>& b, std::size_t n);

struct SearchStats {
  std::uint64_t visited = 0;
  std::uint64_t passed_small_primes = 0;
  std::uint64_t passed_large_prime = 0;
};

// Scans |x_i| <= box_bound for det = +-1; nullopt is not a proof of nonexistence.
std::optional<Assignment> unimodular_search(const Pattern& p, long long box_bound, SearchStats* stats = nullptr,
                                            unsigned workers = 0);

}  // namespace gassmann
