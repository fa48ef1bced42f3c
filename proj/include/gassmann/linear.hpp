#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gassmann/equivalence.hpp"
#include "gassmann/group.hpp"
#include "gassmann/subgroup.hpp"

namespace gassmann {

struct Mat2 {
  std::uint32_t p = 0;
  std::uint32_t a = 1, b = 0, c = 0, d = 1;

  static Mat2 identity(std::uint32_t p) { return {p, 1, 0, 0, 1}; }
  static Mat2 diagonal(std::uint32_t p, std::uint32_t x, std::uint32_t y) { return {p, x % p, 0, 0, y % p}; }
  std::uint32_t det() const;
  Mat2 operator*(const Mat2& o) const;
  // throws InvalidDatum when singular
  Mat2 inverse() const;
  Mat2 negated() const;
  bool operator==(const Mat2&) const = default;
  std::string to_string() const;
};

enum class LinearKind { GL2, SL2, PSL2 };
std::string to_string(LinearKind k);

// Matrices act on row vectors, v -> vM, so products stay left-to-right.
// GL2 and SL2 act on the p^2-1 nonzero vectors, PSL2 on the p+1 points of the projective line.
class LinearGroup {
 public:
  LinearKind kind() const { return kind_; }
  std::uint32_t p() const { return p_; }
  const GroupSpec& spec() const { return spec_; }
  const GroupPtr& group() const { return group_; }
  Permutation lift(const Mat2& m) const;
  ElemId element(const Mat2& m) const;
  // a preimage; for PSL2 the sign is arbitrary
  const Mat2& matrix(ElemId x) const { return matrices_[x]; }

  friend LinearGroup build_linear_group(LinearKind kind, std::uint32_t p, std::size_t max_order);

 private:
  std::size_t point(std::uint32_t x, std::uint32_t y) const;

  LinearKind kind_ = LinearKind::SL2;
  std::uint32_t p_ = 0;
  GroupSpec spec_;
  GroupPtr group_;
  std::vector<Mat2> matrices_;
};

std::size_t linear_group_order(LinearKind kind, std::uint32_t p);

// Requires p prime and p >= 5. Checks the order and the lift kernel. Throws OrderExceeded.
LinearGroup build_linear_group(LinearKind kind, std::uint32_t p, std::size_t max_order = kDefaultMaxOrder);

bool is_square_mod(std::uint64_t r, std::uint64_t p);
std::uint32_t least_nonresidue(std::uint32_t p);

struct IcosahedralSearch {
  std::uint64_t seed = 0x1c05;
  std::size_t attempts = 2000;
  // afterwards try every element of order 5 or 10 against one order-4 element per class
  bool exhaustive_fallback = true;
};

// Order-120 perfect subgroup containing -1. Requires an SL2 handle with p = +-1 mod 5;
// throws PreconditionFailed otherwise and SearchExhausted when nothing is found.
Subgroup find_icosahedral_subgroup(const LinearGroup& sl2, const IcosahedralSearch& opt = {});

// sigma H sigma^-1 with sigma = diag(r, 1). Throws NotNonresidue unless r is a nonsquare mod p.
Subgroup outer_conjugate(const LinearGroup& g, const Subgroup& h, std::uint32_t r);

// Image of a subgroup of an SL2 handle in a PSL2 handle at the same prime.
Subgroup project(const LinearGroup& sl2, const LinearGroup& psl2, const Subgroup& h);

// Conjugacy classes of the handle's group that conjugation by diag(r, 1) does not fix.
std::vector<std::size_t> classes_moved_by_outer(const LinearGroup& g, const ConjugacyClasses& classes,
                                                std::uint32_t r);

// "C6", "2D3", "2A4", "2S4", "2A5"
using ClassTable = std::map<std::string, std::size_t>;

struct Classification {
  std::uint32_t p = 0;
  ClassTable computed;
  ClassTable predicted;
  // tags whose counts differ
  std::vector<std::string> mismatches;
};

inline constexpr std::uint32_t kDefaultClassificationBound = 13;

// Subgroups of order prime to p up to SL2-conjugacy, tagged by projective image.
Classification classify_prime_to_p_subgroups(const LinearGroup& sl2, std::uint32_t max_p = kDefaultClassificationBound);
// The congruence description of those classes.
ClassTable predicted_prime_to_p_classes(std::uint32_t p);
nlohmann::json to_json(const Classification& c);
std::string format_table(const Classification& c);

struct SolvableFamilyReport {
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  Subgroup h1, h2;
  bool conjugate_in_sl2 = true;
  EquivalenceReport solvable_sl2;
  bool conjugate_in_psl2 = true;
  EquivalenceReport solvable_psl2;
  // outer conjugation moves exactly the classes of elements of order divisible by p
  std::size_t moved_classes = 0;
  bool moved_classes_have_order_divisible_by_p = false;
  bool holds() const;
};

// Requires p prime with p = +-29 mod 120.
SolvableFamilyReport verify_solvable_family(std::uint32_t p, const EquivalenceOptions& opt = {});

// For other primes: the tags among 2D2, 2D3, 2D5, 2A4 whose SL2 class count is not 1,
// each of which breaks the argument.
ClassTable solvable_family_obstructions(const LinearGroup& sl2);

}  // namespace gassmann
