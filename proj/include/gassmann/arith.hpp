#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gassmann/subgroup.hpp"

namespace gassmann {

struct LocalDatum {
  Subgroup decomposition;
  Subgroup inertia;
};

// Throws InvalidDatum unless I <= D, I normal in D and D/I cyclic. With allow_noncyclic
// only containment is required; such data have no arithmetic meaning.
void validate(const LocalDatum& datum, bool allow_noncyclic = false);

struct PrimeFactor {
  std::size_t e = 1;  // ramification index
  std::size_t f = 1;  // residue degree
  auto operator<=>(const PrimeFactor&) const = default;
};

struct SplittingPattern {
  // sorted by (e, f)
  std::vector<PrimeFactor> primes;

  static SplittingPattern from_factors(std::vector<PrimeFactor> primes);
  std::size_t degree() const;
  std::size_t sum_e() const;
  std::uint64_t product_e() const;
  // (e, f) -> count, sorted
  std::vector<std::pair<PrimeFactor, std::size_t>> counts() const;
  // "p1 p2 p3^2 p4^4[f=2]": exponent e, residue degree annotated when above 1
  std::string to_string() const;
  bool operator==(const SplittingPattern&) const = default;
};

nlohmann::json to_json(const SplittingPattern& p);

struct SplittingOptions {
  bool allow_noncyclic = false;
};

// One prime per D-orbit on [H\G]: e is the common I-orbit size inside it, f the orbit size over e.
SplittingPattern splitting_pattern(const Subgroup& h, const LocalDatum& datum, const SplittingOptions& opt = {});

struct RamificationDiagnostics {
  std::size_t sum_e1 = 0, sum_e2 = 0;
  std::uint64_t product_e1 = 1, product_e2 = 1;
  bool sum_equal = false;
  bool product_equal = false;
  bool multiset_equal = false;
};

RamificationDiagnostics ramification_diagnostics(const SplittingPattern& p1, const SplittingPattern& p2);

struct DSetComparison {
  bool isomorphic = false;
  // a point stabilizer whose D-class occurs with different multiplicity
  std::optional<Subgroup> stabilizer;
  std::size_t count1 = 0, count2 = 0;
  std::size_t orbits = 0;
};

// Compares [H1\G] and [H2\G] as D-sets through D-classes of point stabilizers, one per D-orbit.
DSetComparison dsets_isomorphic(const Subgroup& h1, const Subgroup& h2, const Subgroup& d);
// Same, reusing prebuilt coset actions.
DSetComparison dsets_isomorphic(const CosetAction& a1, const CosetAction& a2, const Subgroup& d);

}  // namespace gassmann
