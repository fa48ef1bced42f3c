#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "gassmann/lattice.hpp"

namespace gassmann {

struct IsoFingerprint {
  std::size_t order = 0;
  // (element order, count), ascending
  std::vector<std::pair<std::size_t, std::size_t>> element_orders;
  std::size_t center_order = 0;
  std::vector<std::size_t> derived_series;
  // elementary divisors of the abelianization, ascending prime powers
  std::vector<std::size_t> abelian_invariants;
  std::size_t class_count = 0;

  auto operator<=>(const IsoFingerprint&) const = default;
  std::string to_string() const;
};

IsoFingerprint fingerprint(const Subgroup& s);

// Elementary divisors (prime powers) of the quotient s / n for a normal subgroup n
// with abelian quotient.
std::vector<std::size_t> abelian_quotient_invariants(const Subgroup& s, const Subgroup& n);

struct StatisticsEntry {
  IsoFingerprint fingerprint;
  Subgroup representative;
  std::size_t count = 0;
};

// Counts of subgroups in the class, up to isomorphism.
std::vector<StatisticsEntry> p_statistics(const Subgroup& h, const ClassSelector& selector,
                                          std::size_t bound = kDefaultLatticeBound);
bool same_statistics(const std::vector<StatisticsEntry>& a, const std::vector<StatisticsEntry>& b);

bool is_isomorphic(const Subgroup& a, const Subgroup& b);

}  // namespace gassmann
