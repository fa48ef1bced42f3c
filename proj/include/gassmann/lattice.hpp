#pragma once

#include <functional>
#include <vector>

#include "gassmann/properties.hpp"

namespace gassmann {

inline constexpr std::size_t kDefaultLatticeBound = 2000;

struct LatticeOptions {
  ClassSelector selector = ClassSelector::all();
  // Must be closed under divisors: accepting n means accepting every d | n.
  std::function<bool(std::size_t)> order_filter;
  // Largest universe accepted; larger ones throw OrderExceeded.
  std::size_t bound = kDefaultLatticeBound;
  // Keep every conjugate of each class, not only the representative.
  bool keep_conjugates = false;
};

struct SubgroupClass {
  Subgroup representative;
  std::size_t size = 0;
  // Filled when keep_conjugates is set; front() is the representative.
  std::vector<Subgroup> members;
};

// Subgroups of the universe in the selected class, up to conjugation by the universe,
// sorted by order and then discovery. Built as joins of cyclic subgroups, which reaches
// every subgroup because a subgroup is the join of its cyclic subgroups and the class is
// subgroup-closed.
std::vector<SubgroupClass> subgroup_classes(const Subgroup& universe, const LatticeOptions& options = {});

// Every subgroup in the class exactly once.
std::vector<Subgroup> all_subgroups(const Subgroup& universe, LatticeOptions options = {});

}  // namespace gassmann
