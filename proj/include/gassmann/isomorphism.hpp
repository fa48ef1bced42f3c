#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gassmann/subgroup.hpp"

namespace gassmann {

// Isomorphism between two subgroups, possibly of different parents.
class Isomorphism {
 public:
  Isomorphism(const Subgroup* source, const Subgroup* target, std::vector<ElemId> images)
      : source_(source), target_(target), images_(std::move(images)) {}

  ElemId apply(ElemId x) const { return images_[source_->local_index(x)]; }
  const Subgroup& source() const { return *source_; }
  const Subgroup& target() const { return *target_; }
  // indexed by source().local_index
  const std::vector<ElemId>& images() const { return images_; }
  Isomorphism inverse() const;

 private:
  const Subgroup* source_;
  const Subgroup* target_;
  std::vector<ElemId> images_;
};

using ElementCompatibility = std::function<bool(ElemId source_elem, ElemId target_elem)>;

// Calls visit on isomorphisms a -> b until it returns true; returns whether it did.
// Only one isomorphism per inner automorphism class of b for the first generator
// image is produced, which is enough for any existence question invariant under
// composing with conjugation inside b. compatible, when set, restricts generator images.
bool for_each_isomorphism(const Subgroup& a, const Subgroup& b,
                          const std::function<bool(const Isomorphism&)>& visit,
                          const ElementCompatibility& compatible = {});

std::optional<Isomorphism> find_isomorphism(const Subgroup& a, const Subgroup& b);

// A permutation s of the points with s^-1 k1 s = k2, found by matching abstract
// isomorphisms against orbit stabilizers. Works for subgroups of any parents of equal degree.
std::optional<Permutation> sn_subgroup_conjugate(const Subgroup& k1, const Subgroup& k2);
std::optional<Permutation> sn_subgroup_conjugate(const GroupSpec& k1, const GroupSpec& k2,
                                                 std::size_t max_order = kDefaultMaxOrder);

}  // namespace gassmann
