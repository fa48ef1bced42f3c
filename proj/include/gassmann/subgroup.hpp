#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gassmann/group.hpp"

namespace gassmann {

// Bitset over the elements of a parent group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : words_((universe + 63) / 64, 0), universe_(universe) {}

  bool test(ElemId x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set(ElemId x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void reset(ElemId x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }
  std::size_t universe() const { return universe_; }
  std::size_t count() const;
  bool is_subset_of(const ElementSet& other) const;
  std::vector<ElemId> to_vector() const;
  std::size_t hash() const;
  bool operator==(const ElementSet&) const = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t universe_ = 0;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

class Subgroup {
 public:
  Subgroup() = default;
  // members must form a subgroup; generators must generate it.
  Subgroup(GroupPtr parent, std::vector<ElemId> members, std::vector<ElemId> generators);
  // Generators are chosen greedily from the members.
  static Subgroup from_members(GroupPtr parent, std::vector<ElemId> members);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  const GroupPtr& parent_ptr() const { return parent_; }
  const EnumeratedGroup& parent() const { return *parent_; }
  std::size_t order() const { return members_.size(); }
  std::size_t index() const { return parent_->order() / members_.size(); }
  // sorted ascending
  std::span<const ElemId> members() const { return members_; }
  std::span<const ElemId> generators() const { return generators_; }
  const ElementSet& set() const { return set_; }
  bool contains(ElemId x) const { return set_.test(x); }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_subgroup_of(const Subgroup& other) const { return set_.is_subset_of(other.set_); }
  // position of x in members(), x must be a member
  std::size_t local_index(ElemId x) const;
  std::vector<Permutation> generator_permutations() const;

  bool operator==(const Subgroup& other) const { return set_ == other.set_; }

 private:
  GroupPtr parent_;
  std::vector<ElemId> members_;
  std::vector<ElemId> generators_;
  ElementSet set_;
};

inline constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

// <gens>, or nullopt once the closure grows beyond cap.
std::optional<Subgroup> generate(const GroupPtr& parent, std::span<const ElemId> gens,
                                 std::size_t cap = kNoCap);
Subgroup closure(const GroupPtr& parent, std::span<const ElemId> gens);
// <s, x>, or nullopt once the closure grows beyond cap.
std::optional<Subgroup> extend(const Subgroup& s, ElemId x, std::size_t cap = kNoCap);
// Maps a generator list into the parent; throws PreconditionFailed if a generator is not in it.
Subgroup subgroup_from_spec(const GroupPtr& parent, const GroupSpec& spec);

std::vector<ElemId> small_generating_set(const GroupPtr& parent, std::span<const ElemId> members);

// g s g^-1
Subgroup conjugate(const Subgroup& s, ElemId g);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
Subgroup normalizer(const Subgroup& universe, const Subgroup& s);
Subgroup centralizer(const Subgroup& universe, ElemId x);
Subgroup center(const Subgroup& s);
bool is_normal_in(const Subgroup& s, const Subgroup& overgroup);

// Some g in universe with g a g^-1 = b.
std::optional<ElemId> transporter(const Subgroup& universe, const Subgroup& a, const Subgroup& b);
std::optional<ElemId> transporter(const GroupPtr& g, const Subgroup& a, const Subgroup& b);

// Intersection of the parent-conjugates of h.
Subgroup normal_core(const Subgroup& h);

// Right action of the parent on the cosets H g.
class CosetAction {
 public:
  explicit CosetAction(const Subgroup& h);

  const Subgroup& subgroup() const { return subgroup_; }
  std::size_t size() const { return reps_.size(); }
  std::span<const ElemId> reps() const { return reps_; }
  std::uint32_t coset_of(ElemId g) const { return coset_of_[g]; }
  std::uint32_t act(std::uint32_t coset, ElemId g) const {
    return coset_of_[subgroup_.parent().mul(reps_[coset], g)];
  }
  // Tabulated action of the parent's i-th generator.
  std::uint32_t act_generator(std::uint32_t coset, std::size_t i) const {
    return generator_action_[i][coset];
  }
  std::vector<std::uint32_t> permutation_of(ElemId g) const;
  Subgroup kernel() const;

 private:
  Subgroup subgroup_;
  std::vector<ElemId> reps_;
  std::vector<std::uint32_t> coset_of_;
  std::vector<std::vector<std::uint32_t>> generator_action_;
};

// Conjugacy classes of a subgroup under its own elements: class id per local index.
struct LocalClasses {
  std::vector<std::uint32_t> class_of;
  std::vector<std::size_t> sizes;
};
LocalClasses local_conjugacy_classes(const Subgroup& s);

}  // namespace gassmann
