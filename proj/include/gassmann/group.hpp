#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gassmann/permutation.hpp"

namespace gassmann {

using ElemId = std::uint32_t;
inline constexpr ElemId kNoElem = 0xffffffffu;

struct GroupSpec {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::optional<std::string> label;

  // Throws DegreeMismatch if a generator has the wrong degree.
  void validate() const;
  bool operator==(const GroupSpec&) const = default;
};

inline constexpr std::size_t kDefaultMaxOrder = 1'000'000;

class EnumeratedGroup;
using GroupPtr = std::shared_ptr<const EnumeratedGroup>;

// All elements of a permutation group, indexed in breadth-first discovery
// order. Element 0 is the identity. Products and conjugates are resolved by
// looking up the images of a short base, so they never touch full permutations.
class EnumeratedGroup {
 public:
  const GroupSpec& spec() const { return spec_; }
  std::size_t degree() const { return degree_; }
  std::size_t order() const { return order_; }

  std::span<const Point> images(ElemId x) const {
    return {images_.data() + static_cast<std::size_t>(x) * degree_, degree_};
  }
  Point image(ElemId x, std::size_t point) const {
    return images_[static_cast<std::size_t>(x) * degree_ + point];
  }
  Permutation permutation(ElemId x) const;

  static constexpr ElemId identity() { return 0; }
  // first x, then y
  ElemId mul(ElemId x, ElemId y) const;
  ElemId inv(ElemId x) const { return inverse_[x]; }
  // g x g^-1
  ElemId conj(ElemId g, ElemId x) const;
  ElemId pow(ElemId x, long long e) const;
  std::uint32_t element_order(ElemId x) const { return orders_[x]; }

  std::optional<ElemId> find(std::span<const Point> images) const;
  std::optional<ElemId> find(const Permutation& p) const;

  // Element ids of spec().generators, in order.
  std::span<const ElemId> generator_ids() const { return generator_ids_; }
  std::span<const Point> base() const { return base_; }

  // Element whose images on base() are given; the images must come from a group element.
  ElemId lookup_base_images(const Point* base_images) const;

 private:
  friend GroupPtr enumerate_group(const GroupSpec& spec, std::size_t max_order);
  EnumeratedGroup() = default;
  void build_index();

  GroupSpec spec_;
  std::size_t degree_ = 0;
  std::size_t order_ = 0;
  std::vector<Point> images_;
  std::vector<ElemId> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<ElemId> generator_ids_;
  std::vector<Point> base_;
  std::vector<ElemId> table_;
  std::size_t table_mask_ = 0;
};

// Throws OrderExceeded once more than max_order elements have been found.
GroupPtr enumerate_group(const GroupSpec& spec, std::size_t max_order = kDefaultMaxOrder);

struct ConjugacyClasses {
  std::vector<std::uint32_t> class_of;
  std::vector<ElemId> representatives;
  std::vector<std::size_t> sizes;

  std::size_t count() const { return representatives.size(); }
};

ConjugacyClasses conjugacy_classes(const EnumeratedGroup& g);

}  // namespace gassmann
