#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gassmann {

// Points are stored 0-based; every textual form is 1-based cycle notation.
using Point = std::uint16_t;

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  explicit Permutation(std::vector<Point> images);

  // cycles hold 1-based points
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<std::size_t>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }

  // Left-to-right product: first *this, then rhs.
  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation pow(long long e) const;
  bool is_identity() const;
  std::size_t order() const;
  // Lengths of all cycles (fixed points included), sorted descending.
  std::vector<std::size_t> cycle_type() const;
  std::vector<std::vector<Point>> cycles() const;
  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

// Parses disjoint-cycle notation such as "(1 2)(3 4 5)" or "(1,2)(3,4,5)".
// "()" and the empty string denote the identity. Points are 1-based.
// Column numbers in errors are 1-based offsets into text, shifted by column_offset.
Permutation parse_cycles(std::string_view text, std::size_t degree, std::size_t line = 1,
                         std::size_t column_offset = 0);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

std::size_t hash_points(std::span<const Point> pts);

}  // namespace gassmann
