#pragma once

#include <string>
#include <vector>

#include "gassmann/subgroup.hpp"

namespace gassmann {

Subgroup normal_closure(const Subgroup& universe, std::span<const ElemId> gens);
Subgroup derived_subgroup(const Subgroup& s);
// Orders of the derived series, starting with |s|, ending at the first repeat.
std::vector<std::size_t> derived_series_orders(const Subgroup& s);
bool is_solvable(const Subgroup& s);
bool is_cyclic(const Subgroup& s);
bool is_p_group(const Subgroup& s, unsigned p);
// Largest normal p-subgroup.
Subgroup p_core(const Subgroup& s, unsigned p);
bool is_p_cyclic(const Subgroup& s, unsigned p);
// p-cyclic for some prime p.
bool is_hypo_elementary(const Subgroup& s);

std::vector<unsigned> prime_divisors(std::size_t n);
bool is_prime(std::size_t n);

// Subgroup-closed classes of groups.
class ClassSelector {
 public:
  enum class Kind { All, Cyclic, PCyclic, PCyclicAnyPrime, Solvable };

  static ClassSelector all() { return ClassSelector(Kind::All, 0); }
  static ClassSelector cyclic() { return ClassSelector(Kind::Cyclic, 0); }
  static ClassSelector p_cyclic(unsigned p);
  static ClassSelector p_cyclic_any_prime() { return ClassSelector(Kind::PCyclicAnyPrime, 0); }
  static ClassSelector solvable() { return ClassSelector(Kind::Solvable, 0); }
  // "all", "cyclic", "p-cyclic:3", "p-cyclic-any", "solvable"
  static ClassSelector parse(const std::string& text);

  Kind kind() const { return kind_; }
  unsigned prime() const { return prime_; }
  bool accepts(const Subgroup& s) const;
  std::string name() const;
  bool operator==(const ClassSelector&) const = default;

 private:
  ClassSelector(Kind k, unsigned p) : kind_(k), prime_(p) {}
  Kind kind_;
  unsigned prime_;
};

}  // namespace gassmann
