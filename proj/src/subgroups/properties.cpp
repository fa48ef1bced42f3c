#include "gassmann/properties.hpp"

#include <numeric>

#include "gassmann/errors.hpp"

namespace gassmann {

std::vector<unsigned> prime_divisors(std::size_t n) {
  std::vector<unsigned> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(static_cast<unsigned>(p));
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

Subgroup normal_closure(const Subgroup& universe, std::span<const ElemId> gens) {
  const auto& G = universe.parent();
  Subgroup n = closure(universe.parent_ptr(), gens);
  bool changed = true;
  while (changed) {
    changed = false;
    for (ElemId u : universe.generators()) {
      for (std::size_t i = 0; i < n.generators().size(); ++i) {
        ElemId c = G.conj(u, n.generators()[i]);
        if (!n.contains(c)) {
          n = *extend(n, c);
          changed = true;
        }
      }
    }
  }
  return n;
}

Subgroup derived_subgroup(const Subgroup& s) {
  const auto& G = s.parent();
  std::vector<ElemId> comms;
  auto gens = s.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      ElemId a = gens[i], b = gens[j];
      ElemId c = G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b));
      if (c != EnumeratedGroup::identity()) comms.push_back(c);
    }
  return normal_closure(s, comms);
}

std::vector<std::size_t> derived_series_orders(const Subgroup& s) {
  std::vector<std::size_t> out{s.order()};
  Subgroup cur = s;
  while (!cur.is_trivial()) {
    Subgroup next = derived_subgroup(cur);
    if (next.order() == cur.order()) break;
    out.push_back(next.order());
    cur = std::move(next);
  }
  return out;
}

bool is_solvable(const Subgroup& s) { return derived_series_orders(s).back() == 1; }

bool is_cyclic(const Subgroup& s) {
  for (ElemId x : s.members())
    if (s.parent().element_order(x) == s.order()) return true;
  return false;
}

bool is_p_group(const Subgroup& s, unsigned p) {
  std::size_t n = s.order();
  while (n % p == 0) n /= p;
  return n == 1;
}

Subgroup p_core(const Subgroup& s, unsigned p) {
  const auto& G = s.parent();
  std::size_t sylow_order = 1;
  for (std::size_t n = s.order(); n % p == 0; n /= p) sylow_order *= p;
  // A maximal p-subgroup is Sylow, and one greedy pass reaches a maximal one:
  // an element rejected early stays rejected for the larger subgroup.
  Subgroup sylow = Subgroup::trivial(s.parent_ptr());
  for (ElemId x : s.members()) {
    if (sylow.order() == sylow_order) break;
    if (sylow.contains(x)) continue;
    std::size_t o = G.element_order(x);
    while (o % p == 0) o /= p;
    if (o != 1) continue;
    auto next = extend(sylow, x, sylow_order);
    if (next && is_p_group(*next, p)) sylow = std::move(*next);
  }
  std::vector<ElemId> core;
  for (ElemId x : sylow.members()) {
    bool ok = true;
    for (ElemId k : s.members())
      if (!sylow.contains(G.conj(G.inv(k), x))) {
        ok = false;
        break;
      }
    if (ok) core.push_back(x);
  }
  return Subgroup::from_members(s.parent_ptr(), std::move(core));
}

bool is_p_cyclic(const Subgroup& s, unsigned p) {
  if (s.is_trivial()) return true;
  const auto& G = s.parent();
  Subgroup core = p_core(s, p);
  std::size_t q = s.order() / core.order();
  for (ElemId x : s.members()) {
    // order of x modulo the core
    std::size_t j = 1;
    for (ElemId y = x; !core.contains(y); y = G.mul(y, x)) ++j;
    if (j == q) return true;
  }
  return false;
}

bool is_hypo_elementary(const Subgroup& s) {
  if (is_cyclic(s)) return true;
  for (unsigned p : prime_divisors(s.order()))
    if (is_p_cyclic(s, p)) return true;
  return false;
}

ClassSelector ClassSelector::p_cyclic(unsigned p) {
  if (!is_prime(p)) throw PreconditionFailed(std::to_string(p) + " is not prime");
  return ClassSelector(Kind::PCyclic, p);
}

ClassSelector ClassSelector::parse(const std::string& text) {
  if (text == "all") return all();
  if (text == "cyclic") return cyclic();
  if (text == "p-cyclic-any") return p_cyclic_any_prime();
  if (text == "solvable") return solvable();
  if (text.rfind("p-cyclic:", 0) == 0) return p_cyclic(static_cast<unsigned>(std::stoul(text.substr(9))));
  throw PreconditionFailed("unknown class selector '" + text + "'");
}

bool ClassSelector::accepts(const Subgroup& s) const {
  switch (kind_) {
    case Kind::All: return true;
    case Kind::Cyclic: return is_cyclic(s);
    case Kind::PCyclic: return is_p_cyclic(s, prime_);
    case Kind::PCyclicAnyPrime: return is_hypo_elementary(s);
    case Kind::Solvable: return is_solvable(s);
  }
  return false;
}

std::string ClassSelector::name() const {
  switch (kind_) {
    case Kind::All: return "all";
    case Kind::Cyclic: return "cyclic";
    case Kind::PCyclic: return "p-cyclic:" + std::to_string(prime_);
    case Kind::PCyclicAnyPrime: return "p-cyclic-any";
    case Kind::Solvable: return "solvable";
  }
  return "?";
}

}  // namespace gassmann
