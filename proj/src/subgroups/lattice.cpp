#include "gassmann/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "gassmann/errors.hpp"

namespace gassmann {

namespace {

std::vector<Subgroup> conjugates_under(const Subgroup& universe, const Subgroup& s) {
  std::vector<Subgroup> orbit{s};
  std::unordered_set<ElementSet, ElementSetHash> seen{s.set()};
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (ElemId u : universe.generators()) {
      Subgroup c = conjugate(orbit[i], u);
      if (seen.insert(c.set()).second) orbit.push_back(std::move(c));
    }
  return orbit;
}

}  // namespace

std::vector<SubgroupClass> subgroup_classes(const Subgroup& universe, const LatticeOptions& options) {
  if (universe.order() > options.bound) throw OrderExceeded(options.bound);
  const auto& G = universe.parent();
  const auto& parent = universe.parent_ptr();
  auto order_ok = [&](std::size_t n) { return !options.order_filter || options.order_filter(n); };

  // Cyclic subgroups, one id per subgroup; cyc_of maps each member to the id of <x>.
  std::vector<std::uint32_t> cyc_of(universe.order(), 0xffffffffu);
  std::vector<ElemId> cyc_gen;
  std::vector<std::size_t> cyc_order;
  for (std::size_t i = 0; i < universe.order(); ++i) {
    if (cyc_of[i] != 0xffffffffu) continue;
    ElemId x = universe.members()[i];
    auto id = static_cast<std::uint32_t>(cyc_gen.size());
    std::size_t n = G.element_order(x);
    cyc_gen.push_back(x);
    cyc_order.push_back(n);
    ElemId y = x;
    for (std::size_t k = 1; k <= n; ++k, y = G.mul(y, x))
      if (std::gcd(k, n) == 1) cyc_of[universe.local_index(y)] = id;
  }

  struct Found {
    Subgroup rep;
    std::vector<Subgroup> conjugates;
    std::size_t discovery;
  };
  std::vector<Found> found;
  std::unordered_set<ElementSet, ElementSetHash> seen, rejected;

  auto consider = [&](Subgroup v) {
    if (seen.count(v.set()) || rejected.count(v.set())) return;
    if (!order_ok(v.order()) || !options.selector.accepts(v)) {
      rejected.insert(v.set());
      return;
    }
    auto conj = conjugates_under(universe, v);
    for (const auto& c : conj) seen.insert(c.set());
    found.push_back({std::move(v), std::move(conj), found.size()});
  };

  for (std::size_t c = 0; c < cyc_gen.size(); ++c) {
    if (!order_ok(cyc_order[c])) continue;
    consider(closure(parent, std::span<const ElemId>(&cyc_gen[c], 1)));
  }

  for (std::size_t w = 0; w < found.size(); ++w) {
    Subgroup r = found[w].rep;
    Subgroup norm = normalizer(universe, r);
    std::vector<bool> done(cyc_gen.size(), false);
    for (std::size_t c = 0; c < cyc_gen.size(); ++c) {
      if (done[c]) continue;
      if (r.contains(cyc_gen[c])) {
        done[c] = true;
        continue;
      }
      for (ElemId n : norm.members()) done[cyc_of[universe.local_index(G.conj(n, cyc_gen[c]))]] = true;
      std::size_t l = std::lcm(r.order(), cyc_order[c]);
      if (l > universe.order() || !order_ok(l)) continue;
      auto v = extend(r, cyc_gen[c], universe.order());
      if (v) consider(std::move(*v));
    }
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const Found& a, const Found& b) { return a.rep.order() < b.rep.order(); });
  std::vector<SubgroupClass> out;
  for (auto& f : found) {
    SubgroupClass sc;
    sc.size = f.conjugates.size();
    sc.representative = std::move(f.rep);
    if (options.keep_conjugates) sc.members = std::move(f.conjugates);
    out.push_back(std::move(sc));
  }
  return out;
}

std::vector<Subgroup> all_subgroups(const Subgroup& universe, LatticeOptions options) {
  options.keep_conjugates = true;
  std::vector<Subgroup> out;
  for (auto& c : subgroup_classes(universe, options))
    for (auto& s : c.members) out.push_back(std::move(s));
  return out;
}

}  // namespace gassmann
