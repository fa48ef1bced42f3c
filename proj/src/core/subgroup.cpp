#include "gassmann/subgroup.hpp"

#include <algorithm>
#include <bit>

#include "gassmann/errors.hpp"

namespace gassmann {

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<ElemId> ElementSet::to_vector() const {
  std::vector<ElemId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<ElemId>(i * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t ElementSet::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto w : words_) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

Subgroup::Subgroup(GroupPtr parent, std::vector<ElemId> members, std::vector<ElemId> generators)
    : parent_(std::move(parent)), members_(std::move(members)), generators_(std::move(generators)) {
  std::sort(members_.begin(), members_.end());
  set_ = ElementSet(parent_->order());
  for (ElemId x : members_) set_.set(x);
}

Subgroup Subgroup::from_members(GroupPtr parent, std::vector<ElemId> members) {
  auto gens = small_generating_set(parent, members);
  return Subgroup(std::move(parent), std::move(members), std::move(gens));
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<ElemId> all(parent->order());
  for (ElemId x = 0; x < all.size(); ++x) all[x] = x;
  auto gens = parent->generator_ids();
  std::vector<ElemId> g;
  for (ElemId x : gens)
    if (x != EnumeratedGroup::identity() && std::find(g.begin(), g.end(), x) == g.end()) g.push_back(x);
  return Subgroup(std::move(parent), std::move(all), std::move(g));
}

Subgroup Subgroup::trivial(GroupPtr parent) { return Subgroup(std::move(parent), {0}, {}); }

std::size_t Subgroup::local_index(ElemId x) const {
  return static_cast<std::size_t>(std::lower_bound(members_.begin(), members_.end(), x) - members_.begin());
}

std::vector<Permutation> Subgroup::generator_permutations() const {
  std::vector<Permutation> out;
  for (ElemId g : generators_) out.push_back(parent_->permutation(g));
  return out;
}

namespace {

// Dimino-style extension of a closed set by new generators; the set stays a union
// of right cosets of the starting subgroup.
bool grow(const EnumeratedGroup& g, std::vector<ElemId>& members, ElementSet& set,
          std::span<const ElemId> base_members, std::span<const ElemId> all_gens, ElemId first_new,
          std::size_t cap) {
  if (set.test(first_new)) return true;
  std::vector<ElemId> reps{first_new};
  auto add_coset = [&](ElemId r) {
    for (ElemId s : base_members) {
      ElemId y = g.mul(s, r);
      set.set(y);
      members.push_back(y);
    }
    return members.size() <= cap;
  };
  if (!add_coset(first_new)) return false;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (ElemId s : all_gens) {
      ElemId y = g.mul(reps[i], s);
      if (set.test(y)) continue;
      reps.push_back(y);
      if (!add_coset(y)) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<Subgroup> extend(const Subgroup& s, ElemId x, std::size_t cap) {
  if (s.contains(x)) return s;
  const auto& g = s.parent();
  std::vector<ElemId> gens(s.generators().begin(), s.generators().end());
  gens.push_back(x);
  std::vector<ElemId> members(s.members().begin(), s.members().end());
  ElementSet set = s.set();
  if (!grow(g, members, set, s.members(), gens, x, cap)) return std::nullopt;
  return Subgroup(s.parent_ptr(), std::move(members), std::move(gens));
}

std::optional<Subgroup> generate(const GroupPtr& parent, std::span<const ElemId> gens, std::size_t cap) {
  Subgroup s = Subgroup::trivial(parent);
  for (ElemId x : gens) {
    auto next = extend(s, x, cap);
    if (!next) return std::nullopt;
    s = std::move(*next);
  }
  return s;
}

Subgroup closure(const GroupPtr& parent, std::span<const ElemId> gens) { return *generate(parent, gens); }

Subgroup subgroup_from_spec(const GroupPtr& parent, const GroupSpec& spec) {
  if (spec.degree != parent->degree())
    throw DegreeMismatch("subgroup degree " + std::to_string(spec.degree) + " differs from group degree " +
                         std::to_string(parent->degree()));
  std::vector<ElemId> ids;
  for (const auto& p : spec.generators) {
    auto id = parent->find(p);
    if (!id) throw PreconditionFailed("generator " + p.to_string() + " is not in the group");
    ids.push_back(*id);
  }
  return closure(parent, ids);
}

std::vector<ElemId> small_generating_set(const GroupPtr& parent, std::span<const ElemId> members) {
  std::vector<ElemId> sorted(members.begin(), members.end());
  std::stable_sort(sorted.begin(), sorted.end(), [&](ElemId a, ElemId b) {
    return parent->element_order(a) > parent->element_order(b);
  });
  Subgroup s = Subgroup::trivial(parent);
  for (ElemId x : sorted) {
    if (s.order() == members.size()) break;
    if (!s.contains(x)) s = *extend(s, x);
  }
  return std::vector<ElemId>(s.generators().begin(), s.generators().end());
}

Subgroup conjugate(const Subgroup& s, ElemId g) {
  const auto& G = s.parent();
  std::vector<ElemId> members, gens;
  members.reserve(s.order());
  for (ElemId x : s.members()) members.push_back(G.conj(g, x));
  for (ElemId x : s.generators()) gens.push_back(G.conj(g, x));
  return Subgroup(s.parent_ptr(), std::move(members), std::move(gens));
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  std::vector<ElemId> members;
  for (ElemId x : a.members())
    if (b.contains(x)) members.push_back(x);
  return Subgroup::from_members(a.parent_ptr(), std::move(members));
}

Subgroup normalizer(const Subgroup& universe, const Subgroup& s) {
  const auto& G = s.parent();
  std::vector<ElemId> members;
  for (ElemId u : universe.members()) {
    bool ok = true;
    for (ElemId x : s.generators())
      if (!s.contains(G.conj(u, x))) {
        ok = false;
        break;
      }
    if (ok) members.push_back(u);
  }
  return Subgroup::from_members(universe.parent_ptr(), std::move(members));
}

Subgroup centralizer(const Subgroup& universe, ElemId x) {
  const auto& G = universe.parent();
  std::vector<ElemId> members;
  for (ElemId u : universe.members())
    if (G.conj(u, x) == x) members.push_back(u);
  return Subgroup::from_members(universe.parent_ptr(), std::move(members));
}

Subgroup center(const Subgroup& s) {
  const auto& G = s.parent();
  std::vector<ElemId> members;
  for (ElemId u : s.members()) {
    bool central = true;
    for (ElemId x : s.generators())
      if (G.conj(x, u) != u) {
        central = false;
        break;
      }
    if (central) members.push_back(u);
  }
  return Subgroup::from_members(s.parent_ptr(), std::move(members));
}

bool is_normal_in(const Subgroup& s, const Subgroup& overgroup) {
  const auto& G = s.parent();
  for (ElemId u : overgroup.generators())
    for (ElemId x : s.generators())
      if (!s.contains(G.conj(u, x))) return false;
  return true;
}

std::optional<ElemId> transporter(const Subgroup& universe, const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  const auto& G = a.parent();
  for (ElemId u : universe.members()) {
    bool ok = true;
    for (ElemId x : a.generators())
      if (!b.contains(G.conj(u, x))) {
        ok = false;
        break;
      }
    if (ok) return u;
  }
  return std::nullopt;
}

std::optional<ElemId> transporter(const GroupPtr& g, const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  for (ElemId u = 0; u < g->order(); ++u) {
    bool ok = true;
    for (ElemId x : a.generators())
      if (!b.contains(g->conj(u, x))) {
        ok = false;
        break;
      }
    if (ok) return u;
  }
  return std::nullopt;
}

Subgroup normal_core(const Subgroup& h) {
  CosetAction act(h);
  const auto& G = h.parent();
  std::vector<ElemId> members;
  for (ElemId x : h.members()) {
    bool ok = true;
    for (ElemId r : act.reps())
      if (!h.contains(G.conj(r, x))) {
        ok = false;
        break;
      }
    if (ok) members.push_back(x);
  }
  return Subgroup::from_members(h.parent_ptr(), std::move(members));
}

CosetAction::CosetAction(const Subgroup& h) : subgroup_(h) {
  const auto& G = h.parent();
  coset_of_.assign(G.order(), 0xffffffffu);
  for (ElemId g = 0; g < G.order(); ++g) {
    if (coset_of_[g] != 0xffffffffu) continue;
    auto c = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back(g);
    for (ElemId x : h.members()) coset_of_[G.mul(x, g)] = c;
  }
  if (reps_.size() * h.order() != G.order()) throw Error("coset count violates Lagrange");
  for (ElemId s : G.generator_ids()) {
    std::vector<std::uint32_t> row(reps_.size());
    for (std::uint32_t c = 0; c < reps_.size(); ++c) row[c] = act(c, s);
    generator_action_.push_back(std::move(row));
  }
}

std::vector<std::uint32_t> CosetAction::permutation_of(ElemId g) const {
  std::vector<std::uint32_t> out(reps_.size());
  for (std::uint32_t c = 0; c < reps_.size(); ++c) out[c] = act(c, g);
  return out;
}

Subgroup CosetAction::kernel() const {
  const auto& G = subgroup_.parent();
  std::vector<ElemId> members;
  for (ElemId g = 0; g < G.order(); ++g) {
    bool fixes = true;
    for (std::uint32_t c = 0; c < reps_.size(); ++c)
      if (act(c, g) != c) {
        fixes = false;
        break;
      }
    if (fixes) members.push_back(g);
  }
  return Subgroup::from_members(subgroup_.parent_ptr(), std::move(members));
}

LocalClasses local_conjugacy_classes(const Subgroup& s) {
  const auto& G = s.parent();
  LocalClasses out;
  out.class_of.assign(s.order(), 0xffffffffu);
  std::vector<ElemId> queue;
  for (std::size_t i = 0; i < s.order(); ++i) {
    if (out.class_of[i] != 0xffffffffu) continue;
    auto id = static_cast<std::uint32_t>(out.sizes.size());
    queue.assign(1, s.members()[i]);
    out.class_of[i] = id;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (ElemId u : s.generators()) {
        ElemId y = G.conj(u, queue[q]);
        std::size_t li = s.local_index(y);
        if (out.class_of[li] == 0xffffffffu) {
          out.class_of[li] = id;
          queue.push_back(y);
        }
      }
    out.sizes.push_back(queue.size());
  }
  return out;
}

}  // namespace gassmann
