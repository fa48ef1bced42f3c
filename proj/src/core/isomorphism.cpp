#include "gassmann/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gassmann {

Isomorphism Isomorphism::inverse() const {
  std::vector<ElemId> inv(target_->order());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[target_->local_index(images_[i])] = source_->members()[i];
  return Isomorphism(target_, source_, std::move(inv));
}

namespace {

struct ElementInvariants {
  std::vector<std::pair<std::uint32_t, std::size_t>> by_local;  // (order, class size)
  std::vector<std::uint32_t> class_of;
};

ElementInvariants invariants_of(const Subgroup& s) {
  auto cls = local_conjugacy_classes(s);
  ElementInvariants inv;
  inv.class_of = cls.class_of;
  for (std::size_t i = 0; i < s.order(); ++i)
    inv.by_local.emplace_back(s.parent().element_order(s.members()[i]), cls.sizes[cls.class_of[i]]);
  return inv;
}

// Extends generator images to a map on all of a, or fails.
bool extend_map(const Subgroup& a, const Subgroup& b, std::span<const ElemId> gens_a,
                std::span<const ElemId> gens_b, std::vector<ElemId>& images) {
  const auto& A = a.parent();
  const auto& B = b.parent();
  images.assign(a.order(), kNoElem);
  images[a.local_index(EnumeratedGroup::identity())] = EnumeratedGroup::identity();
  std::vector<ElemId> queue{EnumeratedGroup::identity()};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    ElemId x = queue[q];
    ElemId fx = images[a.local_index(x)];
    for (std::size_t i = 0; i < gens_a.size(); ++i) {
      ElemId y = A.mul(x, gens_a[i]);
      ElemId fy = B.mul(fx, gens_b[i]);
      std::size_t ly = a.local_index(y);
      if (images[ly] == kNoElem) {
        images[ly] = fy;
        queue.push_back(y);
      } else if (images[ly] != fy) {
        return false;
      }
    }
  }
  if (queue.size() != a.order()) return false;
  std::vector<bool> hit(b.order(), false);
  for (ElemId y : images) {
    if (!b.contains(y)) return false;
    std::size_t l = b.local_index(y);
    if (hit[l]) return false;
    hit[l] = true;
  }
  return true;
}

}  // namespace

bool for_each_isomorphism(const Subgroup& a, const Subgroup& b,
                          const std::function<bool(const Isomorphism&)>& visit,
                          const ElementCompatibility& compatible) {
  if (a.order() != b.order()) return false;
  const auto& A = a.parent();
  const auto& B = b.parent();
  std::vector<ElemId> gens_a(a.generators().begin(), a.generators().end());
  if (gens_a.empty()) {
    Isomorphism iso(&a, &b, {EnumeratedGroup::identity()});
    return visit(iso);
  }
  auto inv_a = invariants_of(a);
  auto inv_b = invariants_of(b);

  std::vector<std::vector<ElemId>> candidates(gens_a.size());
  for (std::size_t i = 0; i < gens_a.size(); ++i) {
    auto want = inv_a.by_local[a.local_index(gens_a[i])];
    std::vector<bool> class_taken(b.order(), false);
    for (std::size_t j = 0; j < b.order(); ++j) {
      if (inv_b.by_local[j] != want) continue;
      ElemId y = b.members()[j];
      if (compatible && !compatible(gens_a[i], y)) continue;
      if (i == 0) {
        if (class_taken[inv_b.class_of[j]]) continue;
        class_taken[inv_b.class_of[j]] = true;
      }
      candidates[i].push_back(y);
    }
    if (candidates[i].empty()) return false;
  }

  std::vector<ElemId> gens_b(gens_a.size());
  std::vector<ElemId> images;
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (stop) return;
    if (depth == gens_a.size()) {
      if (extend_map(a, b, gens_a, gens_b, images)) {
        Isomorphism iso(&a, &b, images);
        if (visit(iso)) stop = true;
      }
      return;
    }
    for (ElemId y : candidates[depth]) {
      bool ok = true;
      for (std::size_t j = 0; j < depth && ok; ++j) {
        if (gens_b[j] == y) ok = false;
        else if (A.element_order(A.mul(gens_a[j], gens_a[depth])) != B.element_order(B.mul(gens_b[j], y)))
          ok = false;
      }
      if (!ok) continue;
      gens_b[depth] = y;
      self(self, depth + 1);
      if (stop) return;
    }
  };
  rec(rec, 0);
  return stop;
}

std::optional<Isomorphism> find_isomorphism(const Subgroup& a, const Subgroup& b) {
  std::optional<Isomorphism> out;
  for_each_isomorphism(a, b, [&](const Isomorphism& iso) {
    out.emplace(iso);
    return true;
  });
  return out;
}

namespace {

struct Orbits {
  std::vector<std::vector<Point>> orbits;  // each sorted, largest first
};

Orbits point_orbits(const Subgroup& k) {
  const auto& G = k.parent();
  std::size_t n = G.degree();
  std::vector<bool> seen(n, false);
  Orbits out;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<Point> orb{static_cast<Point>(i)};
    seen[i] = true;
    for (std::size_t q = 0; q < orb.size(); ++q)
      for (ElemId s : k.generators()) {
        Point y = G.image(s, orb[q]);
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.orbits.push_back(std::move(orb));
  }
  std::stable_sort(out.orbits.begin(), out.orbits.end(),
                   [](const auto& x, const auto& y) { return x.size() > y.size(); });
  return out;
}

std::vector<bool> stabilizer_mask(const Subgroup& k, Point x) {
  std::vector<bool> mask(k.order(), false);
  for (std::size_t i = 0; i < k.order(); ++i)
    if (k.parent().image(k.members()[i], x) == x) mask[i] = true;
  return mask;
}

std::map<std::vector<std::size_t>, std::size_t> cycle_type_counts(const Subgroup& k) {
  std::map<std::vector<std::size_t>, std::size_t> out;
  for (ElemId x : k.members()) ++out[k.parent().permutation(x).cycle_type()];
  return out;
}

}  // namespace

std::optional<Permutation> sn_subgroup_conjugate(const Subgroup& k1, const Subgroup& k2) {
  std::size_t n = k1.parent().degree();
  if (k2.parent().degree() != n || k1.order() != k2.order()) return std::nullopt;
  auto orb1 = point_orbits(k1);
  auto orb2 = point_orbits(k2);
  auto sizes = [](const Orbits& o) {
    std::vector<std::size_t> s;
    for (const auto& x : o.orbits) s.push_back(x.size());
    return s;
  };
  if (sizes(orb1) != sizes(orb2)) return std::nullopt;
  if (cycle_type_counts(k1) != cycle_type_counts(k2)) return std::nullopt;

  std::vector<std::vector<bool>> stab2(n);
  for (std::size_t y = 0; y < n; ++y) stab2[y] = stabilizer_mask(k2, static_cast<Point>(y));
  std::vector<std::vector<bool>> stab1;
  for (const auto& o : orb1.orbits) stab1.push_back(stabilizer_mask(k1, o.front()));

  std::vector<std::size_t> type1(k1.order()), type2(k2.order());
  std::map<std::vector<std::size_t>, std::size_t> type_ids;
  auto type_of = [&](const Subgroup& k, ElemId x) {
    return type_ids.emplace(k.parent().permutation(x).cycle_type(), type_ids.size()).first->second;
  };
  for (std::size_t i = 0; i < k1.order(); ++i) type1[i] = type_of(k1, k1.members()[i]);
  for (std::size_t i = 0; i < k2.order(); ++i) type2[i] = type_of(k2, k2.members()[i]);
  auto compatible = [&](ElemId x, ElemId y) {
    return type1[k1.local_index(x)] == type2[k2.local_index(y)];
  };

  std::optional<Permutation> witness;
  for_each_isomorphism(
      k1, k2,
      [&](const Isomorphism& phi) {
        std::vector<bool> used(orb2.orbits.size(), false);
        std::vector<Point> sigma(n, 0);
        for (std::size_t i = 0; i < orb1.orbits.size(); ++i) {
          std::vector<bool> image_mask(k2.order(), false);
          for (std::size_t l = 0; l < k1.order(); ++l)
            if (stab1[i][l]) image_mask[k2.local_index(phi.images()[l])] = true;
          Point x = orb1.orbits[i].front();
          std::optional<Point> match;
          for (std::size_t j = 0; j < orb2.orbits.size() && !match; ++j) {
            if (used[j] || orb2.orbits[j].size() != orb1.orbits[i].size()) continue;
            for (Point y : orb2.orbits[j])
              if (stab2[y] == image_mask) {
                match = y;
                used[j] = true;
                break;
              }
          }
          if (!match) return false;
          for (std::size_t l = 0; l < k1.order(); ++l) {
            ElemId k = k1.members()[l];
            sigma[k1.parent().image(k, x)] = k2.parent().image(phi.images()[l], *match);
          }
        }
        Permutation s(sigma);
        Permutation si = s.inverse();
        for (ElemId g : k1.generators()) {
          Permutation c = si * k1.parent().permutation(g) * s;
          auto id = k2.parent().find(c);
          if (!id || !k2.contains(*id)) return false;
        }
        witness = std::move(s);
        return true;
      },
      compatible);
  return witness;
}

std::optional<Permutation> sn_subgroup_conjugate(const GroupSpec& k1, const GroupSpec& k2,
                                                 std::size_t max_order) {
  auto g1 = enumerate_group(k1, max_order);
  auto g2 = enumerate_group(k2, max_order);
  return sn_subgroup_conjugate(Subgroup::whole(g1), Subgroup::whole(g2));
}

}  // namespace gassmann
