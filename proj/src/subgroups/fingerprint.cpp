#include "gassmann/fingerprint.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gassmann/isomorphism.hpp"

namespace gassmann {

std::string IsoFingerprint::to_string() const {
  std::ostringstream os;
  os << "order=" << order << " orders=[";
  for (std::size_t i = 0; i < element_orders.size(); ++i)
    os << (i ? "," : "") << element_orders[i].first << ":" << element_orders[i].second;
  os << "] center=" << center_order << " derived=[";
  for (std::size_t i = 0; i < derived_series.size(); ++i) os << (i ? "," : "") << derived_series[i];
  os << "] abelian=[";
  for (std::size_t i = 0; i < abelian_invariants.size(); ++i) os << (i ? "," : "") << abelian_invariants[i];
  os << "] classes=" << class_count;
  return os.str();
}

std::vector<std::size_t> abelian_quotient_invariants(const Subgroup& s, const Subgroup& n) {
  const auto& G = s.parent();
  std::vector<std::uint32_t> coset(s.order(), 0xffffffffu);
  std::vector<ElemId> reps;
  for (std::size_t i = 0; i < s.order(); ++i) {
    if (coset[i] != 0xffffffffu) continue;
    ElemId x = s.members()[i];
    for (ElemId m : n.members()) coset[s.local_index(G.mul(m, x))] = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
  }
  std::vector<std::size_t> coset_order;
  for (ElemId r : reps) {
    std::size_t j = 1;
    for (ElemId y = r; !n.contains(y); y = G.mul(y, r)) ++j;
    coset_order.push_back(j);
  }
  std::size_t a = reps.size();
  std::vector<std::size_t> out;
  std::size_t rest = a;
  for (std::size_t p = 2; rest > 1; ++p) {
    if (rest % p) continue;
    std::size_t full = 1;
    while (rest % p == 0) {
      rest /= p;
      full *= p;
    }
    // ranks[k] = number of cyclic factors of exponent >= k
    std::vector<std::size_t> logs{0};
    for (std::size_t pk = p;; pk *= p) {
      std::size_t cnt = 0;
      for (std::size_t o : coset_order)
        if (pk % o == 0) ++cnt;
      std::size_t lg = 0;
      for (std::size_t c = cnt; c > 1; c /= p) ++lg;
      logs.push_back(lg);
      if (cnt == full) break;
    }
    for (std::size_t k = 1; k < logs.size(); ++k) {
      std::size_t at_least_k = logs[k] - logs[k - 1];
      std::size_t at_least_next = k + 1 < logs.size() ? logs[k + 1] - logs[k] : 0;
      std::size_t pk = 1;
      for (std::size_t e = 0; e < k; ++e) pk *= p;
      for (std::size_t c = at_least_next; c < at_least_k; ++c) out.push_back(pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

IsoFingerprint fingerprint(const Subgroup& s) {
  IsoFingerprint fp;
  fp.order = s.order();
  std::map<std::size_t, std::size_t> orders;
  for (ElemId x : s.members()) ++orders[s.parent().element_order(x)];
  fp.element_orders.assign(orders.begin(), orders.end());
  fp.center_order = center(s).order();
  fp.derived_series = derived_series_orders(s);
  fp.abelian_invariants = abelian_quotient_invariants(s, derived_subgroup(s));
  fp.class_count = local_conjugacy_classes(s).sizes.size();
  return fp;
}

bool is_isomorphic(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return false;
  return find_isomorphism(a, b).has_value();
}

std::vector<StatisticsEntry> p_statistics(const Subgroup& h, const ClassSelector& selector, std::size_t bound) {
  LatticeOptions opt;
  opt.selector = selector;
  opt.bound = bound;
  std::vector<StatisticsEntry> out;
  for (auto& k : all_subgroups(h, opt)) {
    IsoFingerprint fp = fingerprint(k);
    bool placed = false;
    for (auto& e : out)
      if (e.fingerprint == fp && is_isomorphic(e.representative, k)) {
        ++e.count;
        placed = true;
        break;
      }
    if (!placed) out.push_back({std::move(fp), std::move(k), 1});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const StatisticsEntry& a, const StatisticsEntry& b) { return a.fingerprint < b.fingerprint; });
  return out;
}

bool same_statistics(const std::vector<StatisticsEntry>& a, const std::vector<StatisticsEntry>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& e : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size() && !matched; ++j) {
      if (used[j] || b[j].count != e.count || b[j].fingerprint != e.fingerprint) continue;
      if (!is_isomorphic(e.representative, b[j].representative)) continue;
      used[j] = matched = true;
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace gassmann
