#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "gassmann/arith.hpp"
#include "gassmann/errors.hpp"

namespace gassmann {

void validate(const LocalDatum& datum, bool allow_noncyclic) {
  const auto& d = datum.decomposition;
  const auto& i = datum.inertia;
  if (&d.parent() != &i.parent()) throw InvalidDatum("D and I lie in different groups");
  if (!i.is_subgroup_of(d)) throw InvalidDatum("inertia group is not contained in the decomposition group");
  if (allow_noncyclic) return;
  if (!is_normal_in(i, d)) throw InvalidDatum("inertia group is not normal in the decomposition group");
  const auto& g = d.parent();
  const std::size_t quotient = d.order() / i.order();
  for (ElemId x : d.members()) {
    std::size_t k = 1;
    for (ElemId y = x; !i.contains(y); y = g.mul(y, x)) ++k;
    if (k == quotient) return;
  }
  throw InvalidDatum("D/I is not cyclic");
}

SplittingPattern SplittingPattern::from_factors(std::vector<PrimeFactor> primes) {
  for (auto& p : primes)
    if (p.e == 0 || p.f == 0) throw InvalidDatum("ramification index and residue degree must be positive");
  std::sort(primes.begin(), primes.end());
  return SplittingPattern{std::move(primes)};
}

std::size_t SplittingPattern::degree() const {
  std::size_t n = 0;
  for (auto& p : primes) n += p.e * p.f;
  return n;
}

std::size_t SplittingPattern::sum_e() const {
  std::size_t n = 0;
  for (auto& p : primes) n += p.e;
  return n;
}

std::uint64_t SplittingPattern::product_e() const {
  std::uint64_t n = 1;
  for (auto& p : primes) n *= p.e;
  return n;
}

std::vector<std::pair<PrimeFactor, std::size_t>> SplittingPattern::counts() const {
  std::vector<std::pair<PrimeFactor, std::size_t>> out;
  for (auto& p : primes) {
    if (out.empty() || out.back().first != p) out.emplace_back(p, 0);
    ++out.back().second;
  }
  return out;
}

std::string SplittingPattern::to_string() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < primes.size(); ++k) {
    out << (k ? " " : "") << 'p' << k + 1;
    if (primes[k].e > 1) out << '^' << primes[k].e;
    if (primes[k].f > 1) out << "[f=" << primes[k].f << ']';
  }
  return out.str();
}

nlohmann::json to_json(const SplittingPattern& p) {
  auto out = nlohmann::json::array();
  for (auto& [pf, count] : p.counts()) out.push_back({pf.e, pf.f, count});
  return out;
}

namespace {

// orbit id of every coset under the subgroup s
std::vector<std::uint32_t> orbits_of(const CosetAction& act, const Subgroup& s, std::uint32_t* count) {
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> orbit(act.size(), kUnset);
  std::uint32_t n = 0;
  std::deque<std::uint32_t> queue;
  for (std::uint32_t start = 0; start < act.size(); ++start) {
    if (orbit[start] != kUnset) continue;
    orbit[start] = n;
    queue.push_back(start);
    while (!queue.empty()) {
      auto c = queue.front();
      queue.pop_front();
      for (ElemId x : s.generators()) {
        auto next = act.act(c, x);
        if (orbit[next] == kUnset) {
          orbit[next] = n;
          queue.push_back(next);
        }
      }
    }
    ++n;
  }
  *count = n;
  return orbit;
}

}  // namespace

SplittingPattern splitting_pattern(const Subgroup& h, const LocalDatum& datum, const SplittingOptions& opt) {
  validate(datum, opt.allow_noncyclic);
  if (&h.parent() != &datum.decomposition.parent()) throw InvalidDatum("H and D lie in different groups");
  CosetAction act(h);
  std::uint32_t nd = 0, ni = 0;
  auto d_orbit = orbits_of(act, datum.decomposition, &nd);
  auto i_orbit = orbits_of(act, datum.inertia, &ni);
  std::vector<std::size_t> d_size(nd, 0), i_size(ni, 0);
  for (std::size_t c = 0; c < act.size(); ++c) {
    ++d_size[d_orbit[c]];
    ++i_size[i_orbit[c]];
  }
  std::vector<std::size_t> e(nd, 0);
  for (std::size_t c = 0; c < act.size(); ++c) {
    auto& slot = e[d_orbit[c]];
    if (slot == 0) slot = i_size[i_orbit[c]];
    if (slot != i_size[i_orbit[c]]) throw std::logic_error("inertia orbits inside one decomposition orbit differ");
  }
  std::vector<PrimeFactor> primes;
  for (std::uint32_t o = 0; o < nd; ++o) primes.push_back({e[o], d_size[o] / e[o]});
  auto out = SplittingPattern::from_factors(std::move(primes));
  if (out.degree() != h.index()) throw std::logic_error("sum of e*f differs from the index");
  return out;
}

RamificationDiagnostics ramification_diagnostics(const SplittingPattern& p1, const SplittingPattern& p2) {
  RamificationDiagnostics r;
  r.sum_e1 = p1.sum_e();
  r.sum_e2 = p2.sum_e();
  r.product_e1 = p1.product_e();
  r.product_e2 = p2.product_e();
  r.sum_equal = r.sum_e1 == r.sum_e2;
  r.product_equal = r.product_e1 == r.product_e2;
  r.multiset_equal = p1.primes == p2.primes;
  return r;
}

DSetComparison dsets_isomorphic(const Subgroup& h1, const Subgroup& h2, const Subgroup& d) {
  return dsets_isomorphic(CosetAction(h1), CosetAction(h2), d);
}

DSetComparison dsets_isomorphic(const CosetAction& a1, const CosetAction& a2, const Subgroup& d) {
  if (&a1.subgroup().parent() != &d.parent() || &a2.subgroup().parent() != &d.parent())
    throw PreconditionFailed("subgroups of different groups");
  struct Entry {
    Subgroup stabilizer;
    std::size_t count1 = 0, count2 = 0;
  };
  std::vector<Entry> classes;
  auto add = [&](const CosetAction& act, bool first) {
    std::uint32_t n = 0;
    auto orbit = orbits_of(act, d, &n);
    std::vector<bool> seen(n, false);
    for (std::uint32_t c = 0; c < act.size(); ++c) {
      if (seen[orbit[c]]) continue;
      seen[orbit[c]] = true;
      std::vector<ElemId> stab;
      for (ElemId x : d.members())
        if (act.act(c, x) == c) stab.push_back(x);
      auto s = Subgroup::from_members(d.parent_ptr(), std::move(stab));
      auto it = std::find_if(classes.begin(), classes.end(), [&](const Entry& e) {
        return e.stabilizer.order() == s.order() && transporter(d, e.stabilizer, s).has_value();
      });
      if (it == classes.end()) {
        classes.push_back({s});
        it = classes.end() - 1;
      }
      ++(first ? it->count1 : it->count2);
    }
    return n;
  };
  DSetComparison out;
  out.orbits = add(a1, true);
  add(a2, false);
  out.isomorphic = true;
  for (auto& e : classes) {
    if (e.count1 != e.count2) {
      out.isomorphic = false;
      out.stabilizer = e.stabilizer;
      out.count1 = e.count1;
      out.count2 = e.count2;
      break;
    }
  }
  return out;
}

}  // namespace gassmann
