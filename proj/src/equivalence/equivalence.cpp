#include "gassmann/equivalence.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gassmann/errors.hpp"
#include "gassmann/isomorphism.hpp"

namespace gassmann {

Ambient Ambient::enumerated(GroupPtr g) {
  Ambient a;
  a.degree_ = g->degree();
  a.classes_ = std::make_shared<const ConjugacyClasses>(conjugacy_classes(*g));
  a.group_ = std::move(g);
  return a;
}

Ambient Ambient::symmetric(std::size_t degree) {
  Ambient a;
  a.degree_ = degree;
  return a;
}

Relation Relation::parse(const std::string& text) {
  if (text == "rational") return rational();
  if (text == "local-integral") return local_integral();
  if (text == "solvable") return solvable();
  if (text.rfind("p-local:", 0) == 0) {
    auto p = static_cast<unsigned>(std::stoul(text.substr(8)));
    if (!is_prime(p)) throw PreconditionFailed(std::to_string(p) + " is not prime");
    return p_local(p);
  }
  throw PreconditionFailed("unknown relation '" + text + "'");
}

std::string Relation::name() const {
  switch (kind) {
    case Kind::Rational: return "rational";
    case Kind::PLocal: return "p-local:" + std::to_string(prime);
    case Kind::LocalIntegral: return "local-integral";
    case Kind::Solvable: return "solvable";
  }
  return "?";
}

nlohmann::json to_json(const EquivalenceReport& r) {
  nlohmann::json j;
  j["relation"] = r.relation.name();
  j["verdict"] = r.verdict;
  j["witness"] = nlohmann::json::array();
  for (auto [a, b] : r.witness) j["witness"].push_back({a, b});
  if (r.discrepancy) {
    nlohmann::json d;
    d["subgroup_gens"] = nlohmann::json::array();
    for (const auto& g : r.discrepancy->subgroup.generator_permutations()) d["subgroup_gens"].push_back(g.to_string());
    d["order"] = r.discrepancy->subgroup.order();
    d["chi1"] = r.discrepancy->chi1 ? nlohmann::json(*r.discrepancy->chi1) : nlohmann::json();
    d["chi2"] = r.discrepancy->chi2 ? nlohmann::json(*r.discrepancy->chi2) : nlohmann::json();
    d["count1"] = r.discrepancy->count1;
    d["count2"] = r.discrepancy->count2;
    j["discrepancy"] = d;
  } else {
    j["discrepancy"] = nullptr;
  }
  j["ambient_classes"] = r.ambient_classes;
  j["compared"] = {r.compared1, r.compared2};
  if (!r.failing_primes.empty()) j["failing_primes"] = r.failing_primes;
  return j;
}

std::size_t mark(const Subgroup& h, const Subgroup& k) {
  const auto& G = h.parent();
  auto inside = [&](ElemId g) {
    for (ElemId x : k.generators())
      if (!h.contains(G.conj(g, x))) return false;
    return true;
  };
  std::size_t count = 0;
  for (ElemId g = 0; g < G.order(); ++g)
    if (inside(g)) ++count;
  CosetAction act(h);
  std::size_t fixed = 0;
  for (ElemId r : act.reps())
    if (inside(r)) ++fixed;
  if (count % h.order() != 0 || count / h.order() != fixed)
    throw std::logic_error("mark disagrees with the fixed-coset count");
  return fixed;
}

ConjugacyBucketer::ConjugacyBucketer(Ambient ambient) : ambient_(std::move(ambient)) {}

std::vector<std::size_t> ConjugacyBucketer::key_of(const Subgroup& k) const {
  std::vector<std::size_t> key{k.order()};
  if (!ambient_.is_symmetric()) {
    std::vector<std::size_t> ids;
    for (ElemId x : k.members()) ids.push_back(ambient_.classes().class_of[x]);
    std::sort(ids.begin(), ids.end());
    key.insert(key.end(), ids.begin(), ids.end());
    return key;
  }
  const auto& G = k.parent();
  std::size_t n = G.degree();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> lens;
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
    lens.push_back(orb.size());
  }
  std::sort(lens.begin(), lens.end());
  key.push_back(lens.size());
  key.insert(key.end(), lens.begin(), lens.end());
  std::map<std::vector<std::size_t>, std::size_t> types;
  for (ElemId x : k.members()) ++types[G.permutation(x).cycle_type()];
  for (const auto& [t, c] : types) {
    key.push_back(t.size());
    key.insert(key.end(), t.begin(), t.end());
    key.push_back(c);
  }
  return key;
}

std::size_t ConjugacyBucketer::add(const Subgroup& k) {
  auto key = key_of(k);
  auto it = std::find_if(by_key_.begin(), by_key_.end(), [&](const auto& e) { return e.first == key; });
  if (it == by_key_.end()) {
    by_key_.push_back({key, {}});
    it = by_key_.end() - 1;
  }
  for (std::size_t b : it->second) {
    bool same = ambient_.is_symmetric() ? sn_subgroup_conjugate(reps_[b], k).has_value()
                                        : transporter(ambient_.group(), reps_[b], k).has_value();
    if (same) return b;
  }
  reps_.push_back(k);
  it->second.push_back(reps_.size() - 1);
  return reps_.size() - 1;
}

namespace {

void require_compatible(const Ambient& amb, const Subgroup& h1, const Subgroup& h2) {
  if (amb.is_symmetric()) {
    if (h1.parent().degree() != amb.degree() || h2.parent().degree() != amb.degree())
      throw DegreeMismatch("subgroup degree differs from the symmetric group's degree");
    return;
  }
  if (h1.parent_ptr() != amb.group() || h2.parent_ptr() != amb.group())
    throw PreconditionFailed("subgroups must be subgroups of the ambient enumerated group");
}

Discrepancy make_discrepancy(const Ambient& amb, const Subgroup& h1, const Subgroup& h2, Subgroup k, std::size_t c1,
                             std::size_t c2) {
  Discrepancy d;
  if (!amb.is_symmetric()) {
    d.chi1 = mark(h1, k);
    d.chi2 = mark(h2, k);
  }
  d.subgroup = std::move(k);
  d.count1 = c1;
  d.count2 = c2;
  return d;
}

}  // namespace

EquivalenceReport class_preserving_bijection(const Ambient& amb, const Subgroup& h1, const Subgroup& h2,
                                             const ClassSelector& selector, const EquivalenceOptions& opt) {
  require_compatible(amb, h1, h2);
  LatticeOptions lo;
  lo.selector = selector;
  lo.bound = opt.bound;
  auto l1 = all_subgroups(h1, lo);
  auto l2 = all_subgroups(h2, lo);
  ConjugacyBucketer buckets(amb);
  std::vector<std::size_t> b1, b2;
  for (const auto& k : l1) b1.push_back(buckets.add(k));
  for (const auto& k : l2) b2.push_back(buckets.add(k));

  std::size_t nb = buckets.bucket_count();
  std::vector<std::vector<std::size_t>> in1(nb), in2(nb);
  for (std::size_t i = 0; i < b1.size(); ++i) in1[b1[i]].push_back(i);
  for (std::size_t j = 0; j < b2.size(); ++j) in2[b2[j]].push_back(j);
  std::vector<std::size_t> order(nb);
  for (std::size_t b = 0; b < nb; ++b) order[b] = b;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return buckets.representative(a).order() > buckets.representative(b).order();
  });

  EquivalenceReport r;
  r.ambient_classes = nb;
  r.compared1 = l1.size();
  r.compared2 = l2.size();
  r.verdict = true;
  for (std::size_t b : order) {
    if (in1[b].size() != in2[b].size()) {
      r.verdict = false;
      r.discrepancy = make_discrepancy(amb, h1, h2, buckets.representative(b), in1[b].size(), in2[b].size());
      break;
    }
    for (std::size_t t = 0; t < in1[b].size(); ++t) r.witness.emplace_back(in1[b][t], in2[b][t]);
  }
  if (!r.verdict) r.witness.clear();
  std::sort(r.witness.begin(), r.witness.end());
  if (opt.cross_check && !amb.is_symmetric()) {
    // bucket counts agree exactly when marks agree on every compared subgroup
    bool marks_agree = true;
    for (std::size_t b = 0; b < nb && marks_agree; ++b)
      if (mark(h1, buckets.representative(b)) != mark(h2, buckets.representative(b))) marks_agree = false;
    if (marks_agree != r.verdict) throw std::logic_error("bucket counts and marks disagree");
  }
  return r;
}

EquivalenceReport rationally_equivalent(const Ambient& amb, const Subgroup& h1, const Subgroup& h2,
                                        const EquivalenceOptions& opt) {
  require_compatible(amb, h1, h2);
  EquivalenceReport r;
  r.relation = Relation::rational();
  r.compared1 = h1.order();
  r.compared2 = h2.order();
  // class key per element: conjugacy class id, or cycle type in symmetric mode
  std::map<std::vector<std::size_t>, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> by_class;
  auto key = [&](const Subgroup& h, ElemId x) -> std::vector<std::size_t> {
    if (amb.is_symmetric()) return h.parent().permutation(x).cycle_type();
    return {amb.classes().class_of[x]};
  };
  for (std::size_t i = 0; i < h1.order(); ++i) by_class[key(h1, h1.members()[i])].first.push_back(i);
  for (std::size_t j = 0; j < h2.order(); ++j) by_class[key(h2, h2.members()[j])].second.push_back(j);
  r.ambient_classes = by_class.size();
  r.verdict = true;
  for (const auto& [k, lists] : by_class) {
    const auto& [a, b] = lists;
    if (a.size() != b.size()) {
      r.verdict = false;
      const Subgroup& h = a.empty() ? h2 : h1;
      ElemId x = h.members()[a.empty() ? b.front() : a.front()];
      Subgroup cyc = closure(h.parent_ptr(), std::span<const ElemId>(&x, 1));
      r.discrepancy = make_discrepancy(amb, h1, h2, std::move(cyc), a.size(), b.size());
      break;
    }
    for (std::size_t t = 0; t < a.size(); ++t) r.witness.emplace_back(a[t], b[t]);
  }
  if (!r.verdict) r.witness.clear();
  std::sort(r.witness.begin(), r.witness.end());
  if (opt.cross_check) {
    auto cyc = class_preserving_bijection(amb, h1, h2, ClassSelector::cyclic(), opt);
    if (cyc.verdict != r.verdict) throw std::logic_error("class counts and cyclic-subgroup bijection disagree");
  }
  return r;
}

EquivalenceReport p_locally_equivalent(const Ambient& amb, const Subgroup& h1, const Subgroup& h2, unsigned p,
                                       const EquivalenceOptions& opt) {
  auto r = class_preserving_bijection(amb, h1, h2, ClassSelector::p_cyclic(p), opt);
  r.relation = Relation::p_local(p);
  return r;
}

EquivalenceReport locally_integrally_equivalent(const Ambient& amb, const Subgroup& h1, const Subgroup& h2,
                                                const EquivalenceOptions& opt) {
  auto rat = rationally_equivalent(amb, h1, h2, opt);
  if (!rat.verdict) {
    rat.relation = Relation::local_integral();
    return rat;
  }
  // For p not dividing |H1| every p-cyclic subgroup of H1 or H2 is cyclic, so
  // the p-local condition is the rational one checked above.
  std::optional<EquivalenceReport> first_failure;
  std::vector<unsigned> failing;
  for (unsigned p : prime_divisors(h1.order())) {
    auto r = p_locally_equivalent(amb, h1, h2, p, opt);
    if (!r.verdict) {
      failing.push_back(p);
      if (!first_failure) first_failure = std::move(r);
    }
  }
  if (first_failure) {
    first_failure->relation = Relation::local_integral();
    first_failure->failing_primes = failing;
    return *first_failure;
  }
  auto any = class_preserving_bijection(amb, h1, h2, ClassSelector::p_cyclic_any_prime(), opt);
  if (!any.verdict) throw std::logic_error("p-local bijections exist but the p-cyclic-any bijection does not");
  any.relation = Relation::local_integral();
  return any;
}

EquivalenceReport solvably_equivalent(const Ambient& amb, const Subgroup& h1, const Subgroup& h2,
                                      const EquivalenceOptions& opt) {
  auto r = class_preserving_bijection(amb, h1, h2, ClassSelector::solvable(), opt);
  r.relation = Relation::solvable();
  return r;
}

EquivalenceReport check_relation(const Ambient& amb, const Subgroup& h1, const Subgroup& h2, const Relation& rel,
                                 const EquivalenceOptions& opt) {
  switch (rel.kind) {
    case Relation::Kind::Rational: return rationally_equivalent(amb, h1, h2, opt);
    case Relation::Kind::PLocal: return p_locally_equivalent(amb, h1, h2, rel.prime, opt);
    case Relation::Kind::LocalIntegral: return locally_integrally_equivalent(amb, h1, h2, opt);
    case Relation::Kind::Solvable: return solvably_equivalent(amb, h1, h2, opt);
  }
  throw PreconditionFailed("unknown relation");
}

std::vector<std::vector<std::size_t>> ClassPartition::nontrivial() const {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& b : blocks)
    if (b.size() >= 2) out.push_back(b);
  return out;
}

ClassPartition partition_subgroup_classes(const Ambient& amb, const Relation& rel, std::vector<Subgroup> candidates,
                                          const EquivalenceOptions& opt) {
  if (amb.is_symmetric()) throw PreconditionFailed("partitioning needs an enumerated group");
  ClassPartition out;
  if (candidates.empty()) {
    LatticeOptions lo;
    lo.bound = std::max(opt.bound, amb.group()->order());
    for (auto& c : subgroup_classes(Subgroup::whole(amb.group()), lo)) candidates.push_back(std::move(c.representative));
  }
  out.candidates = std::move(candidates);
  // Every relation implies rational equivalence, which is decided by class counts.
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_counts;
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    std::vector<std::size_t> counts(amb.classes().count(), 0);
    for (ElemId x : out.candidates[i].members()) ++counts[amb.classes().class_of[x]];
    by_counts[counts].push_back(i);
  }
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> ordered;
  for (auto& [counts, ids] : by_counts) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i : ids) {
      bool placed = false;
      for (auto& b : blocks) {
        if (check_relation(amb, out.candidates[b.front()], out.candidates[i], rel, opt).verdict) {
          b.push_back(i);
          placed = true;
          break;
        }
      }
      if (!placed) blocks.push_back({i});
    }
    for (auto& b : blocks) ordered.emplace_back(b.front(), std::move(b));
  }
  std::sort(ordered.begin(), ordered.end());
  for (auto& [first, b] : ordered) out.blocks.push_back(std::move(b));
  return out;
}

bool gassmann_faithful(const Subgroup& h1, const Subgroup& h2) {
  (void)h2;
  return normal_core(h1).is_trivial();
}

}  // namespace gassmann
