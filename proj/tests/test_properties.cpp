#include <doctest.h>

#include <filesystem>
#include <random>

#include "gassmann/arith.hpp"
#include "gassmann/equivalence.hpp"
#include "gassmann/homdet.hpp"
#include "gassmann/linear.hpp"
#include "support.hpp"

using namespace gassmann;

namespace {

std::vector<SubgroupClass> classes_of(const Subgroup& universe, const ClassSelector& sel, bool keep = false) {
  LatticeOptions opt;
  opt.selector = sel;
  opt.keep_conjugates = keep;
  return subgroup_classes(universe, opt);
}

std::vector<Subgroup> reps_of(const Subgroup& universe, const ClassSelector& sel) {
  std::vector<Subgroup> out;
  for (auto& c : classes_of(universe, sel)) out.push_back(c.representative);
  return out;
}

std::vector<Subgroup> in_either(const Subgroup& h1, const Subgroup& h2, const ClassSelector& sel) {
  auto a = reps_of(h1, sel), b = reps_of(h2, sel);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// The six conditions for P-equivalence, each evaluated independently.
std::array<bool, 6> p_conditions(const Ambient& amb, const std::vector<SubgroupClass>& p_classes, const Subgroup& h1,
                                 const Subgroup& h2, const ClassSelector& sel) {
  std::array<bool, 6> c{};
  c[0] = class_preserving_bijection(amb, h1, h2, sel).verdict;
  c[1] = std::all_of(p_classes.begin(), p_classes.end(), [&](const SubgroupClass& k) {
    std::size_t n1 = 0, n2 = 0;
    for (auto& conj : k.members) {
      n1 += conj.is_subgroup_of(h1);
      n2 += conj.is_subgroup_of(h2);
    }
    return n1 == n2;
  });
  c[2] = std::all_of(p_classes.begin(), p_classes.end(),
                     [&](const SubgroupClass& k) { return mark(h1, k.representative) == mark(h2, k.representative); });
  auto local = in_either(h1, h2, sel);
  c[3] = std::all_of(local.begin(), local.end(), [&](const Subgroup& k) { return mark(h1, k) == mark(h2, k); });
  c[4] = std::all_of(p_classes.begin(), p_classes.end(),
                     [&](const SubgroupClass& k) { return dsets_isomorphic(h1, h2, k.representative).isomorphic; });
  c[5] = std::all_of(local.begin(), local.end(), [&](const Subgroup& k) { return dsets_isomorphic(h1, h2, k).isomorphic; });
  return c;
}

bool all_same(const std::array<bool, 6>& c) {
  return std::all_of(c.begin(), c.end(), [&](bool x) { return x == c[0]; });
}

void check_p_equivalence_conditions(const GroupPtr& g, const ClassSelector& sel, std::size_t* equivalent_pairs) {
  auto amb = Ambient::enumerated(g);
  auto whole = Subgroup::whole(g);
  auto p_classes = classes_of(whole, sel, true);
  auto all = reps_of(whole, ClassSelector::all());
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a; b < all.size(); ++b) {
      auto c = p_conditions(amb, p_classes, all[a], all[b], sel);
      INFO(sel.name(), " pair ", a, ",", b);
      CHECK(all_same(c));
      *equivalent_pairs += c[0];
    }
  }
}

// Rational equivalence read off class counts, cyclic marks, cyclic K-sets and a determinant.
std::array<bool, 5> rational_conditions(const Ambient& amb, const std::vector<Subgroup>& cyclic, const CosetAction& a1,
                                        const CosetAction& a2) {
  const auto& h1 = a1.subgroup();
  const auto& h2 = a2.subgroup();
  std::array<bool, 5> c{};
  const auto& cls = amb.classes();
  std::vector<std::size_t> n1(cls.count(), 0), n2(cls.count(), 0);
  for (ElemId x : h1.members()) ++n1[cls.class_of[x]];
  for (ElemId x : h2.members()) ++n2[cls.class_of[x]];
  c[0] = n1 == n2;
  c[1] = std::all_of(cyclic.begin(), cyclic.end(), [&](const Subgroup& k) { return mark(h1, k) == mark(h2, k); });
  c[2] = std::all_of(cyclic.begin(), cyclic.end(),
                     [&](const Subgroup& k) { return dsets_isomorphic(a1, a2, k).isomorphic; });
  c[3] = rationally_equivalent(amb, h1, h2).verdict;
  if (h1.order() != h2.order()) {
    c[4] = false;
  } else {
    c[4] = determinant_nonzero(double_cosets(h1, h2).pattern);
  }
  return c;
}

void check_rational_conditions(const GroupPtr& g, const std::vector<Subgroup>& subgroups, std::size_t* equivalent) {
  auto amb = Ambient::enumerated(g);
  auto cyclic = reps_of(Subgroup::whole(g), ClassSelector::cyclic());
  std::vector<CosetAction> actions;
  for (const auto& h : subgroups) actions.emplace_back(h);
  for (std::size_t a = 0; a < subgroups.size(); ++a) {
    for (std::size_t b = a; b < subgroups.size(); ++b) {
      auto c = rational_conditions(amb, cyclic, actions[a], actions[b]);
      INFO("pair ", a, ",", b);
      CHECK(std::all_of(c.begin(), c.end(), [&](bool x) { return x == c[0]; }));
      *equivalent += c[0];
    }
  }
}

// Solvable => local integral => p-local at every p => rational; conjugate => all.
void check_hierarchy(const Ambient& amb, const Subgroup& h1, const Subgroup& h2, bool conjugate) {
  bool rational = rationally_equivalent(amb, h1, h2).verdict;
  bool local = locally_integrally_equivalent(amb, h1, h2).verdict;
  bool solvable = solvably_equivalent(amb, h1, h2).verdict;
  bool every_p = true;
  for (unsigned p : prime_divisors(h1.order())) every_p = every_p && p_locally_equivalent(amb, h1, h2, p).verdict;
  if (h1.order() != h2.order()) CHECK_FALSE(rational);
  if (solvable) CHECK(local);
  if (local) CHECK(rational);
  if (h1.order() == h2.order()) CHECK(local == (rational && every_p));
  if (conjugate) CHECK((rational && local && solvable));
}

}  // namespace

TEST_CASE("P-equivalence conditions agree on S4") {
  auto g = test::group(4, "(1 2 3 4);(1 2)");
  std::size_t equivalent = 0;
  for (auto sel : {ClassSelector::all(), ClassSelector::cyclic(), ClassSelector::solvable(),
                   ClassSelector::p_cyclic(2), ClassSelector::p_cyclic(3), ClassSelector::p_cyclic_any_prime()})
    check_p_equivalence_conditions(g, sel, &equivalent);
  // only the 11 diagonal pairs, for each of the 6 classes
  CHECK(equivalent == 66);
}

TEST_CASE("P-equivalence conditions agree on S5") {
  auto g = test::group(5, "(1 2 3 4 5);(1 2)");
  std::size_t equivalent = 0;
  for (auto sel : {ClassSelector::all(), ClassSelector::cyclic(), ClassSelector::solvable(), ClassSelector::p_cyclic(2)})
    check_p_equivalence_conditions(g, sel, &equivalent);
  CHECK(equivalent == 4 * 19);
}

TEST_CASE("rational equivalence conditions agree on S4, S5 and A4 x S5") {
  std::size_t equivalent = 0;
  for (auto g : {test::group(4, "(1 2 3 4);(1 2)"), test::group(5, "(1 2 3 4 5);(1 2)")}) {
    equivalent = 0;
    auto subs = reps_of(Subgroup::whole(g), ClassSelector::all());
    check_rational_conditions(g, subs, &equivalent);
    CHECK(equivalent == subs.size());
  }

  auto g = test::group_file("a4xs5.grp");
  LatticeOptions opt;
  opt.order_filter = [](std::size_t n) { return 12 % n == 0; };
  std::vector<Subgroup> order12;
  for (auto& c : subgroup_classes(Subgroup::whole(g), opt))
    if (c.representative.order() == 12) order12.push_back(c.representative);
  equivalent = 0;
  check_rational_conditions(g, order12, &equivalent);
  // one nontrivial pair on top of the diagonal
  CHECK(equivalent == order12.size() + 1);
}

TEST_CASE("relation hierarchy on fixture pairs") {
  {
    auto g = test::group_file("a4xs5.grp");
    auto h1 = test::sub_file(g, "a4xs5_h1.grp"), h2 = test::sub_file(g, "a4xs5_h2.grp");
    auto amb = Ambient::enumerated(g);
    check_hierarchy(amb, h1, h2, false);
    check_hierarchy(amb, h1, h1, true);
  }
  {
    auto g = test::group_file("32t9403.grp");
    auto h1 = test::sub_file(g, "32t9403_h1.grp"), h2 = test::sub_file(g, "32t9403_h2.grp");
    auto amb = Ambient::enumerated(g);
    check_hierarchy(amb, h1, h2, false);
    check_hierarchy(amb, h2, h2, true);
  }
  {
    auto h1 = Subgroup::whole(test::group_file("s21_h1.grp"));
    auto h2 = Subgroup::whole(test::group_file("s21_h2.grp"));
    check_hierarchy(Ambient::symmetric(21), h1, h2, false);
  }
  {
    auto g = test::group(5, "(1 2 3 4 5);(1 2)");
    auto amb = Ambient::enumerated(g);
    auto subs = reps_of(Subgroup::whole(g), ClassSelector::all());
    for (std::size_t a = 0; a < subs.size(); ++a)
      for (std::size_t b = a; b < subs.size(); ++b) check_hierarchy(amb, subs[a], subs[b], a == b);
  }
}

TEST_CASE("Lagrange, coset and core invariants") {
  std::vector<GroupPtr> groups{test::group(4, "(1 2 3 4);(1 2)"), test::group(5, "(1 2 3 4 5);(1 2)"),
                               test::group_file("a4xs5.grp"), test::group_file("32t9403.grp"),
                               build_linear_group(LinearKind::SL2, 7).group(),
                               build_linear_group(LinearKind::PSL2, 11).group()};
  std::mt19937_64 rng(11);
  for (const auto& g : groups) {
    auto whole = Subgroup::whole(g);
    LatticeOptions opt;
    opt.bound = g->order();
    // the largest groups get a divisor-closed order filter to keep the lattice small
    if (g->order() > 400) opt.order_filter = [](std::size_t n) { return 24 % n == 0; };
    for (auto& c : subgroup_classes(whole, opt)) {
      const auto& h = c.representative;
      CHECK(h.order() * h.index() == g->order());
      CHECK(g->order() % h.order() == 0);
      CosetAction act(h);
      CHECK(act.size() == h.index());
      for (int t = 0; t < 5; ++t) {
        ElemId x = rng() % g->order(), y = rng() % g->order();
        std::uint32_t cst = rng() % act.size();
        CHECK(act.act(act.act(cst, x), y) == act.act(cst, g->mul(x, y)));
      }
      auto core = normal_core(h);
      CHECK(core.is_subgroup_of(h));
      CHECK(is_normal_in(core, whole));
      CHECK(core == act.kernel());
      CHECK(c.size * normalizer(whole, h).order() == g->order());
    }
  }
}

TEST_CASE("solvably equivalent pairs are isomorphic D-sets for solvable D") {
  auto check_pair = [](const Subgroup& h1, const Subgroup& h2, std::size_t* checked) {
    CosetAction a1(h1), a2(h2);
    for (const auto* h : {&h1, &h2})
      for (const auto& d : reps_of(*h, ClassSelector::solvable())) {
        CHECK(dsets_isomorphic(a1, a2, d).isomorphic);
        ++*checked;
      }
  };
  std::size_t checked = 0;
  auto fam = verify_solvable_family(29);
  REQUIRE(fam.solvable_sl2.verdict);
  check_pair(fam.h1, fam.h2, &checked);
  CHECK(checked > 10);

  auto file = test::fixture("optional/16t1654.grp");
  if (std::filesystem::exists(file)) {
    auto g = enumerate_group(parse_group_file(file));
    LatticeOptions opt;
    opt.bound = g->order();
    opt.order_filter = [](std::size_t n) { return 60 % n == 0; };
    std::vector<Subgroup> order60;
    for (auto& c : subgroup_classes(Subgroup::whole(g), opt))
      if (c.representative.order() == 60) order60.push_back(c.representative);
    auto part = partition_subgroup_classes(Ambient::enumerated(g), Relation::solvable(), order60);
    auto blocks = part.nontrivial();
    REQUIRE(blocks.size() == 1);
    check_pair(part.candidates[blocks[0][0]], part.candidates[blocks[0][1]], &checked);
  }
}
