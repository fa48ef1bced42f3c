#include <doctest.h>

#include <set>

#include "gassmann/errors.hpp"
#include "gassmann/fingerprint.hpp"
#include "gassmann/isomorphism.hpp"
#include "support.hpp"

using namespace gassmann;

namespace {

void check_closed_and_distinct(const std::vector<Subgroup>& subs) {
  std::set<std::vector<ElemId>> distinct;
  for (const auto& s : subs) {
    const auto& g = s.parent();
    CHECK(s.contains(EnumeratedGroup::identity()));
    for (ElemId x : s.members())
      for (ElemId y : s.generators()) CHECK(s.contains(g.mul(x, y)));
    distinct.insert({s.members().begin(), s.members().end()});
  }
  CHECK(distinct.size() == subs.size());
}

}  // namespace

TEST_CASE("subgroup counts against brute force") {
  auto c5 = test::group(5, "(1 2 3 4 5)");
  CHECK(all_subgroups(Subgroup::whole(c5)).size() == 2);
  auto s4 = test::group(4, "(1 2); (1 2 3 4)");
  auto s4_subs = all_subgroups(Subgroup::whole(s4));
  CHECK(s4_subs.size() == 30);
  check_closed_and_distinct(s4_subs);
  CHECK(subgroup_classes(Subgroup::whole(s4)).size() == 11);
  auto d6 = test::group(6, "(1 2 3 4 5 6); (1 6)(2 5)(3 4)");
  CHECK(all_subgroups(Subgroup::whole(d6)).size() == 16);
  auto s5 = test::group(5, "(1 2); (1 2 3 4 5)");
  auto s5_subs = all_subgroups(Subgroup::whole(s5));
  CHECK(s5_subs.size() == 156);
  check_closed_and_distinct(s5_subs);

  // monotone along S4 > A4 > V4
  auto a4 = test::sub(s4, "(1 2 3); (2 3 4)");
  auto v4 = test::sub(s4, "(1 2)(3 4); (1 3)(2 4)");
  CHECK(all_subgroups(a4).size() == 10);
  CHECK(all_subgroups(v4).size() == 5);
}

TEST_CASE("lattice respects bound and filters") {
  auto s5 = test::group(5, "(1 2); (1 2 3 4 5)");
  LatticeOptions small;
  small.bound = 100;
  CHECK_THROWS_AS(subgroup_classes(Subgroup::whole(s5), small), OrderExceeded);
  LatticeOptions odd;
  odd.order_filter = [](std::size_t n) { return n % 2 == 1; };
  for (const auto& s : all_subgroups(Subgroup::whole(s5), odd)) CHECK(s.order() % 2 == 1);
  // A5 is found even though it is not reached by adjoining prime-order elements layer by layer
  std::size_t a5 = 0;
  for (const auto& c : subgroup_classes(Subgroup::whole(s5)))
    if (c.representative.order() == 60) ++a5;
  CHECK(a5 == 1);
  LatticeOptions solv;
  solv.selector = ClassSelector::solvable();
  for (const auto& c : subgroup_classes(Subgroup::whole(s5), solv)) CHECK(c.representative.order() != 60);
}

TEST_CASE("solvability") {
  auto d8 = test::group(4, "(1 2 3 4); (1 3)");
  CHECK(is_solvable(Subgroup::whole(d8)));
  auto a5 = test::group(5, "(1 2 3); (1 2 3 4 5)");
  REQUIRE(a5->order() == 60);
  CHECK_FALSE(is_solvable(Subgroup::whole(a5)));
  CHECK(derived_subgroup(Subgroup::whole(a5)).order() == 60);
  auto d6 = test::group(6, "(1 2 3 4 5 6); (1 6)(2 5)(3 4)");
  CHECK(is_solvable(Subgroup::whole(d6)));
  CHECK(derived_series_orders(Subgroup::whole(d6)) == std::vector<std::size_t>{12, 3, 1});
}

TEST_CASE("p-cyclicity") {
  auto c6 = test::group(6, "(1 2 3 4 5 6)");
  for (unsigned p : {2u, 3u, 5u, 7u}) CHECK(is_p_cyclic(Subgroup::whole(c6), p));
  auto q8 = test::group(8, "(1 2 4 7)(3 6 8 5); (1 3 4 8)(2 5 7 6)");
  REQUIRE(q8->order() == 8);
  CHECK(is_p_cyclic(Subgroup::whole(q8), 2));
  CHECK_FALSE(is_p_cyclic(Subgroup::whole(q8), 3));
  auto s3 = test::group(3, "(1 2); (1 2 3)");
  CHECK(is_p_cyclic(Subgroup::whole(s3), 3));
  CHECK_FALSE(is_p_cyclic(Subgroup::whole(s3), 2));
  CHECK(p_core(Subgroup::whole(s3), 3).order() == 3);
  CHECK(p_core(Subgroup::whole(s3), 2).is_trivial());
  CHECK(is_hypo_elementary(Subgroup::whole(s3)));
  auto d6 = test::group(6, "(1 2 3 4 5 6); (1 6)(2 5)(3 4)");
  CHECK_FALSE(is_hypo_elementary(Subgroup::whole(d6)));
}

TEST_CASE("p-cyclicity over every subgroup class of A4 x S5") {
  auto g = test::group_file("a4xs5.grp");
  auto classes = subgroup_classes(Subgroup::whole(g));
  CHECK(classes.size() > 50);
  for (const auto& c : classes) {
    const auto& k = c.representative;
    bool cyc = is_cyclic(k);
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      bool pc = is_p_cyclic(k, p);
      if (cyc || is_p_group(k, p)) CHECK(pc);
      if (k.order() % p != 0) CHECK(pc == cyc);
    }
  }
}

TEST_CASE("fingerprints and statistics") {
  auto s4 = test::group(4, "(1 2); (1 2 3 4)");
  auto fp = fingerprint(Subgroup::whole(s4));
  CHECK(fp.order == 24);
  CHECK(fp.center_order == 1);
  CHECK(fp.derived_series == std::vector<std::size_t>{24, 12, 4, 1});
  CHECK(fp.abelian_invariants == std::vector<std::size_t>{2});
  CHECK(fp.class_count == 5);
  auto c2c6 = test::group(8, "(1 2); (3 4 5)(6 7 8); (3 6)(4 7)(5 8)");
  CHECK(fingerprint(Subgroup::whole(c2c6)).abelian_invariants == std::vector<std::size_t>{2, 2, 3});

  auto triv = p_statistics(Subgroup::trivial(s4), ClassSelector::cyclic());
  REQUIRE(triv.size() == 1);
  CHECK(triv[0].count == 1);
  auto v4 = test::sub(s4, "(1 2)(3 4); (1 3)(2 4)");
  auto c4 = test::sub(s4, "(1 2 3 4)");
  auto st_v4 = p_statistics(v4, ClassSelector::cyclic());
  auto st_c4 = p_statistics(c4, ClassSelector::cyclic());
  CHECK_FALSE(same_statistics(st_v4, st_c4));
  std::size_t v4_c2 = 0, c4_c2 = 0;
  for (const auto& e : st_v4)
    if (e.fingerprint.order == 2) v4_c2 = e.count;
  for (const auto& e : st_c4)
    if (e.fingerprint.order == 2) c4_c2 = e.count;
  CHECK(v4_c2 == 3);
  CHECK(c4_c2 == 1);
}

TEST_CASE("isomorphism is an equivalence consistent with fingerprints") {
  auto s4 = test::group(4, "(1 2); (1 2 3 4)");
  auto subs = all_subgroups(Subgroup::whole(s4));
  for (const auto& a : subs) {
    CHECK(is_isomorphic(a, a));
    for (const auto& b : subs) {
      bool ab = is_isomorphic(a, b);
      CHECK(ab == is_isomorphic(b, a));
      if (ab) CHECK(fingerprint(a) == fingerprint(b));
    }
  }
  auto h1 = test::group_file("s21_h1.grp");
  auto h2 = test::group_file("s21_h2.grp");
  CHECK(h1->order() == 48);
  CHECK(h2->order() == 48);
  CHECK_FALSE(is_isomorphic(Subgroup::whole(h1), Subgroup::whole(h2)));
}
