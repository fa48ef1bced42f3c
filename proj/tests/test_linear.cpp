#include <doctest.h>

#include <algorithm>

#include "gassmann/errors.hpp"
#include "gassmann/linear.hpp"
#include "gassmann/properties.hpp"

using namespace gassmann;

TEST_CASE("matrix arithmetic mod p") {
  Mat2 m{7, 2, 3, 1, 4};
  CHECK(m.det() == 5);
  CHECK(m * m.inverse() == Mat2::identity(7));
  CHECK(m.negated().negated() == m);
  CHECK_THROWS_AS(Mat2({7, 1, 2, 2, 4}).inverse(), InvalidDatum);
  CHECK(least_nonresidue(29) == 2);
  CHECK(least_nonresidue(7) == 3);
  CHECK(is_square_mod(2, 7));
}

TEST_CASE("linear group orders and kernels") {
  CHECK(build_linear_group(LinearKind::SL2, 5).group()->order() == 120);
  CHECK(build_linear_group(LinearKind::PSL2, 5).group()->order() == 60);
  CHECK(build_linear_group(LinearKind::GL2, 5).group()->order() == 480);
  auto sl7 = build_linear_group(LinearKind::SL2, 7);
  CHECK(sl7.group()->degree() == 48);
  CHECK(build_linear_group(LinearKind::PSL2, 7).group()->degree() == 8);
  CHECK(linear_group_order(LinearKind::SL2, 29) == 24360);
  CHECK(linear_group_order(LinearKind::PSL2, 29) == 12180);
  CHECK_THROWS_AS(build_linear_group(LinearKind::SL2, 9), PreconditionFailed);
  CHECK_THROWS_AS(build_linear_group(LinearKind::SL2, 3), PreconditionFailed);
  CHECK_THROWS_AS(build_linear_group(LinearKind::SL2, 29, 10000), OrderExceeded);

  // the lift is a homomorphism with products taken left to right
  Mat2 x{7, 1, 2, 3, 0}, y{7, 0, 1, 6, 5};
  REQUIRE(x.det() == 1);
  REQUIRE(y.det() == 1);
  CHECK(sl7.lift(x * y) == sl7.lift(x) * sl7.lift(y));
  CHECK(sl7.matrix(sl7.element(x)) == x);
  auto psl7 = build_linear_group(LinearKind::PSL2, 7);
  CHECK(psl7.element(x) == psl7.element(x.negated()));
}

TEST_CASE("large linear groups") {
  auto sl = build_linear_group(LinearKind::SL2, 29);
  CHECK(sl.group()->order() == 24360);
  auto psl = build_linear_group(LinearKind::PSL2, 29);
  CHECK(psl.group()->order() == 12180);

  auto h1 = find_icosahedral_subgroup(sl);
  CHECK(h1.order() == 120);
  CHECK(derived_subgroup(h1) == h1);
  CHECK(h1.contains(sl.element(Mat2::identity(29).negated())));

  // the projective image has the class equation of A5
  auto image = project(sl, psl, h1);
  CHECK(image.order() == 60);
  auto a5 = enumerate_group(GroupSpec{30, image.generator_permutations(), std::nullopt});
  auto sizes = conjugacy_classes(*a5).sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 12, 12, 15, 20});

  auto h2 = outer_conjugate(sl, h1, 2);
  CHECK_FALSE(transporter(sl.group(), h1, h2).has_value());
  // sigma^2 is a scalar times an element of SL2
  auto back = outer_conjugate(sl, h2, 2);
  CHECK(transporter(sl.group(), h1, back).has_value());
  CHECK_THROWS_AS(outer_conjugate(sl, h1, 4), NotNonresidue);

  auto classes = conjugacy_classes(*sl.group());
  auto moved = classes_moved_by_outer(sl, classes, 2);
  CHECK(moved.size() == 4);
  for (auto c : moved) CHECK(sl.group()->element_order(classes.representatives[c]) % 29 == 0);
}

TEST_CASE("outer conjugation fixes the whole group") {
  auto sl = build_linear_group(LinearKind::SL2, 7);
  auto whole = Subgroup::whole(sl.group());
  CHECK(outer_conjugate(sl, whole, 3) == whole);
}

TEST_CASE("icosahedral search preconditions") {
  CHECK_THROWS_AS(find_icosahedral_subgroup(build_linear_group(LinearKind::SL2, 7)), PreconditionFailed);
  CHECK_THROWS_AS(find_icosahedral_subgroup(build_linear_group(LinearKind::PSL2, 11)), PreconditionFailed);
  auto sl11 = build_linear_group(LinearKind::SL2, 11);
  IcosahedralSearch none;
  none.attempts = 0;
  none.exhaustive_fallback = false;
  CHECK_THROWS_AS(find_icosahedral_subgroup(sl11, none), SearchExhausted);
  none.exhaustive_fallback = true;
  auto h = find_icosahedral_subgroup(sl11, none);
  CHECK(h.order() == 120);
  CHECK(derived_subgroup(h) == h);
  auto random = find_icosahedral_subgroup(sl11);
  CHECK(random.order() == 120);
}

TEST_CASE("prime-to-p subgroup classes match the congruence description") {
  auto at7 = classify_prime_to_p_subgroups(build_linear_group(LinearKind::SL2, 7));
  CHECK(at7.mismatches.empty());
  CHECK(at7.computed.at("2S4") == 2);
  CHECK(at7.computed.at("2A4") == 2);
  CHECK(at7.computed.count("2A5") == 0);
  for (std::size_t n : {1, 2, 3, 4, 6, 8}) CHECK(at7.computed.at("C" + std::to_string(n)) == 1);
  CHECK(at7.computed.at("2D2") == 2);

  auto at11 = classify_prime_to_p_subgroups(build_linear_group(LinearKind::SL2, 11));
  CHECK(at11.mismatches.empty());
  CHECK(at11.computed.at("2A4") == 1);
  CHECK(at11.computed.count("2S4") == 0);
  CHECK(at11.computed.at("2A5") == 2);

  auto at13 = classify_prime_to_p_subgroups(build_linear_group(LinearKind::SL2, 13));
  CHECK(at13.mismatches.empty());
  auto at5 = classify_prime_to_p_subgroups(build_linear_group(LinearKind::SL2, 5));
  CHECK(at5.mismatches.empty());

  CHECK_THROWS_AS(classify_prime_to_p_subgroups(build_linear_group(LinearKind::SL2, 17)), PreconditionFailed);
  auto j = to_json(at7);
  CHECK(j["p"] == 7);
  CHECK(j["classes"][0]["type"] == "C1");
  CHECK(format_table(at7).find("2S4") != std::string::npos);
}

TEST_CASE("solvable family at p = 29") {
  auto r = verify_solvable_family(29);
  CHECK(r.h1.order() == 120);
  CHECK_FALSE(r.conjugate_in_sl2);
  CHECK(r.solvable_sl2.verdict);
  CHECK_FALSE(r.conjugate_in_psl2);
  CHECK(r.solvable_psl2.verdict);
  CHECK(r.moved_classes == 4);
  CHECK(r.holds());
  CHECK_THROWS_AS(verify_solvable_family(91), PreconditionFailed);
  CHECK_THROWS_AS(verify_solvable_family(11), PreconditionFailed);
}

TEST_CASE("obstructions away from the family") {
  auto obs = solvable_family_obstructions(build_linear_group(LinearKind::SL2, 11));
  CHECK(obs == ClassTable{{"2D3", 2}});
  auto at13 = solvable_family_obstructions(build_linear_group(LinearKind::SL2, 13));
  CHECK(at13.count("2D3") == 1);
  CHECK(at13.count("2D5") == 1);
}
