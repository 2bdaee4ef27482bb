#include <doctest.h>

#include <set>

#include <sgq/cocycle.hpp>
#include <sgq/fixtures.hpp>

using namespace sgq;

namespace {

TwoCocycle standard_cocycle() {
  FiniteQuandle q = paper5_quandle();
  FiniteGroup h = symmetric_group(3);
  return parse_cocycle(q, h, paper5_cocycle_text());
}

} // namespace

TEST_CASE("the standard cocycle is a stable 2-cocycle") {
  TwoCocycle phi = standard_cocycle();
  CHECK(phi.is_cocycle());
  CHECK(phi.satisfies_stability());
  // spot values
  const FiniteGroup& h = phi.group();
  CHECK(h.name(phi.value(1, 0)) == "(1,2,3)"); // phi(2,1)
  CHECK(h.name(phi.value(0, 1)) == "(1,3,2)"); // phi(1,2)
  CHECK(h.name(phi.value(0, 2)) == "(2,3)");   // phi(1,3)
  CHECK(phi.value(0, 2) == phi.value(1, 2));   // phi(1,3) = phi(2,3)
  CHECK(h.name(phi.value(0, 3)) == "(1,2)");
  CHECK(h.name(phi.value(0, 4)) == "(1,3)");
  CHECK(phi.value(2, 2) == h.identity());
  CHECK(phi.value(3, 1) == h.identity());
}

TEST_CASE("stability example: 1*3 = 2 shares the column value") {
  TwoCocycle phi = standard_cocycle();
  const FiniteQuandle& q = phi.quandle();
  CHECK(q.op(0, 2) == 1); // 1*3 = 2
  CHECK(phi.value(q.op(0, 2), 2) == phi.value(0, 2));
}

TEST_CASE("constant identity cocycle is stable and closed") {
  FiniteQuandle q = paper5_quandle();
  FiniteGroup h = symmetric_group(3);
  TwoCocycle id = constant_identity_cocycle(q, h);
  CHECK(id.is_cocycle());
  CHECK(id.satisfies_stability());
}

TEST_CASE("a broken cocycle reports a failing triple") {
  TwoCocycle phi = standard_cocycle();
  auto values = phi.values();
  values[0][1] = phi.group().identity(); // erase phi(1,2)
  TwoCocycle broken(phi.quandle(), phi.group(), values);
  auto bad = broken.first_failure();
  REQUIRE(bad.has_value());
  // re-check the reported triple by hand
  const FiniteQuandle& q = broken.quandle();
  const FiniteGroup& h = broken.group();
  auto [x1, x2, x3] = *bad;
  int lhs = h.mul(broken.value(x1, x2), broken.value(q.op(x1, x2), x3));
  int rhs = h.mul(broken.value(x1, x3),
                  broken.value(q.op(x1, x3), q.op(x2, x3)));
  CHECK(lhs != rhs);
}

TEST_CASE("a cocycle with phi(1,3) != phi(2,3) is not stable") {
  TwoCocycle phi = standard_cocycle();
  auto values = phi.values();
  values[1][2] = phi.group().identity();
  TwoCocycle tweaked(phi.quandle(), phi.group(), values);
  CHECK_FALSE(tweaked.satisfies_stability());
}

TEST_CASE("derived inverse stability holds for finite quandles") {
  TwoCocycle phi = standard_cocycle();
  const FiniteQuandle& q = phi.quandle();
  for (int y = 0; y < q.size(); ++y)
    for (int z = 0; z < q.size(); ++z)
      CHECK(phi.value(q.inv_op(y, z), z) == phi.value(y, z));
}

TEST_CASE("cocycle files round trip") {
  TwoCocycle phi = standard_cocycle();
  TwoCocycle again =
      parse_cocycle(phi.quandle(), phi.group(), phi.serialize());
  CHECK(again == phi);
  CHECK_THROWS_AS(
      parse_cocycle(phi.quandle(), phi.group(), "phi(9,1) = (1,2)\n"), error);
  CHECK_THROWS_AS(
      parse_cocycle(phi.quandle(), phi.group(), "phi(1,1) (1,2)\n"), error);
}

TEST_CASE("cohomologous: reflexive witness and coboundaries") {
  TwoCocycle phi = standard_cocycle();
  auto self = are_cohomologous(phi, phi);
  REQUIRE(self.has_value());
  // the identity beta always witnesses phi ~ phi
  TwoCocycle back = coboundary_transform(phi, *self);
  CHECK(back == phi);

  // any coboundary of the constant identity is cohomologous to it
  FiniteQuandle q = paper5_quandle();
  FiniteGroup h = symmetric_group(3);
  TwoCocycle id = constant_identity_cocycle(q, h);
  std::vector<int> beta = {1, 4, 2, 0, 5};
  TwoCocycle cob = coboundary_transform(id, beta);
  CHECK(cob.is_cocycle());
  auto w = are_cohomologous(id, cob);
  REQUIRE(w.has_value());
  CHECK(coboundary_transform(id, *w) == cob);
}

TEST_CASE("the standard cocycle is nontrivial") {
  TwoCocycle phi = standard_cocycle();
  TwoCocycle id = constant_identity_cocycle(phi.quandle(), phi.group());
  CHECK_FALSE(are_cohomologous(phi, id).has_value());
}

TEST_CASE("coboundary transforms compose as a group action") {
  TwoCocycle phi = standard_cocycle();
  const FiniteGroup& h = phi.group();
  std::vector<int> beta1 = {0, 3, 1, 5, 2}, beta2 = {2, 2, 4, 0, 1};
  std::vector<int> both(5);
  for (int i = 0; i < 5; ++i)
    both[i] = h.mul(beta1[i], beta2[i]);
  CHECK(coboundary_transform(coboundary_transform(phi, beta1), beta2) ==
        coboundary_transform(phi, both));
}

TEST_CASE("search over trivial(1) finds exactly the identity cocycle") {
  auto found = search_cocycles(trivial_quandle(1), symmetric_group(3), false);
  REQUIRE(found.size() == 1);
  CHECK(found[0] ==
        constant_identity_cocycle(trivial_quandle(1), symmetric_group(3)));
}

TEST_CASE("search output is self-consistent and order independent") {
  FiniteQuandle r3 = dihedral_quandle(3);
  FiniteGroup z2 = cyclic_group(2);
  auto found = search_cocycles(r3, z2, true);
  for (const auto& phi : found) {
    CHECK(phi.is_cocycle());
    CHECK(phi.satisfies_stability());
  }
  for (unsigned seed : {1u, 7u, 23u}) {
    auto other = search_cocycles(r3, z2, true, kDefaultCocycleBudget, seed);
    CHECK(other.size() == found.size());
    CHECK(std::equal(found.begin(), found.end(), other.begin()));
  }
  // unrestricted search contains the stability-restricted one
  auto all = search_cocycles(r3, z2, false);
  std::set<std::vector<std::vector<int>>> pool;
  for (const auto& phi : all)
    pool.insert(phi.values());
  for (const auto& phi : found)
    CHECK(pool.count(phi.values()) == 1);
}

TEST_CASE("search finds the standard cocycle over (paper5, S3)") {
  FiniteQuandle q = paper5_quandle();
  FiniteGroup h = symmetric_group(3);
  auto found = search_cocycles(q, h, true, 200'000'000);
  TwoCocycle phi = standard_cocycle();
  bool present = false;
  for (const auto& c : found)
    if (c == phi)
      present = true;
  CHECK(present);
  for (const auto& c : found) {
    CHECK(c.is_cocycle());
    CHECK(c.satisfies_stability());
  }

  auto cls = classify(found);
  CHECK(cls.trivial_class >= 0);
  CHECK(cls.nontrivial_count() == 8);
  // coboundaries of stable cocycles stay cocycles
  std::vector<int> beta = {3, 1, 0, 2, 5};
  for (const auto& c : found)
    CHECK(coboundary_transform(c, beta).is_cocycle());
}

TEST_CASE("classify groups coboundary-related cocycles together") {
  FiniteQuandle q = paper5_quandle();
  FiniteGroup h = symmetric_group(3);
  TwoCocycle id = constant_identity_cocycle(q, h);
  TwoCocycle cob = coboundary_transform(id, {5, 0, 3, 3, 1});
  auto cls = classify({id, cob});
  CHECK(cls.classes.size() == 1);
  CHECK(cls.trivial_class == 0);
  CHECK(cls.nontrivial_count() == 0);

  auto cls2 = classify({standard_cocycle(), id});
  CHECK(cls2.classes.size() == 2);
  CHECK(cls2.nontrivial_count() == 1);
}

TEST_CASE("budget exceeded raises, never truncates") {
  FiniteQuandle q = paper5_quandle();
  FiniteGroup h = symmetric_group(3);
  CHECK_THROWS_AS(search_cocycles(q, h, true, 50), error);
  TwoCocycle phi = standard_cocycle();
  TwoCocycle id = constant_identity_cocycle(q, h);
  CHECK_THROWS_AS(are_cohomologous(phi, id, 100), error);
}

TEST_CASE("cohomologous is symmetric and transitive on search output") {
  FiniteQuandle q = paper5_quandle();
  FiniteGroup h = symmetric_group(3);
  TwoCocycle id = constant_identity_cocycle(q, h);
  TwoCocycle b1 = coboundary_transform(id, {1, 2, 3, 4, 5});
  TwoCocycle b2 = coboundary_transform(id, {5, 4, 3, 2, 1});
  REQUIRE(are_cohomologous(id, b1).has_value());
  CHECK(are_cohomologous(b1, id).has_value()); // symmetry
  REQUIRE(are_cohomologous(b1, b2).has_value());
  CHECK(are_cohomologous(id, b2).has_value()); // transitivity
}
