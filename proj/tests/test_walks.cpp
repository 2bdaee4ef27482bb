#include <doctest.h>

#include <algorithm>
#include <random>

#include <sgq/fixtures.hpp>
#include <sgq/moves.hpp>
#include <sgq/walks.hpp>

using namespace sgq;

namespace {

TwoCocycle standard_cocycle() {
  return parse_cocycle(paper5_quandle(), symmetric_group(3),
                       paper5_cocycle_text());
}

std::vector<std::string> render_sorted(const PsiMultiset& m,
                                       const FiniteGroup& h) {
  std::vector<std::string> out;
  for (int e : m.elements)
    out.push_back(h.name(e));
  std::sort(out.begin(), out.end());
  return out;
}

// two parallel strands between endpoints, one passing through a vertex
const char* kTwoStrandTangle = R"(tangle true
endpoint b1 label=b1
endpoint b2 label=b2
endpoint b3 label=b3
endpoint b4 label=b4
vertex v ports=2
strand s1 from=b1.0 to=v.0
strand s2 from=v.1 to=b2.0
strand s3 from=b3.0 to=b4.0
)";

// theta-shaped tangle: two legs into a vertex pair joined by three edges
const char* kThetaTangle = R"(tangle true
endpoint b1 label=b1
endpoint b2 label=b2
vertex v1 ports=4
vertex v2 ports=4
strand in from=b1.0 to=v1.3
strand e1 from=v1.2 to=v2.0
strand e2 from=v2.1 to=v1.1
strand e3 from=v1.0 to=v2.2
strand out from=v2.3 to=b2.0
)";

} // namespace

TEST_CASE("degenerate walk: endpoints on one strand") {
  Diagram d = Diagram::parse(kTwoStrandTangle);
  auto walks = enumerate_extended_walks(d, "b3", "b4", 3);
  REQUIRE(walks.size() == 1);
  CHECK(walks[0].length() == 0);
  CHECK(walks[0].vertices.empty());
  // no route from b1 to b3: dead end at a third endpoint
  CHECK(enumerate_extended_walks(d, "b1", "b3", 5).empty());
}

TEST_CASE("length-zero walk through a vertex") {
  Diagram d = Diagram::parse(kTwoStrandTangle);
  auto walks = enumerate_extended_walks(d, "b1", "b2", 0);
  REQUIRE(walks.size() == 1);
  CHECK(walks[0].length() == 0);
  CHECK(walks[0].vertices.size() == 1);
}

TEST_CASE("walk filters: length, paths, trails, positive edges") {
  Diagram d = Diagram::parse(kThetaTangle);
  // walks b1 -> b2 of length <= 1: through v1..v2 via each edge
  auto w1 = enumerate_extended_walks(d, "b1", "b2", 1);
  CHECK(w1.size() == 3); // e1, e2, e3
  for (const auto& w : w1)
    CHECK(w.length() == 1);
  // length <= 3: three choices at every step, edges may repeat
  auto w3 = enumerate_extended_walks(d, "b1", "b2", 3);
  CHECK(w3.size() == 3 + 27);
  WalkFilters paths;
  paths.paths = true;
  CHECK(enumerate_extended_walks(d, "b1", "b2", 3, paths).size() == 3);
  WalkFilters trails;
  trails.trails = true;
  auto wt = enumerate_extended_walks(d, "b1", "b2", 3, trails);
  CHECK(wt.size() == 3 + 6); // length-3 trails use three distinct edges
  WalkFilters exact;
  exact.exact_length = 3;
  CHECK(enumerate_extended_walks(d, "b1", "b2", 3, exact).size() == 27);
  // positive-edge filter: e1 and e3 run v1->v2, e2 runs v2->v1
  WalkFilters pos;
  pos.exact_length = 1;
  pos.positive_edges = 1;
  CHECK(enumerate_extended_walks(d, "b1", "b2", 3, pos).size() == 2);
  pos.positive_edges = 0;
  CHECK(enumerate_extended_walks(d, "b1", "b2", 3, pos).size() == 1);
}

TEST_CASE("walk endpoint errors") {
  Diagram d = Diagram::parse(kTwoStrandTangle);
  CHECK_THROWS_AS(enumerate_extended_walks(d, "nope", "b2", 1), error);
  CHECK_THROWS_AS(enumerate_extended_walks(d, "b1", "b1", 1), error);
  CHECK_THROWS_AS(enumerate_extended_walks(fixture("trefoil"), "a", "b", 1),
                  error);
}

TEST_CASE("boltzmann weights follow the sign convention") {
  TwoCocycle phi = standard_cocycle();
  const FiniteGroup& h = phi.group();
  // positive crossing with free ends
  const char* one_pos = R"(tangle true
endpoint b1 label=b1
endpoint b2 label=b2
endpoint b3 label=b3
endpoint b4 label=b4
crossing c over_in=3
strand u1 from=b1.0 to=c.0
strand u2 from=c.2 to=b2.0
strand o1 from=b3.0 to=c.3
strand o2 from=c.1 to=b4.0
)";
  Diagram d = Diagram::parse(one_pos);
  int c = d.node_index("c");
  Coloring col{{0, 0, 0, 0}};
  auto arcs = d.crossing_arcs(c);
  col.colors[arcs.under_in] = 0;                        // x = 1
  col.colors[arcs.over] = 2;                            // y = 3
  col.colors[arcs.under_out] = phi.quandle().op(0, 2);
  CHECK(h.name(boltzmann_weight(d, phi, col, c)) == "(2,3)"); // phi(1,3)
  // x = y gives the identity
  Coloring flat{{3, 3, 3, 3}};
  CHECK(boltzmann_weight(d, phi, flat, c) == h.identity());

  // negative crossing: x is the under-out color, weight inverted
  Diagram m = d.mirrored();
  int cm = m.node_index("c");
  auto marcs = m.crossing_arcs(cm);
  Coloring mcol{{0, 0, 0, 0}};
  mcol.colors[marcs.under_out] = 1;                     // x = 2
  mcol.colors[marcs.over] = 0;                          // y = 1
  mcol.colors[marcs.under_in] = phi.quandle().op(1, 0); // consistent
  CHECK(h.name(boltzmann_weight(m, phi, mcol, cm)) ==
        h.name(h.inv(phi.value(1, 0)))); // phi(2,1)^-1 = (1,3,2)
}

TEST_CASE("displayed product: phi(1,3) phi(2,1) phi(2,1) phi(2,3)") {
  TwoCocycle phi = standard_cocycle();
  const FiniteGroup& h = phi.group();
  int acc = h.identity();
  for (auto [x, y] :
       std::vector<std::pair<int, int>>{{0, 2}, {1, 0}, {1, 0}, {1, 2}})
    acc = h.mul(acc, phi.value(x, y));
  CHECK(h.name(acc) == "(1,2,3)");
}

TEST_CASE("vtangle reproduces the walk invariant and detects chirality") {
  Diagram d = fixture("vtangle");
  CHECK(d.is_planar());
  TwoCocycle phi = standard_cocycle();
  const FiniteGroup& h = phi.group();
  PsiOptions opt;
  opt.max_len = 0;

  // five special colorings send the lower-right arc to 1
  auto specials = enumerate_special_colorings(d, phi.quandle());
  int base_arc = d.arc_of_strand(d.at({d.endpoint_by_label("lr"), 0}).strand);
  int c1 = 0;
  for (const auto& c : specials)
    if (c.colors[base_arc] == 0)
      ++c1;
  CHECK(c1 == 5);

  auto m1 = psi_q(d, phi, 0, "lr", "ul", opt);
  CHECK(render_sorted(m1, h) ==
        std::vector<std::string>{"()", "(1,2,3)", "(1,2,3)", "(1,2,3)",
                                 "(1,2,3)"});
  auto m2 = psi_q(d.mirrored(), phi, 0, "lr", "ul", opt);
  CHECK(render_sorted(m2, h) ==
        std::vector<std::string>{"()", "(1,2)", "(1,2,3)", "(1,3)", "(2,3)"});
  CHECK_FALSE(m1 == m2);

  // constant-identity cocycle yields all-identity multisets of equal size
  TwoCocycle id = constant_identity_cocycle(phi.quandle(), phi.group());
  auto mi = psi_q(d, id, 0, "lr", "ul", opt);
  CHECK(mi.elements.size() == m1.elements.size());
  for (int e : mi.elements)
    CHECK(e == h.identity());
}

TEST_CASE("psi_full indexes by boundary color; all-pairs covers pairs") {
  Diagram d = fixture("vtangle");
  TwoCocycle phi = standard_cocycle();
  PsiOptions opt;
  opt.max_len = 0;
  auto full = psi_full(d, phi, "lr", "ul", opt);
  CHECK(full.size() == 5);
  long long total = 0;
  for (const auto& [q, mset] : full)
    total += static_cast<long long>(mset.elements.size());
  // every special coloring contributes once per walk
  auto specials = enumerate_special_colorings(d, phi.quandle());
  auto walks = enumerate_extended_walks(d, "lr", "ul", 0);
  CHECK(total == static_cast<long long>(specials.size() * walks.size()));

  auto pairs = psi_all_pairs(d, phi, opt);
  CHECK(pairs.size() == 12); // ordered pairs of 4 endpoints
}

TEST_CASE("compatibility gate") {
  Diagram d = fixture("vtangle");
  TwoCocycle phi = standard_cocycle();
  // strict mode passes: stable cocycle, balanced tangle
  CHECK_NOTHROW(check_psi_compatibility(d, phi, false));
  // relaxed mode is fine on balanced tangles
  CHECK_NOTHROW(check_psi_compatibility(d, phi, true));

  // unbalanced tangle: relaxed mode refuses; strict needs exponent | gcd
  const char* unbalanced = R"(tangle true
endpoint b1 label=b1
endpoint b2 label=b2
endpoint b3 label=b3
vertex v ports=3
strand s1 from=b1.0 to=v.2
strand s2 from=b2.0 to=v.1
strand s3 from=v.0 to=b3.0
)";
  Diagram u = Diagram::parse(unbalanced);
  CHECK(u.balance_gcd() == 1);
  CHECK_THROWS_AS(check_psi_compatibility(u, phi, true), error);
  CHECK_THROWS_AS(check_psi_compatibility(u, phi, false), error);
}

TEST_CASE("unstable cocycles are rejected by the strict gate") {
  Diagram d = fixture("vtangle");
  TwoCocycle phi = standard_cocycle();
  auto values = phi.values();
  values[2][0] = phi.group().index_of_name("(1,2)");
  TwoCocycle bad(phi.quandle(), phi.group(), values);
  try {
    check_psi_compatibility(d, bad, false);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::incompatible_cocycle);
  }
}

TEST_CASE("psi is stable under strand relabeling") {
  Diagram d = fixture("vtangle");
  std::string text = d.serialize();
  size_t pos;
  while ((pos = text.find("strand s")) != std::string::npos)
    text.replace(pos, 8, "strand x");
  Diagram renamed = Diagram::parse(text);
  TwoCocycle phi = standard_cocycle();
  PsiOptions opt;
  opt.max_len = 0;
  CHECK(psi_q(renamed, phi, 0, "lr", "ul", opt) ==
        psi_q(d, phi, 0, "lr", "ul", opt));
}

TEST_CASE("R2 pokes of walked strands cancel in the product") {
  // connected one-crossing tangles in all four orientation variants:
  // the second strand runs either way, the poke goes over or under
  TwoCocycle phi = standard_cocycle();
  for (int flip : {0, 1}) {
    std::string text = "tangle true\n"
                       "endpoint b1 label=b1\n"
                       "endpoint b2 label=b2\n"
                       "endpoint b3 label=b3\n"
                       "endpoint b4 label=b4\n"
                       "crossing c over_in=3\n"
                       "strand u1 from=b1.0 to=c.0\n"
                       "strand u2 from=c.2 to=b2.0\n";
    if (flip)
      text += "strand o1 from=b4.0 to=c.3\nstrand o2 from=c.1 to=b3.0\n";
    else
      text += "strand o1 from=b3.0 to=c.3\nstrand o2 from=c.1 to=b4.0\n";
    Diagram d = Diagram::parse(text);
    PsiOptions opt;
    opt.max_len = 0;
    opt.relaxed = true; // no vertices at all
    auto base = psi_full(d, phi, "b1", "b2", opt);
    int variants_seen = 0;
    auto sites = find_move_sites(d, MoveKind::r2_plus);
    for (const auto& site : sites) {
      Diagram poked;
      try {
        poked = apply_move(d, site);
      } catch (const error&) {
        continue;
      }
      CHECK(psi_full(poked, phi, "b1", "b2", opt) == base);
      ++variants_seen;
    }
    CHECK(variants_seen >= 4);
  }
}

TEST_CASE("strict and relaxed mode agree on balanced tangles") {
  Diagram d = fixture("vtangle");
  TwoCocycle phi = standard_cocycle();
  PsiOptions strict;
  strict.max_len = 1;
  PsiOptions relaxed = strict;
  relaxed.relaxed = true;
  CHECK(psi_full(d, phi, "lr", "ul", strict) ==
        psi_full(d, phi, "lr", "ul", relaxed));
}

TEST_CASE("psi_walk rejects non-special colorings") {
  Diagram d = fixture("vtangle");
  TwoCocycle phi = standard_cocycle();
  auto walks = enumerate_extended_walks(d, "lr", "ul", 0);
  REQUIRE(!walks.empty());
  Coloring bad{std::vector<int>(d.arcs().size(), 0)};
  bad.colors[0] = 1; // break the crossing relations
  CHECK_THROWS_AS(psi_walk(d, phi, bad, walks[0]), error);
}

namespace {

// vtangle with the lower diagonal edge subdivided by two degree-2
// vertices: the middle piece is a whole edge, so lower-left to upper-right
// walks of length one pick up Boltzmann weights from both terminal
// fragments
const char* kVTangleCut = R"(tangle true
endpoint bLL label=ll
endpoint bLR label=lr
endpoint bUL label=ul
endpoint bUR label=ur
vertex v ports=2
vertex w1 ports=2
vertex w2 ports=2
crossing k1 over_in=3
crossing k2 over_in=3
crossing k3 over_in=3
crossing k4 over_in=3
crossing k5 over_in=3
strand s0 from=bLR.0 to=k1.0
strand s1 from=k1.2 to=k3.3
strand s2 from=k3.1 to=k2.3
strand s3 from=k2.1 to=v.0
strand s4 from=v.1 to=k2.0
strand s5 from=k2.2 to=k3.0
strand s6 from=k3.2 to=k5.3
strand s7 from=k5.1 to=k4.0
strand s8 from=k4.2 to=bUL.0
strand s9 from=bLL.0 to=k4.3
strand s10a from=k4.1 to=w1.0
strand s10b from=w1.1 to=w2.0
strand s10c from=w2.1 to=k5.0
strand s11 from=k5.2 to=k1.3
strand s12 from=k1.1 to=bUR.0
)";

} // namespace

TEST_CASE("whole-edge walks carry weights and stay move invariant") {
  Diagram d = Diagram::parse(kVTangleCut);
  REQUIRE(d.is_planar());
  TwoCocycle phi = standard_cocycle();
  const FiniteGroup& h = phi.group();
  PsiOptions opt;
  opt.max_len = 2;
  opt.budget = 200'000'000;

  // subdividing an arc does not change the coloring count
  CHECK(enumerate_special_colorings(d, phi.quandle()).size() ==
        enumerate_special_colorings(fixture("vtangle"), phi.quandle()).size());

  auto walks = enumerate_extended_walks(d, "ll", "ur", 2);
  REQUIRE(walks.size() == 1);
  CHECK(walks[0].length() == 1); // one whole edge between the cut vertices

  auto base = psi_full(d, phi, "ll", "ur", opt);
  bool nontrivial = false;
  for (const auto& [q, mset] : base)
    for (int e : mset.elements)
      if (e != h.identity())
        nontrivial = true;
  CHECK(nontrivial);

  std::mt19937 rng(2024);
  for (int step = 0; step < 8; ++step) {
    std::vector<std::pair<MoveKind, std::vector<MoveSite>>> options;
    for (MoveKind k :
         {MoveKind::r1_plus, MoveKind::r1_minus, MoveKind::r2_plus,
          MoveKind::r2_minus, MoveKind::r3, MoveKind::r4, MoveKind::r5}) {
      auto sites = find_move_sites(d, k);
      if (!sites.empty())
        options.push_back({k, std::move(sites)});
    }
    bool moved = false;
    for (int attempt = 0; attempt < 30 && !moved; ++attempt) {
      auto& [k, sites] = options[rng() % options.size()];
      try {
        d = apply_move(d, sites[rng() % sites.size()]);
        moved = true;
      } catch (const error& e) {
        if (e.code() != errc::not_applicable)
          throw;
      }
    }
    if (!moved)
      break;
    CHECK(psi_full(d, phi, "ll", "ur", opt) == base);
  }
}
