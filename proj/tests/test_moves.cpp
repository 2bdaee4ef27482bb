#include <doctest.h>

#include <random>

#include <sgq/coloring.hpp>
#include <sgq/fixtures.hpp>
#include <sgq/moves.hpp>
#include <sgq/walks.hpp>

using namespace sgq;

namespace {

const MoveKind kAllKinds[] = {MoveKind::r1_plus,  MoveKind::r1_minus,
                              MoveKind::r2_plus,  MoveKind::r2_minus,
                              MoveKind::r3,       MoveKind::r4,
                              MoveKind::r5};

int crossing_count(const Diagram& d) {
  int n = 0;
  for (const Node& nd : d.nodes())
    if (nd.kind == NodeKind::crossing)
      ++n;
  return n;
}

long long count_colorings(const Diagram& d, const FiniteQuandle& q) {
  return static_cast<long long>(enumerate_colorings(d, q, 100'000'000).size());
}

long long count_special(const Diagram& d, const FiniteQuandle& q) {
  return static_cast<long long>(
      enumerate_special_colorings(d, q, 100'000'000).size());
}

// applies one random applicable move; returns false if none applied
bool random_move(Diagram& d, std::mt19937& rng, int max_crossings = 40) {
  std::vector<std::pair<MoveKind, std::vector<MoveSite>>> options;
  for (MoveKind k : kAllKinds) {
    auto sites = find_move_sites(d, k);
    if (!sites.empty())
      options.push_back({k, std::move(sites)});
  }
  if (options.empty())
    return false;
  for (int attempt = 0; attempt < 30; ++attempt) {
    auto& [k, sites] = options[rng() % options.size()];
    const MoveSite& site = sites[rng() % sites.size()];
    try {
      Diagram next = apply_move(d, site);
      if (crossing_count(next) > max_crossings)
        continue;
      d = std::move(next);
      return true;
    } catch (const error& e) {
      if (e.code() == errc::not_applicable)
        continue;
      throw;
    }
  }
  return false;
}

} // namespace

TEST_CASE("R1+ then R1- restores the diagram up to renaming") {
  for (const char* name : {"trefoil", "theta", "unknot2"}) {
    Diagram d = fixture(name);
    for (int variant = 0; variant < 4; ++variant) {
      MoveSite site{MoveKind::r1_plus, variant, {}, {0}, {}};
      Diagram kinked = apply_move(d, site);
      CHECK(kinked.is_planar());
      CHECK(crossing_count(kinked) == crossing_count(d) + 1);
      CHECK(kinked.strands().size() == d.strands().size() + 2);
      CHECK(kinked.faces().size() == d.faces().size() + 1);
      // undo at the created kink
      auto undo_sites = find_move_sites(kinked, MoveKind::r1_minus);
      REQUIRE(!undo_sites.empty());
      bool restored = false;
      for (const auto& u : undo_sites) {
        Diagram back = apply_move(kinked, u);
        if (back.isomorphic_to(d))
          restored = true;
      }
      CHECK(restored);
    }
  }
}

TEST_CASE("R1+ adds one arc on an open-arc strand") {
  Diagram d = fixture("theta");
  MoveSite site{MoveKind::r1_plus, 0, {}, {0}, {}};
  Diagram kinked = apply_move(d, site);
  CHECK(kinked.arcs().size() == d.arcs().size() + 1);
  CHECK(kinked.edges().size() == d.edges().size());
}

TEST_CASE("trefoil has no R2- sites") {
  CHECK(find_move_sites(fixture("trefoil"), MoveKind::r2_minus).empty());
}

TEST_CASE("R2+ creates a removable bigon with opposite signs") {
  Diagram d = fixture("trefoil");
  auto sites = find_move_sites(d, MoveKind::r2_plus);
  REQUIRE(!sites.empty());
  int tried = 0;
  for (size_t i = 0; i < sites.size(); i += 7) {
    Diagram poked = apply_move(d, sites[i]);
    ++tried;
    CHECK(poked.is_planar());
    CHECK(crossing_count(poked) == 5);
    CHECK(poked.faces().size() == d.faces().size() + 2);
    // writhe is preserved: the two new crossings have opposite signs
    int writhe_before = 3, writhe_after = 0;
    for (size_t n = 0; n < poked.nodes().size(); ++n)
      if (poked.nodes()[n].kind == NodeKind::crossing)
        writhe_after += poked.crossing_sign(static_cast<int>(n));
    CHECK(writhe_after == writhe_before);
    // and some R2- undoes it
    auto undo = find_move_sites(poked, MoveKind::r2_minus);
    REQUIRE(!undo.empty());
    bool restored = false;
    for (const auto& u : undo)
      try {
        if (apply_move(poked, u).isomorphic_to(d))
          restored = true;
      } catch (const error&) {
      }
    CHECK(restored);
  }
  CHECK(tried >= 3);
}

TEST_CASE("R3 appears after a poke and preserves counts") {
  Diagram d = fixture("trefoil");
  FiniteQuandle r3q = dihedral_quandle(3);
  FiniteQuandle p5 = paper5_quandle();
  long long base3 = count_colorings(d, r3q);
  long long base5 = count_colorings(d, p5);
  auto pokes = find_move_sites(d, MoveKind::r2_plus);
  int r3_moves_checked = 0;
  for (size_t i = 0; i < pokes.size() && r3_moves_checked < 6; ++i) {
    Diagram poked;
    try {
      poked = apply_move(d, pokes[i]);
    } catch (const error&) {
      continue;
    }
    for (const MoveSite& t : find_move_sites(poked, MoveKind::r3)) {
      Diagram slid = apply_move(poked, t);
      CHECK(slid.is_planar());
      CHECK(crossing_count(slid) == crossing_count(poked));
      CHECK(count_colorings(slid, r3q) == base3);
      CHECK(count_colorings(slid, p5) == base5);
      ++r3_moves_checked;
      if (r3_moves_checked >= 6)
        break;
    }
  }
  CHECK(r3_moves_checked > 0);
}

TEST_CASE("R4 slides a strand across a vertex and back") {
  // theta itself has no slidable strand (every strand is a leg), so use
  // the knotted theta, whose trefoil strands border the vertex corners
  Diagram d = fixture("theta-trefoil");
  FiniteQuandle s4 = alexander_quandle(2, parse_polynomial("t2+t+1"));
  long long base = count_special(d, s4);
  auto sites = find_move_sites(d, MoveKind::r4);
  REQUIRE(!sites.empty());
  int applied = 0;
  for (const auto& site : sites) {
    if (site.variant == 2)
      continue; // no fans exist yet
    Diagram slid = apply_move(d, site);
    CHECK(slid.is_planar());
    CHECK(crossing_count(slid) == 6); // degree-3 vertex: full fan
    CHECK(count_special(slid, s4) == base);
    // the inverse fan is detected and undoes the slide
    auto offs = find_move_sites(slid, MoveKind::r4);
    bool undone = false;
    for (const auto& off : offs) {
      if (off.variant != 2)
        continue;
      try {
        if (apply_move(slid, off).isomorphic_to(d))
          undone = true;
      } catch (const error&) {
      }
    }
    CHECK(undone);
    if (++applied >= 8)
      break;
  }
  CHECK(applied > 0);
}

TEST_CASE("R5 twists legs at a vertex and untwists") {
  Diagram d = fixture("theta");
  FiniteQuandle r3q = dihedral_quandle(3);
  long long base = count_colorings(d, r3q);
  auto sites = find_move_sites(d, MoveKind::r5);
  REQUIRE(!sites.empty());
  int applied = 0;
  for (const auto& site : sites) {
    if (site.variant == 2)
      continue;
    Diagram twisted = apply_move(d, site);
    CHECK(twisted.is_planar());
    CHECK(crossing_count(twisted) == 1);
    CHECK(count_colorings(twisted, r3q) == base);
    auto undos = find_move_sites(twisted, MoveKind::r5);
    bool undone = false;
    for (const auto& u : undos) {
      if (u.variant != 2)
        continue;
      try {
        if (apply_move(twisted, u).isomorphic_to(d))
          undone = true;
      } catch (const error&) {
      }
    }
    CHECK(undone);
    ++applied;
  }
  CHECK(applied > 0);
}

TEST_CASE("stale sites are rejected") {
  Diagram d = fixture("trefoil");
  auto sites = find_move_sites(d, MoveKind::r2_plus);
  REQUIRE(!sites.empty());
  Diagram changed = apply_move(d, {MoveKind::r1_plus, 0, {}, {2}, {}});
  // a site found on d is stale for `changed` (strand/face indices moved)
  int rejected = 0;
  for (size_t i = 0; i < sites.size(); i += 5)
    try {
      apply_move(changed, sites[i]);
    } catch (const error& e) {
      if (e.code() == errc::invalid_site)
        ++rejected;
    }
  CHECK(rejected > 0);
}

TEST_CASE("every single move preserves coloring counts") {
  FiniteQuandle r3q = dihedral_quandle(3);
  FiniteQuandle s4 = alexander_quandle(2, parse_polynomial("t2+t+1"));
  for (const char* name : {"trefoil", "theta", "unknot2", "bouquet2",
                           "theta-trefoil", "vtangle"}) {
    Diagram d = fixture(name);
    long long base3 = count_colorings(d, r3q);
    long long spec4 = count_special(d, s4);
    for (MoveKind k : kAllKinds) {
      auto sites = find_move_sites(d, k);
      size_t stride = std::max<size_t>(1, sites.size() / 6);
      for (size_t i = 0; i < sites.size(); i += stride) {
        Diagram next;
        try {
          next = apply_move(d, sites[i]);
        } catch (const error& e) {
          if (e.code() == errc::not_applicable)
            continue;
          throw;
        }
        CHECK_MESSAGE(next.is_planar(), name);
        CHECK_MESSAGE(count_colorings(next, r3q) == base3,
                      name << " " << sites[i].describe(d));
        CHECK_MESSAGE(count_special(next, s4) == spec4,
                      name << " " << sites[i].describe(d));
      }
    }
  }
}

TEST_CASE("random move sequences preserve colorings and psi") {
  FiniteQuandle p5 = paper5_quandle();
  TwoCocycle phi =
      parse_cocycle(p5, symmetric_group(3), paper5_cocycle_text());
  for (unsigned seed : {3u, 11u}) {
    Diagram d = fixture("vtangle");
    PsiOptions opt;
    opt.max_len = 1;
    opt.budget = 100'000'000;
    auto base = psi_full(d, phi, "lr", "ul", opt);
    std::mt19937 rng(seed);
    for (int step = 0; step < 6; ++step) {
      if (!random_move(d, rng))
        break;
      CHECK(d.is_planar());
      auto now = psi_full(d, phi, "lr", "ul", opt);
      CHECK_MESSAGE(now == base, "seed " << seed << " step " << step);
    }
  }
}

TEST_CASE("per-move structural deltas match the local patterns") {
  // R5 twist: +1 crossing, +2 strands, +1 face, +1 arc, edges unchanged
  Diagram theta = fixture("theta");
  auto twists = find_move_sites(theta, MoveKind::r5);
  REQUIRE(!twists.empty());
  for (const auto& site : twists) {
    if (site.variant == 2)
      continue;
    Diagram t = apply_move(theta, site);
    CHECK(crossing_count(t) == 1);
    CHECK(t.strands().size() == theta.strands().size() + 2);
    CHECK(t.faces().size() == theta.faces().size() + 1);
    CHECK(t.arcs().size() == theta.arcs().size() + 1);
    CHECK(t.edges().size() == theta.edges().size());
    break;
  }
  // R4 full slide across a degree-3 vertex: +3 crossings, +6 strands,
  // +3 faces; edge count unchanged
  Diagram tt = fixture("theta-trefoil");
  for (const auto& site : find_move_sites(tt, MoveKind::r4)) {
    if (site.variant == 2)
      continue;
    Diagram s = apply_move(tt, site);
    CHECK(crossing_count(s) == crossing_count(tt) + 3);
    CHECK(s.strands().size() == tt.strands().size() + 6);
    CHECK(s.faces().size() == tt.faces().size() + 3);
    CHECK(s.edges().size() == tt.edges().size());
    break;
  }
  // R2 poke: +2 crossings, +4 strands, +2 faces, +2 arcs
  Diagram tr = fixture("trefoil");
  auto pokes = find_move_sites(tr, MoveKind::r2_plus);
  REQUIRE(!pokes.empty());
  Diagram p = apply_move(tr, pokes[0]);
  CHECK(p.strands().size() == tr.strands().size() + 4);
  CHECK(p.arcs().size() == tr.arcs().size() + 2);
  CHECK(p.edges().size() == tr.edges().size());
}

TEST_CASE("R4 slide across a vertex carrying a loop leg") {
  // vertex with a loop (ports 0,1) and one leg that the moving strand
  // passes under, keeping everything connected
  const char* text = R"(tangle true
endpoint b1 label=b1
endpoint b2 label=b2
endpoint b3 label=b3
vertex u ports=3
crossing c over_in=3
strand loop from=u.0 to=u.1
strand leg1 from=u.2 to=c.3
strand leg2 from=c.1 to=b1.0
strand mov1 from=b2.0 to=c.0
strand mov2 from=c.2 to=b3.0
)";
  Diagram d = Diagram::parse(text);
  REQUIRE(d.is_planar());
  FiniteQuandle p5 = paper5_quandle();
  long long base = count_colorings(d, p5);
  long long base_special = count_special(d, p5);
  auto sites = find_move_sites(d, MoveKind::r4);
  int slides = 0;
  for (const auto& site : sites) {
    if (site.variant == 2)
      continue;
    // only slides across u exercise the loop splitting
    if (d.nodes()[site.nodes[0]].kind != NodeKind::vertex ||
        d.nodes()[site.nodes[0]].id != "u")
      continue;
    Diagram slid = apply_move(d, site);
    CHECK(slid.is_planar());
    CHECK(crossing_count(slid) == crossing_count(d) + 3);
    CHECK(count_colorings(slid, p5) == base);
    CHECK(count_special(slid, p5) == base_special);
    // and the full fan is recognized and removable
    bool undone = false;
    for (const auto& off : find_move_sites(slid, MoveKind::r4)) {
      if (off.variant != 2)
        continue;
      try {
        if (apply_move(slid, off).isomorphic_to(d))
          undone = true;
      } catch (const error&) {
      }
    }
    CHECK(undone);
    ++slides;
  }
  CHECK(slides > 0);
}
