#include <sgq/fixtures.hpp>

#include <map>

namespace sgq {

namespace {

// Unknot: one closed strand through a single degree-2 vertex.
const std::string kUnknot = R"(version 1
tangle false
vertex v1 ports=2
strand s1 from=v1.0 to=v1.1
)";

// Two degree-2 vertices joined by two edges, both oriented v1 -> v2.
const std::string kUnknot2 = R"(version 1
tangle false
vertex v1 ports=2
vertex v2 ports=2
strand a from=v1.1 to=v2.0
strand b from=v1.0 to=v2.1
)";

// Planar theta curve: vertices v1, v2; edges a: v1->v2, b: v2->v1,
// c: v1->v2. Clockwise readings give the words a' b c' at v1 and c b' a
// at v2.
const std::string kTheta = R"(version 1
tangle false
vertex v1 ports=3
vertex v2 ports=3
strand a from=v1.2 to=v2.0
strand b from=v2.1 to=v1.1
strand c from=v1.0 to=v2.2
)";

// One vertex carrying two counterclockwise loop edges.
const std::string kBouquet2 = R"(version 1
tangle false
vertex v1 ports=4
strand a from=v1.0 to=v1.1
strand b from=v1.2 to=v1.3
)";

// Standard closed trefoil braid; all crossings positive.
const std::string kTrefoil = R"(version 1
tangle false
crossing c1 over_in=3
crossing c2 over_in=3
crossing c3 over_in=3
strand s1 from=c1.2 to=c2.3
strand s2 from=c1.1 to=c2.0
strand s3 from=c2.2 to=c3.3
strand s4 from=c2.1 to=c3.0
strand s5 from=c3.2 to=c1.3
strand s6 from=c3.1 to=c1.0
)";

// Knotted theta curve: the trefoil with two degree-3 vertices splitting one
// strand, plus a parallel edge; all three edges run v1 -> v2.
const std::string kThetaTrefoil = R"(version 1
tangle false
crossing c1 over_in=3
crossing c2 over_in=3
crossing c3 over_in=3
vertex v1 ports=3
vertex v2 ports=3
strand s1 from=c1.2 to=c2.3
strand s2 from=c1.1 to=c2.0
strand s3 from=c2.2 to=c3.3
strand s4 from=c2.1 to=c3.0
strand s5a from=c3.2 to=v2.1
strand s5m from=v1.1 to=v2.0
strand s5b from=v1.0 to=c1.3
strand s6 from=c3.1 to=c1.0
strand se from=v1.2 to=v2.2
)";

// Graph tangle with one balanced degree-2 vertex and five positive
// crossings; boundary points sit at the four box corners. Walks of length
// zero from lr to ul distinguish it from its mirror image under the
// standard cocycle.
const std::string kVTangle = R"(version 1
tangle true
endpoint bLL label=ll
endpoint bLR label=lr
endpoint bUL label=ul
endpoint bUR label=ur
vertex v ports=2
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
strand s10 from=k4.1 to=k5.0
strand s11 from=k5.2 to=k1.3
strand s12 from=k1.1 to=bUR.0
)";

std::map<std::string, std::string> make_registry() {
  return {
      {"unknot", kUnknot},
      {"unknot2", kUnknot2},
      {"theta", kTheta},
      {"bouquet2", kBouquet2},
      {"trefoil", kTrefoil},
      {"theta-trefoil", kThetaTrefoil},
      {"vtangle", kVTangle},
  };
}

const std::map<std::string, std::string>& registry() {
  static const std::map<std::string, std::string> r = make_registry();
  return r;
}

} // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry())
    out.push_back(k);
  return out;
}

const std::string& fixture_text(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end())
    fail(errc::bad_argument, "unknown fixture: " + name);
  return it->second;
}

Diagram fixture(const std::string& name) {
  return Diagram::parse(fixture_text(name));
}

FiniteQuandle paper5_quandle() {
  // 1-based table rows: 1 1 2 2 2 / 2 2 1 1 1 / 4 5 3 5 4 / 5 3 5 4 3 /
  // 3 4 4 3 5
  std::vector<std::vector<int>> t = {
      {0, 0, 1, 1, 1},
      {1, 1, 0, 0, 0},
      {3, 4, 2, 4, 3},
      {4, 2, 4, 3, 2},
      {2, 3, 3, 2, 4},
  };
  return quandle_from_table(std::move(t));
}

const std::string& paper5_cocycle_text() {
  static const std::string text = R"(phi(2,1) = (1,2,3)
phi(1,2) = (1,3,2)
phi(1,3) = (2,3)
phi(2,3) = (2,3)
phi(1,4) = (1,2)
phi(2,4) = (1,2)
phi(1,5) = (1,3)
phi(2,5) = (1,3)
)";
  return text;
}

} // namespace sgq
