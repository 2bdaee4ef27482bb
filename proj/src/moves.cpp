#include <sgq/moves.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sgq {

MoveKind parse_move_kind(const std::string& name) {
  if (name == "R1+")
    return MoveKind::r1_plus;
  if (name == "R1-")
    return MoveKind::r1_minus;
  if (name == "R2+")
    return MoveKind::r2_plus;
  if (name == "R2-")
    return MoveKind::r2_minus;
  if (name == "R3")
    return MoveKind::r3;
  if (name == "R4")
    return MoveKind::r4;
  if (name == "R5")
    return MoveKind::r5;
  fail(errc::bad_argument, "unknown move kind: " + name);
}

std::string move_kind_name(MoveKind k) {
  switch (k) {
  case MoveKind::r1_plus:
    return "R1+";
  case MoveKind::r1_minus:
    return "R1-";
  case MoveKind::r2_plus:
    return "R2+";
  case MoveKind::r2_minus:
    return "R2-";
  case MoveKind::r3:
    return "R3";
  case MoveKind::r4:
    return "R4";
  case MoveKind::r5:
    return "R5";
  }
  return "?";
}

std::string MoveSite::describe(const Diagram& d) const {
  std::ostringstream os;
  os << move_kind_name(kind) << " variant=" << variant;
  if (!nodes.empty()) {
    os << " nodes=";
    for (size_t i = 0; i < nodes.size(); ++i)
      os << (i ? "," : "") << d.nodes()[nodes[i]].id;
  }
  if (!strands.empty()) {
    os << " strands=";
    for (size_t i = 0; i < strands.size(); ++i)
      os << (i ? "," : "") << d.strands()[strands[i]].id;
  }
  if (!darts.empty()) {
    os << " darts=";
    for (size_t i = 0; i < darts.size(); ++i)
      os << (i ? "," : "") << d.strands()[dart_strand(darts[i])].id
         << (dart_forward(darts[i]) ? "+" : "-");
  }
  return os.str();
}

namespace {

// ---------------------------------------------------------------- helpers

// Compass codes are quarter turns counterclockwise; port i of a crossing
// whose port 0 faces direction d0 faces (d0 + i) mod 4.
int port_facing(int dir, int port0_dir) { return ((dir - port0_dir) % 4 + 4) % 4; }

bool is_crossing(const Diagram& d, int n) {
  return d.nodes()[n].kind == NodeKind::crossing;
}
bool is_vertex(const Diagram& d, int n) {
  return d.nodes()[n].kind == NodeKind::vertex;
}

// over/under role of a crossing port
bool port_is_over(int port) { return port == 1 || port == 3; }

// the port where the line through `port` continues
int mate_port(int port) {
  if (port == 0)
    return 2;
  if (port == 2)
    return 0;
  return port == 1 ? 3 : 1;
}

struct Splice {
  int strand;
  bool head;
  PortRef where;
};

// Remove crossings by letting both lines pass straight through, splicing
// the strand chains that ran across them. Fails with not_applicable when a
// chain closes up into a bare loop (unrepresentable).
Diagram smooth_crossings(const Diagram& d, const std::vector<int>& dead) {
  std::set<int> gone(dead.begin(), dead.end());
  for (int c : gone)
    if (!is_crossing(d, c))
      fail(errc::invalid_site, "smoothing requires crossings");
  auto internal = [&](PortRef p) { return gone.count(p.node) > 0; };

  Diagram out = d;
  const auto& strands = d.strands();
  std::vector<int> remove_strands;
  std::vector<bool> consumed(strands.size(), false);
  struct NewStrand {
    std::string id;
    PortRef from, to;
  };
  std::vector<NewStrand> fresh;

  for (size_t s = 0; s < strands.size(); ++s) {
    if (internal(strands[s].from))
      continue; // interior of some chain
    if (!internal(strands[s].to))
      continue; // untouched
    // chain start
    std::vector<int> chain{static_cast<int>(s)};
    PortRef head = strands[s].to;
    while (internal(head)) {
      int cont = mate_port(head.port);
      Attachment a = d.at({head.node, cont});
      chain.push_back(a.strand);
      head = strands[a.strand].to;
    }
    for (int x : chain)
      consumed[x] = true;
    fresh.push_back({strands[s].id, strands[s].from, head});
    for (int x : chain)
      remove_strands.push_back(x);
  }
  // closed chains entirely inside the smoothed set
  for (size_t s = 0; s < strands.size(); ++s)
    if (!consumed[s] && internal(strands[s].from) && internal(strands[s].to))
      fail(errc::not_applicable,
           "smoothing would leave a closed loop with no nodes");

  out.remove_strands(remove_strands);
  for (const auto& ns : fresh)
    out.add_strand(ns.id, ns.from, ns.to);
  std::vector<int> dead_nodes(gone.begin(), gone.end());
  out.remove_nodes(dead_nodes);
  out.validate();
  return out;
}

// ---------------------------------------------------------------- R1

std::vector<MoveSite> r1_plus_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  for (size_t s = 0; s < d.strands().size(); ++s)
    for (int v = 0; v < 4; ++v)
      sites.push_back({MoveKind::r1_plus, v, {}, {static_cast<int>(s)}, {}});
  return sites;
}

Diagram apply_r1_plus(const Diagram& d, const MoveSite& site) {
  if (site.strands.size() != 1 ||
      site.strands[0] >= static_cast<int>(d.strands().size()))
    fail(errc::invalid_site, "R1+ site references a missing strand");
  const Strand old = d.strands()[site.strands[0]];
  bool negative = site.variant & 1;
  bool over_first = site.variant & 2;
  int over_in = negative ? 1 : 3;
  int over_out = negative ? 3 : 1;

  Diagram out = d;
  std::string cid = out.fresh_node_id("k");
  out.remove_strands({site.strands[0]});
  int c = out.add_crossing(cid, over_in);
  auto sid = [&] { return out.fresh_strand_id(); };
  if (!over_first) {
    out.add_strand(sid(), old.from, {c, 0});
    out.add_strand(sid(), {c, 2}, {c, over_in});
    out.add_strand(sid(), {c, over_out}, old.to);
  } else {
    out.add_strand(sid(), old.from, {c, over_in});
    out.add_strand(sid(), {c, over_out}, {c, 0});
    out.add_strand(sid(), {c, 2}, old.to);
  }
  out.validate();
  return out;
}

std::vector<MoveSite> r1_minus_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  for (size_t n = 0; n < d.nodes().size(); ++n) {
    if (!is_crossing(d, static_cast<int>(n)))
      continue;
    int c = static_cast<int>(n);
    int oi = d.nodes()[n].over_in, oo = d.over_out_port(c);
    // loop from under-out to over-in, or from over-out to under-in
    if (d.at({c, 2}).strand == d.at({c, oi}).strand) {
      int s_in = d.at({c, 0}).strand, s_out = d.at({c, oo}).strand;
      if (s_in != s_out)
        sites.push_back({MoveKind::r1_minus, 0, {c}, {}, {}});
    }
    if (d.at({c, oo}).strand == d.at({c, 0}).strand) {
      int s_in = d.at({c, oi}).strand, s_out = d.at({c, 2}).strand;
      if (s_in != s_out)
        sites.push_back({MoveKind::r1_minus, 1, {c}, {}, {}});
    }
  }
  return sites;
}

Diagram apply_r1_minus(const Diagram& d, const MoveSite& site) {
  if (site.nodes.size() != 1 ||
      site.nodes[0] >= static_cast<int>(d.nodes().size()) ||
      !is_crossing(d, site.nodes[0]))
    fail(errc::invalid_site, "R1- site references a missing crossing");
  int c = site.nodes[0];
  int oi = d.nodes()[c].over_in, oo = d.over_out_port(c);
  bool pattern = site.variant == 0
                     ? d.at({c, 2}).strand == d.at({c, oi}).strand
                     : d.at({c, oo}).strand == d.at({c, 0}).strand;
  if (!pattern)
    fail(errc::invalid_site, "R1- kink pattern is gone");
  return smooth_crossings(d, {c});
}

// ---------------------------------------------------------------- R2

std::vector<MoveSite> r2_plus_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  for (const Face& f : d.faces())
    for (int d1 : f.darts)
      for (int d2 : f.darts) {
        if (d1 == d2 || dart_strand(d1) == dart_strand(d2))
          continue;
        for (int v = 0; v < 2; ++v)
          sites.push_back({MoveKind::r2_plus, v, {}, {}, {d1, d2}});
      }
  return sites;
}

Diagram apply_r2_plus(const Diagram& d, const MoveSite& site) {
  if (site.darts.size() != 2)
    fail(errc::invalid_site, "R2+ site needs two darts");
  int d1 = site.darts[0], d2 = site.darts[1];
  int ns2 = static_cast<int>(d.strands().size()) * 2;
  if (d1 >= ns2 || d2 >= ns2 ||
      d.face_of_dart(d1) != d.face_of_dart(d2) ||
      dart_strand(d1) == dart_strand(d2))
    fail(errc::invalid_site, "R2+ darts no longer border a common face");
  bool s1_over = site.variant & 1;
  const Strand s1 = d.strands()[dart_strand(d1)];
  const Strand s2 = d.strands()[dart_strand(d2)];

  // Local frame: d1 travels east with the face on its left (north); the
  // finger pushes s1 across s2, which lies along the top travelling west in
  // the frame. True s1 direction crosses first at `cf` travelling north and
  // second at `cg` travelling south. s2 meets cf first iff the dart
  // polarities differ.
  // compass codes: 0 = E, 1 = N, 2 = W, 3 = S (counterclockwise)
  const int E = 0, N = 1, W = 2, S = 3;
  bool s2_west = dart_forward(d2); // s2 true direction in the frame
  int s2_from = s2_west ? E : W;   // side s2 enters a crossing from
  int s2_to = s2_west ? W : E;
  bool cf_first_on_s2 = dart_forward(d1) != dart_forward(d2);

  Diagram out = d;
  out.remove_strands({dart_strand(d1), dart_strand(d2)});
  auto make_crossing = [&](int s1_from_dir) {
    // returns (node, port0_dir)
    int under_dir = s1_over ? s2_from : s1_from_dir;
    int over_dir = s1_over ? s1_from_dir : s2_from;
    int over_in_port = port_facing(over_dir, under_dir);
    int c = out.add_crossing(out.fresh_node_id("k"), over_in_port);
    return std::pair(c, under_dir);
  };
  auto [cf, cf0] = make_crossing(S); // s1 northbound enters from the south
  auto [cg, cg0] = make_crossing(N); // s1 southbound enters from the north

  auto port_at = [&](int c, int port0_dir, int facing) -> PortRef {
    return {c, port_facing(facing, port0_dir)};
  };
  auto sid = [&] { return out.fresh_strand_id(); };
  // s1: from -> cf (north in, from S) -> tip -> cg (from N) -> to
  out.add_strand(sid(), s1.from, port_at(cf, cf0, S));
  out.add_strand(sid(), port_at(cf, cf0, N), port_at(cg, cg0, N));
  out.add_strand(sid(), port_at(cg, cg0, S), s1.to);
  // s2: from -> first crossing -> middle -> second -> to
  int first = cf_first_on_s2 ? cf : cg;
  int first0 = cf_first_on_s2 ? cf0 : cg0;
  int second = cf_first_on_s2 ? cg : cf;
  int second0 = cf_first_on_s2 ? cg0 : cf0;
  out.add_strand(sid(), s2.from, port_at(first, first0, s2_from));
  out.add_strand(sid(), port_at(first, first0, s2_to),
                 port_at(second, second0, s2_from));
  out.add_strand(sid(), port_at(second, second0, s2_to), s2.to);
  out.validate();
  return out;
}

// the two sides of a two-dart face, as strand roles at their end crossings
struct BigonInfo {
  int ca, cb;       // corner nodes
  int side1, side2; // strands
};

std::optional<BigonInfo> bigon_at(const Diagram& d, const Face& f) {
  if (f.darts.size() != 2)
    return std::nullopt;
  int s1 = dart_strand(f.darts[0]);
  int s2 = dart_strand(f.darts[1]);
  if (s1 == s2)
    return std::nullopt;
  int ca = d.strands()[s1].from.node;
  int cb = d.strands()[s1].to.node;
  return BigonInfo{ca, cb, s1, s2};
}

std::vector<MoveSite> r2_minus_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  for (size_t fi = 0; fi < d.faces().size(); ++fi) {
    auto b = bigon_at(d, d.faces()[fi]);
    if (!b || b->ca == b->cb || !is_crossing(d, b->ca) ||
        !is_crossing(d, b->cb))
      continue;
    auto role = [&](int strand, int node) {
      const Strand& s = d.strands()[strand];
      int port = s.from.node == node ? s.from.port : s.to.port;
      return port_is_over(port);
    };
    bool s1_over_both = role(b->side1, b->ca) && role(b->side1, b->cb);
    bool s1_under_both = !role(b->side1, b->ca) && !role(b->side1, b->cb);
    bool s2_over_both = role(b->side2, b->ca) && role(b->side2, b->cb);
    bool s2_under_both = !role(b->side2, b->ca) && !role(b->side2, b->cb);
    if ((s1_over_both && s2_under_both) || (s1_under_both && s2_over_both))
      sites.push_back(
          {MoveKind::r2_minus, 0, {b->ca, b->cb}, {b->side1, b->side2}, {}});
  }
  return sites;
}

Diagram apply_r2_minus(const Diagram& d, const MoveSite& site) {
  if (site.nodes.size() != 2 || site.strands.size() != 2)
    fail(errc::invalid_site, "R2- site needs two crossings and two sides");
  int ca = site.nodes[0], cb = site.nodes[1];
  if (ca >= static_cast<int>(d.nodes().size()) ||
      cb >= static_cast<int>(d.nodes().size()) || !is_crossing(d, ca) ||
      !is_crossing(d, cb) || ca == cb)
    fail(errc::invalid_site, "R2- crossings are gone");
  // re-verify the bigon pattern
  bool found = false;
  for (const Face& f : d.faces()) {
    auto b = bigon_at(d, f);
    if (b && ((b->ca == ca && b->cb == cb) || (b->ca == cb && b->cb == ca)))
      found = true;
  }
  if (!found)
    fail(errc::invalid_site, "R2- bigon is gone");
  return smooth_crossings(d, {ca, cb});
}

// ---------------------------------------------------------------- R3

struct TriangleSide {
  int strand;
  int c_tail, c_head; // crossings at the strand's tail/head
};

std::vector<MoveSite> r3_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  for (const Face& f : d.faces()) {
    if (f.darts.size() != 3)
      continue;
    std::set<int> corner_nodes;
    std::set<int> side_strands;
    for (int dart : f.darts) {
      const Strand& s = d.strands()[dart_strand(dart)];
      corner_nodes.insert(s.from.node);
      corner_nodes.insert(s.to.node);
      side_strands.insert(dart_strand(dart));
    }
    if (corner_nodes.size() != 3 || side_strands.size() != 3)
      continue;
    bool all_crossings = true;
    for (int n : corner_nodes)
      if (!is_crossing(d, n))
        all_crossings = false;
    if (!all_crossings)
      continue;
    int oo = 0, uu = 0, mixed = 0;
    for (int strand : side_strands) {
      const Strand& s = d.strands()[strand];
      bool over_tail = port_is_over(s.from.port);
      bool over_head = port_is_over(s.to.port);
      if (over_tail && over_head)
        ++oo;
      else if (!over_tail && !over_head)
        ++uu;
      else
        ++mixed;
    }
    if (oo == 1 && uu == 1 && mixed == 1) {
      MoveSite site{MoveKind::r3, 0, {}, {}, {}};
      for (int strand : side_strands)
        site.strands.push_back(strand);
      for (int n : corner_nodes)
        site.nodes.push_back(n);
      sites.push_back(std::move(site));
    }
  }
  return sites;
}

Diagram apply_r3(const Diagram& d, const MoveSite& site) {
  if (site.strands.size() != 3)
    fail(errc::invalid_site, "R3 site needs three sides");
  for (int s : site.strands)
    if (s >= static_cast<int>(d.strands().size()))
      fail(errc::invalid_site, "R3 side strand is gone");
  // re-derive the triangle from the sides
  std::vector<TriangleSide> sides;
  std::set<int> corners;
  for (int s : site.strands) {
    const Strand& st = d.strands()[s];
    if (!is_crossing(d, st.from.node) || !is_crossing(d, st.to.node))
      fail(errc::invalid_site, "R3 side no longer joins two crossings");
    sides.push_back({s, st.from.node, st.to.node});
    corners.insert(st.from.node);
    corners.insert(st.to.node);
  }
  if (corners.size() != 3)
    fail(errc::invalid_site, "R3 triangle is gone");

  Diagram out = d;
  std::vector<Splice> updates;
  struct NewSide {
    std::string id;
    PortRef from, to;
  };
  std::vector<NewSide> new_sides;
  for (const TriangleSide& ts : sides) {
    const Strand& x = d.strands()[ts.strand];
    int in1 = mate_port(x.from.port); // X-in port at c_tail
    int out2 = mate_port(x.to.port);  // X-out port at c_head
    Attachment xi = d.at({ts.c_tail, in1});
    Attachment xo = d.at({ts.c_head, out2});
    if (!xi.is_head || xo.is_head)
      fail(errc::invalid_site, "R3 line orientation mismatch");
    // after the slide: xi's head moves to c_head's X-in port, xo's tail to
    // c_tail's X-out port, and the side reverses: c_head.X-out -> c_tail.X-in
    updates.push_back({xi.strand, true, {ts.c_head, x.to.port}});
    updates.push_back({xo.strand, false, {ts.c_tail, x.from.port}});
    new_sides.push_back({x.id, {ts.c_head, out2}, {ts.c_tail, in1}});
  }
  for (const Splice& u : updates)
    out.reattach(u.strand, u.head, u.where);
  std::vector<int> old_sides(site.strands.begin(), site.strands.end());
  // removing strands invalidates indices; map ids first
  std::vector<std::string> dead_ids;
  for (int s : old_sides)
    dead_ids.push_back(d.strands()[s].id);
  out.remove_strands(old_sides);
  for (const NewSide& nsd : new_sides)
    out.add_strand(nsd.id, nsd.from, nsd.to);
  out.validate();
  return out;
}

// ---------------------------------------------------------------- R4

// corner of a vertex inside a face: arrival at (v,p) then departure from
// (v,p-1); the corner spans ports (p-1, p)
struct VertexCorner {
  int vertex;
  int low_port; // corner between low_port and low_port+1
};

std::vector<VertexCorner> face_vertex_corners(const Diagram& d,
                                              const Face& f) {
  std::vector<VertexCorner> out;
  for (int dart : f.darts) {
    const Strand& s = d.strands()[dart_strand(dart)];
    PortRef head = dart_forward(dart) ? s.to : s.from;
    if (is_vertex(d, head.node)) {
      int k = d.nodes()[head.node].n_ports;
      out.push_back({head.node, (head.port - 1 + k) % k});
    }
  }
  return out;
}

std::vector<MoveSite> r4_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  // slide-on: a strand and a vertex corner bordering one face
  for (size_t fi = 0; fi < d.faces().size(); ++fi) {
    const Face& f = d.faces()[fi];
    auto corners = face_vertex_corners(d, f);
    if (corners.empty())
      continue;
    for (int dart : f.darts) {
      int sidx = dart_strand(dart);
      const Strand& s = d.strands()[sidx];
      for (const VertexCorner& vc : corners) {
        if (s.from.node == vc.vertex || s.to.node == vc.vertex)
          continue; // legs cannot slide across their own vertex
        for (int variant = 0; variant < 2; ++variant) // 0: over, 1: under
          sites.push_back(
              {MoveKind::r4, variant, {vc.vertex, vc.low_port}, {}, {dart}});
      }
    }
  }
  // slide-off: a full fan around a vertex
  for (size_t n = 0; n < d.nodes().size(); ++n) {
    if (!is_vertex(d, static_cast<int>(n)))
      continue;
    int v = static_cast<int>(n);
    int k = d.nodes()[n].n_ports;
    std::vector<int> fan(k, -1);
    bool ok = true;
    bool legs_over = false;
    for (int p = 0; p < k && ok; ++p) {
      Attachment a = d.at({v, p});
      const Strand& leg = d.strands()[a.strand];
      PortRef far = a.is_head ? leg.from : leg.to;
      if (!is_crossing(d, far.node)) {
        ok = false;
        break;
      }
      fan[p] = far.node;
      bool over = port_is_over(far.port);
      if (p == 0)
        legs_over = over;
      else if (over != legs_over)
        ok = false;
    }
    if (!ok)
      continue;
    std::set<int> uniq(fan.begin(), fan.end());
    if (static_cast<int>(uniq.size()) != k)
      continue;
    // the other line must chain the fan crossings consecutively in rotation
    auto s_next = [&](int c) -> int {
      // follow the non-leg line forward out of crossing c
      int out_port = legs_over ? 2 : d.over_out_port(c);
      Attachment a = d.at({c, out_port});
      PortRef far = d.strands()[a.strand].to;
      return far.node;
    };
    int fwd = 0, bwd = 0;
    for (int p = 0; p < k; ++p) {
      if (s_next(fan[p]) == fan[(p + 1) % k])
        ++fwd;
      if (s_next(fan[(p + 1) % k]) == fan[p])
        ++bwd;
    }
    // a full slide needs k-1 consecutive links in one rotational direction
    if (k == 1 || fwd >= k - 1 || bwd >= k - 1) {
      MoveSite site{MoveKind::r4, 2, {v}, {}, {}};
      site.nodes.insert(site.nodes.end(), fan.begin(), fan.end());
      sites.push_back(std::move(site));
    }
  }
  return sites;
}

Diagram apply_r4_on(const Diagram& d, const MoveSite& site) {
  if (site.nodes.size() != 2 || site.darts.size() != 1)
    fail(errc::invalid_site, "R4 slide site needs a vertex corner and a dart");
  int v = site.nodes[0], low = site.nodes[1];
  int dart = site.darts[0];
  if (v >= static_cast<int>(d.nodes().size()) || !is_vertex(d, v) ||
      dart >= 2 * static_cast<int>(d.strands().size()))
    fail(errc::invalid_site, "R4 slide site is gone");
  const int k = d.nodes()[v].n_ports;
  if (low < 0 || low >= k)
    fail(errc::invalid_site, "R4 corner is gone");
  int sidx = dart_strand(dart);
  const Strand moving = d.strands()[sidx];
  if (moving.from.node == v || moving.to.node == v)
    fail(errc::invalid_site, "R4 cannot slide a leg across its own vertex");
  bool s_over = site.variant == 0;
  bool fwd = dart_forward(dart);

  // order of legs crossed along the strand's true direction
  std::vector<int> ports;
  for (int i = 0; i < k; ++i)
    ports.push_back(fwd ? ((low - i + k) % k) : ((low + 1 + i) % k));

  // quarter-turn codes relative to each leg's radial direction:
  // 0 = outward, 1 = ccw tangent, 2 = inward, 3 = cw tangent
  Diagram out = d;
  out.remove_strands({sidx});
  struct LegCut {
    int crossing;
    int in_port, out_port; // ports for the leg line
    bool away;             // leg directed away from the vertex
  };
  std::vector<LegCut> cuts(k);
  std::vector<int> s_in_port(k), s_out_port(k);
  std::vector<int> xnodes(k, -1);
  for (int i = 0; i < k; ++i) {
    int p = ports[i];
    Attachment leg_att = d.at({v, p});
    bool away = !leg_att.is_head; // tail at the vertex: oriented outward
    int s_from = fwd ? 1 : 3;     // strand enters from the ccw/cw tangent
    int s_to = fwd ? 3 : 1;
    int leg_from = away ? 2 : 0; // outward legs enter from the inside
    int leg_to = away ? 0 : 2;
    int under_dir = s_over ? leg_from : s_from;
    int over_dir = s_over ? s_from : leg_from;
    int c = out.add_crossing(out.fresh_node_id("k"),
                             port_facing(over_dir, under_dir));
    xnodes[i] = c;
    cuts[p] = {c, port_facing(leg_from, under_dir),
               port_facing(leg_to, under_dir), away};
    s_in_port[i] = port_facing(s_from, under_dir);
    s_out_port[i] = port_facing(s_to, under_dir);
  }
  auto sid = [&] { return out.fresh_strand_id(); };
  // re-route the moving strand through the new crossings
  out.add_strand(sid(), moving.from, {xnodes[0], s_in_port[0]});
  for (int i = 0; i + 1 < k; ++i)
    out.add_strand(sid(), {xnodes[i], s_out_port[i]},
                   {xnodes[i + 1], s_in_port[i + 1]});
  out.add_strand(sid(), {xnodes[k - 1], s_out_port[k - 1]}, moving.to);
  // split the legs; loop legs get a middle piece joining their two cuts
  std::set<int> done;
  for (int p = 0; p < k; ++p) {
    Attachment leg_att = d.at({v, p});
    if (done.count(leg_att.strand))
      continue;
    done.insert(leg_att.strand);
    const Strand& leg = d.strands()[leg_att.strand];
    bool tail_at_v = leg.from.node == v;
    bool head_at_v = leg.to.node == v;
    if (tail_at_v && head_at_v) {
      const LegCut& a = cuts[leg.from.port];
      const LegCut& b = cuts[leg.to.port];
      out.add_strand(sid(), {v, leg.from.port}, {a.crossing, a.in_port});
      out.add_strand(sid(), {a.crossing, a.out_port}, {b.crossing, b.in_port});
      out.add_strand(sid(), {b.crossing, b.out_port}, {v, leg.to.port});
    } else if (tail_at_v) {
      const LegCut& a = cuts[leg.from.port];
      out.add_strand(sid(), {v, leg.from.port}, {a.crossing, a.in_port});
      out.add_strand(sid(), {a.crossing, a.out_port}, leg.to);
    } else {
      const LegCut& a = cuts[leg.to.port];
      out.add_strand(sid(), leg.from, {a.crossing, a.in_port});
      out.add_strand(sid(), {a.crossing, a.out_port}, {v, leg.to.port});
    }
  }
  // drop the original leg strands
  std::vector<int> dead;
  std::set<int> leg_strands;
  for (int p = 0; p < k; ++p)
    leg_strands.insert(d.at({v, p}).strand);
  // indices into `out` shifted by the earlier removal of `sidx`
  for (int s : leg_strands)
    dead.push_back(s > sidx ? s - 1 : s);
  out.remove_strands(dead);
  out.validate();
  return out;
}

Diagram apply_r4_off(const Diagram& d, const MoveSite& site) {
  if (site.nodes.size() < 2)
    fail(errc::invalid_site, "R4 un-slide site needs a vertex and its fan");
  int v = site.nodes[0];
  if (v >= static_cast<int>(d.nodes().size()) || !is_vertex(d, v))
    fail(errc::invalid_site, "R4 vertex is gone");
  std::vector<int> fan(site.nodes.begin() + 1, site.nodes.end());
  if (static_cast<int>(fan.size()) != d.nodes()[v].n_ports)
    fail(errc::invalid_site, "R4 fan size mismatch");
  for (int p = 0; p < d.nodes()[v].n_ports; ++p) {
    Attachment a = d.at({v, p});
    const Strand& leg = d.strands()[a.strand];
    PortRef far = a.is_head ? leg.from : leg.to;
    if (far.node != fan[p])
      fail(errc::invalid_site, "R4 fan pattern is gone");
  }
  return smooth_crossings(d, fan);
}

// ---------------------------------------------------------------- R5

std::vector<MoveSite> r5_sites(const Diagram& d) {
  std::vector<MoveSite> sites;
  // twist: any corner whose two legs are distinct strands
  for (size_t n = 0; n < d.nodes().size(); ++n) {
    if (!is_vertex(d, static_cast<int>(n)))
      continue;
    int v = static_cast<int>(n);
    int k = d.nodes()[n].n_ports;
    if (k < 2)
      continue;
    for (int j = 0; j < k; ++j) {
      int jn = (j + 1) % k;
      if (jn == j)
        continue;
      if (d.at({v, j}).strand == d.at({v, jn}).strand)
        continue;
      for (int variant = 0; variant < 2; ++variant) // 0: port-j leg over
        sites.push_back({MoveKind::r5, variant, {v, j}, {}, {}});
    }
  }
  // untwist: two-dart face with one vertex corner and one crossing corner
  for (const Face& f : d.faces()) {
    if (f.darts.size() != 2)
      continue;
    int s1 = dart_strand(f.darts[0]), s2 = dart_strand(f.darts[1]);
    if (s1 == s2)
      continue;
    const Strand& a = d.strands()[s1];
    int n1 = a.from.node, n2 = a.to.node;
    int v = -1, x = -1;
    if (is_vertex(d, n1) && is_crossing(d, n2)) {
      v = n1;
      x = n2;
    } else if (is_crossing(d, n1) && is_vertex(d, n2)) {
      v = n2;
      x = n1;
    } else {
      continue;
    }
    const Strand& b = d.strands()[s2];
    bool b_matches = (b.from.node == v && b.to.node == x) ||
                     (b.from.node == x && b.to.node == v);
    if (!b_matches)
      continue;
    sites.push_back({MoveKind::r5, 2, {v, x}, {s1, s2}, {}});
  }
  return sites;
}

Diagram apply_r5_twist(const Diagram& d, const MoveSite& site) {
  int v = site.nodes[0], j = site.nodes[1];
  if (v >= static_cast<int>(d.nodes().size()) || !is_vertex(d, v))
    fail(errc::invalid_site, "R5 vertex is gone");
  int k = d.nodes()[v].n_ports;
  if (j < 0 || j >= k)
    fail(errc::invalid_site, "R5 corner is gone");
  int jn = (j + 1) % k;
  Attachment la = d.at({v, j}), lb = d.at({v, jn});
  if (la.strand == lb.strand)
    fail(errc::invalid_site, "R5 twist needs two distinct legs");
  bool la_over = site.variant == 0;
  const Strand A = d.strands()[la.strand];
  const Strand B = d.strands()[lb.strand];
  bool a_away = !la.is_head;
  bool b_away = !lb.is_head;
  PortRef a_far = a_away ? A.to : A.from;
  PortRef b_far = b_away ? B.to : B.from;

  // compass at the new crossing (vertex to the south): the port-j leg runs
  // through SW/NE, the port-j(+1) leg through SE/NW; codes ccw NE,NW,SW,SE.
  const int NE = 0, NW = 1, SW = 2, SE = 3;
  int a_in = a_away ? SW : NE, a_out = a_away ? NE : SW;
  int b_in = b_away ? SE : NW, b_out = b_away ? NW : SE;
  int under_dir = la_over ? b_in : a_in;
  int over_dir = la_over ? a_in : b_in;

  Diagram out = d;
  out.remove_strands({la.strand, lb.strand});
  int x = out.add_crossing(out.fresh_node_id("k"),
                           port_facing(over_dir, under_dir));
  auto port_at = [&](int facing) -> PortRef {
    return {x, port_facing(facing, under_dir)};
  };
  auto sid = [&] { return out.fresh_strand_id(); };
  // legs swap their vertex ports
  if (a_away) {
    out.add_strand(sid(), {v, jn}, port_at(a_in));
    out.add_strand(sid(), port_at(a_out), a_far);
  } else {
    out.add_strand(sid(), a_far, port_at(a_in));
    out.add_strand(sid(), port_at(a_out), {v, jn});
  }
  if (b_away) {
    out.add_strand(sid(), {v, j}, port_at(b_in));
    out.add_strand(sid(), port_at(b_out), b_far);
  } else {
    out.add_strand(sid(), b_far, port_at(b_in));
    out.add_strand(sid(), port_at(b_out), {v, j});
  }
  out.validate();
  return out;
}

Diagram apply_r5_untwist(const Diagram& d, const MoveSite& site) {
  if (site.nodes.size() != 2 || site.strands.size() != 2)
    fail(errc::invalid_site, "R5 untwist site needs a vertex and a crossing");
  int v = site.nodes[0], x = site.nodes[1];
  if (v >= static_cast<int>(d.nodes().size()) ||
      x >= static_cast<int>(d.nodes().size()) || !is_vertex(d, v) ||
      !is_crossing(d, x))
    fail(errc::invalid_site, "R5 untwist nodes are gone");
  int s1 = site.strands[0], s2 = site.strands[1];
  auto touches = [&](int s) {
    const Strand& st = d.strands()[s];
    return (st.from.node == v && st.to.node == x) ||
           (st.from.node == x && st.to.node == v);
  };
  if (s1 >= static_cast<int>(d.strands().size()) ||
      s2 >= static_cast<int>(d.strands().size()) || !touches(s1) ||
      !touches(s2))
    fail(errc::invalid_site, "R5 untwist strands are gone");
  // vertex ports of the two sides
  auto vport = [&](int s) {
    const Strand& st = d.strands()[s];
    return st.from.node == v ? st.from.port : st.to.port;
  };
  int pa = vport(s1), pb = vport(s2);
  int k = d.nodes()[v].n_ports;
  if ((pa + 1) % k != pb && (pb + 1) % k != pa)
    fail(errc::invalid_site, "R5 untwist legs are not adjacent");

  // swap the two attachments at the vertex, then smooth the crossing
  Diagram out = d;
  auto fix = [&](int s, PortRef where) {
    const Strand& st = d.strands()[s];
    if (st.from.node == v)
      out.reattach(s, false, where);
    else
      out.reattach(s, true, where);
  };
  fix(s1, {v, pb});
  fix(s2, {v, pa});
  out.validate();
  return smooth_crossings(out, {x});
}

} // namespace

std::vector<MoveSite> find_move_sites(const Diagram& d, MoveKind kind) {
  switch (kind) {
  case MoveKind::r1_plus:
    return r1_plus_sites(d);
  case MoveKind::r1_minus:
    return r1_minus_sites(d);
  case MoveKind::r2_plus:
    return r2_plus_sites(d);
  case MoveKind::r2_minus:
    return r2_minus_sites(d);
  case MoveKind::r3:
    return r3_sites(d);
  case MoveKind::r4:
    return r4_sites(d);
  case MoveKind::r5:
    return r5_sites(d);
  }
  return {};
}

Diagram apply_move(const Diagram& d, const MoveSite& site) {
  // a site must match one found on this very diagram; anything else is stale
  bool live = false;
  for (const MoveSite& s : find_move_sites(d, site.kind))
    if (s.variant == site.variant && s.nodes == site.nodes &&
        s.strands == site.strands && s.darts == site.darts) {
      live = true;
      break;
    }
  if (!live)
    fail(errc::invalid_site,
         "move site does not match the current diagram (stale site)");
  switch (site.kind) {
  case MoveKind::r1_plus:
    return apply_r1_plus(d, site);
  case MoveKind::r1_minus:
    return apply_r1_minus(d, site);
  case MoveKind::r2_plus:
    return apply_r2_plus(d, site);
  case MoveKind::r2_minus:
    return apply_r2_minus(d, site);
  case MoveKind::r3:
    return apply_r3(d, site);
  case MoveKind::r4:
    return site.variant == 2 ? apply_r4_off(d, site) : apply_r4_on(d, site);
  case MoveKind::r5:
    return site.variant == 2 ? apply_r5_untwist(d, site)
                             : apply_r5_twist(d, site);
  }
  fail(errc::bad_argument, "unknown move kind");
}

} // namespace sgq
