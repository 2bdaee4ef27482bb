#include <sgq/walks.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace sgq {

namespace {

// node at the named endpoint, or fail
int endpoint_node(const Diagram& d, const std::string& name) {
  int n = d.endpoint_by_label(name);
  if (n < 0)
    fail(errc::unknown_endpoint, "unknown boundary point: " + name);
  return n;
}

// the chain end of `edge` that is NOT the given node, as (node, is_vertex)
struct EdgeEnd {
  int node;
  NodeKind kind;
};

EdgeEnd far_end(const Diagram& d, const Chain& edge, int node) {
  int a = edge.start.node, b = edge.end.node;
  int other = (a == node) ? b : a;
  return {other, d.nodes()[other].kind};
}

} // namespace

std::vector<ExtendedWalk>
enumerate_extended_walks(const Diagram& d, const std::string& from,
                         const std::string& to, int max_len,
                         const WalkFilters& filters) {
  if (!d.is_tangle())
    fail(errc::tangle_not_supported, "walks are defined for tangles");
  int bi = endpoint_node(d, from);
  int bj = endpoint_node(d, to);
  if (bi == bj)
    fail(errc::same_endpoint, "walk endpoints must differ");

  // edges carrying the two endpoints
  auto edge_at = [&](int ep) {
    Attachment a = d.at({ep, 0});
    return d.edge_of_strand(a.strand);
  };
  int ei = edge_at(bi), ej = edge_at(bj);

  // whole edges: both ends at vertices
  struct Incident {
    int edge;
    bool forward; // leaving `v` along the orientation
    int other;
  };
  std::vector<std::vector<Incident>> inc(d.nodes().size());
  for (size_t e = 0; e < d.edges().size(); ++e) {
    const Chain& c = d.edges()[e];
    if (c.closed)
      continue;
    int u = c.start.node, v = c.end.node;
    if (d.nodes()[u].kind != NodeKind::vertex ||
        d.nodes()[v].kind != NodeKind::vertex)
      continue;
    inc[u].push_back({static_cast<int>(e), true, v});
    inc[v].push_back({static_cast<int>(e), false, u});
  }

  std::vector<ExtendedWalk> out;

  // degenerate walk: both endpoints on one edge
  if (ei == ej) {
    EdgeEnd fe = far_end(d, d.edges()[ei], bi);
    if (fe.node == bj) {
      ExtendedWalk w;
      w.from_endpoint = bi;
      w.to_endpoint = bj;
      w.start_edge = ei;
      w.end_edge = ej;
      if (filters.exact_length.value_or(0) == 0 &&
          filters.positive_edges.value_or(0) == 0)
        out.push_back(std::move(w));
      return out;
    }
  }

  EdgeEnd first = far_end(d, d.edges()[ei], bi);
  EdgeEnd last = far_end(d, d.edges()[ej], bj);
  if (first.kind != NodeKind::vertex || last.kind != NodeKind::vertex)
    return out; // dead ends at other endpoints admit no walks

  ExtendedWalk cur;
  cur.from_endpoint = bi;
  cur.to_endpoint = bj;
  cur.start_edge = ei;
  cur.end_edge = ej;
  cur.vertices.push_back(first.node);

  auto emit_ok = [&](const ExtendedWalk& w) {
    if (filters.exact_length && w.length() != *filters.exact_length)
      return false;
    if (filters.positive_edges &&
        w.positive_edges() != *filters.positive_edges)
      return false;
    return true;
  };

  std::function<void(int)> dfs = [&](int at) {
    if (at == last.node && emit_ok(cur))
      out.push_back(cur);
    if (cur.length() == max_len)
      return;
    for (const Incident& step : inc[at]) {
      if (filters.trails) {
        bool used = false;
        for (const auto& s : cur.whole_edges)
          if (s.edge == step.edge)
            used = true;
        if (used)
          continue;
      }
      if (filters.paths) {
        bool seen = false;
        for (int v : cur.vertices)
          if (v == step.other)
            seen = true;
        if (seen)
          continue;
      }
      cur.whole_edges.push_back({step.edge, step.forward});
      cur.vertices.push_back(step.other);
      dfs(step.other);
      cur.whole_edges.pop_back();
      cur.vertices.pop_back();
    }
  };
  dfs(first.node);
  return out;
}

int boltzmann_weight(const Diagram& d, const TwoCocycle& phi,
                     const Coloring& c, int crossing_node) {
  auto ca = d.crossing_arcs(crossing_node);
  int sign = d.crossing_sign(crossing_node);
  int x = sign > 0 ? c.colors[ca.under_in] : c.colors[ca.under_out];
  int y = c.colors[ca.over];
  int w = phi.value(x, y);
  return sign > 0 ? w : phi.group().inv(w);
}

namespace {

// Append the crossings passed under while traversing `edge`; direction
// `forward` walks the stored strand order. Weights are diagram-determined,
// only the encounter order follows the walk.
void collect_under_passages(const Diagram& d, const Chain& edge, bool forward,
                            std::vector<int>& crossings) {
  const auto& strands = edge.strands;
  if (forward) {
    for (int s : strands) {
      PortRef h = d.strands()[s].to;
      if (d.nodes()[h.node].kind == NodeKind::crossing && h.port == 0)
        crossings.push_back(h.node);
    }
  } else {
    for (auto it = strands.rbegin(); it != strands.rend(); ++it) {
      PortRef t = d.strands()[*it].from;
      if (d.nodes()[t.node].kind == NodeKind::crossing && t.port == 2)
        crossings.push_back(t.node);
    }
  }
}

// Traversal direction of an open edge when walked from `node`.
bool leaves_forward(const Chain& edge, int node) {
  if (edge.start.node == node)
    return true;
  if (edge.end.node == node)
    return false;
  fail(errc::bad_argument, "edge does not touch the requested node");
}

std::vector<int> walk_under_crossings(const Diagram& d,
                                      const ExtendedWalk& w) {
  std::vector<int> crossings;
  const Chain& first = d.edges()[w.start_edge];
  if (w.vertices.empty()) {
    // same-edge walk: traverse from the source endpoint
    collect_under_passages(d, first, leaves_forward(first, w.from_endpoint),
                           crossings);
    return crossings;
  }
  collect_under_passages(d, first, leaves_forward(first, w.from_endpoint),
                         crossings);
  for (const auto& step : w.whole_edges)
    collect_under_passages(d, d.edges()[step.edge], step.forward, crossings);
  const Chain& lastEdge = d.edges()[w.end_edge];
  collect_under_passages(d, lastEdge,
                         !leaves_forward(lastEdge, w.to_endpoint),
                         crossings);
  return crossings;
}

} // namespace

int psi_walk(const Diagram& d, const TwoCocycle& phi, const Coloring& c,
             const ExtendedWalk& w) {
  if (!is_special_coloring(d, phi.quandle(), c))
    fail(errc::not_special_coloring,
         "psi requires a vertex-uniform quandle coloring");
  const FiniteGroup& h = phi.group();
  int acc = h.identity();
  for (int crossing : walk_under_crossings(d, w))
    acc = h.mul(acc, boltzmann_weight(d, phi, c, crossing));
  return acc;
}

void check_psi_compatibility(const Diagram& d, const TwoCocycle& phi,
                             bool relaxed) {
  if (auto fail_at = phi.first_failure())
    fail(errc::incompatible_cocycle,
         "phi is not a 2-cocycle (first failing triple " +
             std::to_string((*fail_at)[0] + 1) + "," +
             std::to_string((*fail_at)[1] + 1) + "," +
             std::to_string((*fail_at)[2] + 1) + ")");
  if (relaxed) {
    if (!d.all_balanced())
      fail(errc::incompatible_cocycle,
           "relaxed mode requires a balanced tangle (every vertex has equal "
           "in and out degree)");
    return;
  }
  if (!phi.satisfies_stability())
    fail(errc::incompatible_cocycle,
         "phi does not satisfy phi(y*z,z) = phi(y,z)");
  int g = d.balance_gcd();
  int e = phi.group().exponent();
  if (g % e != 0)
    fail(errc::incompatible_cocycle,
         "exponent(H) = " + std::to_string(e) +
             " does not divide the vertex balance gcd " + std::to_string(g));
}

std::string PsiMultiset::render(const FiniteGroup& h) const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < elements.size(); ++i) {
    if (i)
      os << ", ";
    os << h.name(elements[i]);
  }
  os << "}";
  return os.str();
}

namespace {

std::vector<Coloring> colorings_with_base(const Diagram& d,
                                          const TwoCocycle& phi, int q,
                                          const std::string& from,
                                          long long budget) {
  int bi = endpoint_node(d, from);
  int base_arc = d.arc_of_strand(d.at({bi, 0}).strand);
  std::vector<Coloring> all =
      enumerate_special_colorings(d, phi.quandle(), budget);
  std::vector<Coloring> out;
  for (auto& c : all)
    if (c.colors[base_arc] == q)
      out.push_back(std::move(c));
  return out;
}

} // namespace

PsiMultiset psi_q(const Diagram& d, const TwoCocycle& phi, int q,
                  const std::string& from, const std::string& to,
                  const PsiOptions& opt) {
  check_psi_compatibility(d, phi, opt.relaxed);
  auto walks =
      enumerate_extended_walks(d, from, to, opt.max_len, opt.filters);
  auto colorings = colorings_with_base(d, phi, q, from, opt.budget);
  PsiMultiset m;
  m.q = q;
  m.from = from;
  m.to = to;
  m.max_len = opt.max_len;
  for (const auto& w : walks)
    for (const auto& c : colorings)
      m.elements.push_back(psi_walk(d, phi, c, w));
  std::sort(m.elements.begin(), m.elements.end());
  return m;
}

std::map<int, PsiMultiset> psi_full(const Diagram& d, const TwoCocycle& phi,
                                    const std::string& from,
                                    const std::string& to,
                                    const PsiOptions& opt) {
  std::map<int, PsiMultiset> out;
  for (int q = 0; q < phi.quandle().size(); ++q)
    out[q] = psi_q(d, phi, q, from, to, opt);
  return out;
}

std::map<std::pair<std::string, std::string>, std::map<int, PsiMultiset>>
psi_all_pairs(const Diagram& d, const TwoCocycle& phi, const PsiOptions& opt) {
  std::vector<std::string> labels;
  for (const Node& nd : d.nodes())
    if (nd.kind == NodeKind::endpoint)
      labels.push_back(nd.label);
  std::sort(labels.begin(), labels.end());
  std::map<std::pair<std::string, std::string>, std::map<int, PsiMultiset>>
      out;
  for (const std::string& a : labels)
    for (const std::string& b : labels)
      if (a != b)
        out[{a, b}] = psi_full(d, phi, a, b, opt);
  return out;
}

} // namespace sgq
