#include <sgq/diagram.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>

namespace sgq {

int Diagram::add_crossing(const std::string& id, int over_in) {
  if (over_in != 1 && over_in != 3)
    fail(errc::bad_crossing_orientation,
         "crossing " + id + ": over_in must be 1 or 3");
  nodes_.push_back({NodeKind::crossing, id, 4, over_in, ""});
  validated_ = false;
  return static_cast<int>(nodes_.size()) - 1;
}

int Diagram::add_vertex(const std::string& id, int ports) {
  if (ports < 1)
    fail(errc::bad_argument, "vertex " + id + " needs at least one port");
  nodes_.push_back({NodeKind::vertex, id, ports, 0, ""});
  validated_ = false;
  return static_cast<int>(nodes_.size()) - 1;
}

int Diagram::add_endpoint(const std::string& id, const std::string& label) {
  nodes_.push_back({NodeKind::endpoint, id, 1, 0, label.empty() ? id : label});
  validated_ = false;
  return static_cast<int>(nodes_.size()) - 1;
}

int Diagram::add_strand(const std::string& id, PortRef from, PortRef to) {
  strands_.push_back({id, from, to});
  validated_ = false;
  return static_cast<int>(strands_.size()) - 1;
}

int Diagram::node_index(const std::string& id) const {
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].id == id)
      return static_cast<int>(i);
  return -1;
}

int Diagram::endpoint_by_label(const std::string& label) const {
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::endpoint &&
        (nodes_[i].label == label || nodes_[i].id == label))
      return static_cast<int>(i);
  return -1;
}

void Diagram::validate() {
  warnings_.clear();
  att_.assign(nodes_.size(), {});
  for (size_t i = 0; i < nodes_.size(); ++i)
    att_[i].assign(nodes_[i].n_ports, Attachment{});

  auto attach = [&](PortRef p, int strand, bool is_head) {
    if (p.node < 0 || p.node >= static_cast<int>(nodes_.size()))
      fail(errc::dangling_port, "strand " + strands_[strand].id +
                                    " references unknown node");
    if (p.port < 0 || p.port >= nodes_[p.node].n_ports)
      fail(errc::dangling_port, "strand " + strands_[strand].id +
                                    " references invalid port " +
                                    std::to_string(p.port) + " of node " +
                                    nodes_[p.node].id);
    Attachment& a = att_[p.node][p.port];
    if (a.valid())
      fail(errc::port_reuse, "port " + nodes_[p.node].id + "." +
                                 std::to_string(p.port) +
                                 " is used by more than one strand end");
    a = {strand, is_head};
  };
  for (size_t s = 0; s < strands_.size(); ++s) {
    attach(strands_[s].from, static_cast<int>(s), false);
    attach(strands_[s].to, static_cast<int>(s), true);
  }
  for (size_t i = 0; i < nodes_.size(); ++i)
    for (int p = 0; p < nodes_[i].n_ports; ++p)
      if (!att_[i][p].valid())
        fail(errc::dangling_port,
             "port " + nodes_[i].id + "." + std::to_string(p) + " is unused");

  bool saw_endpoint = false;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& nd = nodes_[i];
    if (nd.kind == NodeKind::crossing) {
      int oo = nd.over_in == 1 ? 3 : 1;
      if (!att_[i][0].is_head || att_[i][2].is_head)
        fail(errc::bad_crossing_orientation,
             "crossing " + nd.id +
                 ": under strand must enter port 0 and leave port 2");
      if (!att_[i][nd.over_in].is_head || att_[i][oo].is_head)
        fail(errc::bad_crossing_orientation,
             "crossing " + nd.id + ": over strand must enter port " +
                 std::to_string(nd.over_in));
    } else if (nd.kind == NodeKind::endpoint) {
      saw_endpoint = true;
    }
  }
  if (saw_endpoint && !is_tangle_)
    fail(errc::endpoint_in_closed_diagram,
         "endpoints are only allowed in tangles");
  if (is_tangle_ && !saw_endpoint)
    fail(errc::bad_argument, "tangle declared but no endpoints present");
  std::vector<std::string> labels;
  for (const Node& nd : nodes_)
    if (nd.kind == NodeKind::endpoint)
      labels.push_back(nd.label);
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    fail(errc::bad_argument, "endpoint labels must be unique");

  derive();
  validated_ = true;
}

void Diagram::derive() {
  const int ns = static_cast<int>(strands_.size());

  // successor strand inside a chain: the strand leaving `glue_out` when the
  // incoming strand's head sits at `glue_in`.
  auto chain_build = [&](auto glue_next) {
    std::vector<int> next(ns, -1), prev(ns, -1);
    for (int s = 0; s < ns; ++s) {
      int t = glue_next(s);
      if (t >= 0) {
        next[s] = t;
        prev[t] = s;
      }
    }
    std::vector<Chain> chains;
    std::vector<int> chain_of(ns, -1);
    for (int s = 0; s < ns; ++s) {
      if (prev[s] >= 0 || chain_of[s] >= 0)
        continue; // not a chain start
      Chain c;
      int x = s;
      while (x >= 0 && chain_of[x] < 0) {
        chain_of[x] = static_cast<int>(chains.size());
        c.strands.push_back(x);
        x = next[x];
      }
      c.closed = false;
      c.start = strands_[c.strands.front()].from;
      c.end = strands_[c.strands.back()].to;
      chains.push_back(std::move(c));
    }
    for (int s = 0; s < ns; ++s) { // leftovers are closed cycles
      if (chain_of[s] >= 0)
        continue;
      Chain c;
      c.closed = true;
      int x = s;
      while (chain_of[x] < 0) {
        chain_of[x] = static_cast<int>(chains.size());
        c.strands.push_back(x);
        x = next[x];
      }
      chains.push_back(std::move(c));
    }
    return std::pair(chains, chain_of);
  };

  auto over_glue = [&](int s) -> int {
    PortRef h = strands_[s].to;
    const Node& nd = nodes_[h.node];
    if (nd.kind != NodeKind::crossing)
      return -1;
    if (h.port == nd.over_in)
      return att_[h.node][nd.over_in == 1 ? 3 : 1].strand;
    return -1;
  };
  auto both_glue = [&](int s) -> int {
    PortRef h = strands_[s].to;
    const Node& nd = nodes_[h.node];
    if (nd.kind != NodeKind::crossing)
      return -1;
    if (h.port == nd.over_in)
      return att_[h.node][nd.over_in == 1 ? 3 : 1].strand;
    if (h.port == 0)
      return att_[h.node][2].strand;
    return -1;
  };

  std::tie(arcs_, arc_of_strand_) = chain_build(over_glue);
  std::tie(edges_, edge_of_strand_) = chain_build(both_glue);

  // face tracing: a dart arriving at (n, p) continues with the dart leaving
  // (n, p-1); faces lie on the left of their darts.
  faces_.clear();
  face_of_dart_.assign(2 * ns, -1);
  auto dart_head = [&](int d) -> PortRef {
    return dart_forward(d) ? strands_[dart_strand(d)].to
                           : strands_[dart_strand(d)].from;
  };
  auto leaving_dart = [&](PortRef p) -> int {
    const Attachment& a = att_[p.node][p.port];
    return a.is_head ? (2 * a.strand + 1) : (2 * a.strand);
  };
  for (int d0 = 0; d0 < 2 * ns; ++d0) {
    if (face_of_dart_[d0] >= 0)
      continue;
    Face f;
    int d = d0;
    while (face_of_dart_[d] < 0) {
      face_of_dart_[d] = static_cast<int>(faces_.size());
      f.darts.push_back(d);
      PortRef h = dart_head(d);
      int k = nodes_[h.node].n_ports;
      d = leaving_dart({h.node, (h.port - 1 + k) % k});
    }
    faces_.push_back(std::move(f));
  }

  // Euler characteristic per connected component
  const int nn = static_cast<int>(nodes_.size());
  std::vector<int> comp(nn, -1);
  int ncomp = 0;
  for (int i = 0; i < nn; ++i) {
    if (comp[i] >= 0)
      continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int p = 0; p < nodes_[x].n_ports; ++p) {
        const Strand& s = strands_[att_[x][p].strand];
        for (int y : {s.from.node, s.to.node})
          if (comp[y] < 0) {
            comp[y] = ncomp;
            stack.push_back(y);
          }
      }
    }
    ++ncomp;
  }
  std::vector<int> v(ncomp, 0), e(ncomp, 0), fc(ncomp, 0);
  for (int i = 0; i < nn; ++i)
    ++v[comp[i]];
  for (int s = 0; s < ns; ++s)
    ++e[comp[strands_[s].from.node]];
  for (const Face& f : faces_)
    ++fc[comp[strands_[dart_strand(f.darts[0])].from.node]];
  planar_ = true;
  for (int c = 0; c < ncomp; ++c)
    if (v[c] - e[c] + fc[c] != 2) {
      planar_ = false;
      warnings_.push_back(
          "component " + std::to_string(c) +
          " is not planar: V-E+F = " + std::to_string(v[c] - e[c] + fc[c]));
    }
}

int Diagram::crossing_sign(int node) const {
  return nodes_[node].over_in == 3 ? 1 : -1;
}

int Diagram::over_out_port(int node) const {
  return nodes_[node].over_in == 1 ? 3 : 1;
}

Diagram::CrossingArcs Diagram::crossing_arcs(int node) const {
  const Node& nd = nodes_[node];
  return {arc_of_strand_[att_[node][0].strand],
          arc_of_strand_[att_[node][nd.over_in].strand],
          arc_of_strand_[att_[node][2].strand]};
}

std::vector<int> Diagram::arcs_at_vertex(int node) const {
  std::vector<int> out;
  out.reserve(nodes_[node].n_ports);
  for (int p = 0; p < nodes_[node].n_ports; ++p)
    out.push_back(arc_of_strand_[att_[node][p].strand]);
  return out;
}

int Diagram::vertex_balance(int node) const {
  int bal = 0;
  for (int p = 0; p < nodes_[node].n_ports; ++p)
    bal += att_[node][p].is_head ? 1 : -1;
  return bal;
}

int Diagram::balance_gcd() const {
  int g = 0;
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::vertex)
      g = std::gcd(g, std::abs(vertex_balance(static_cast<int>(i))));
  return g;
}

bool Diagram::all_balanced() const {
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::vertex &&
        vertex_balance(static_cast<int>(i)) != 0)
      return false;
  return true;
}

Diagram Diagram::mirrored() const {
  Diagram m;
  m.is_tangle_ = is_tangle_;
  for (const Node& nd : nodes_) {
    Node copy = nd;
    if (nd.kind == NodeKind::crossing)
      copy.over_in = 4 - nd.over_in;
    m.nodes_.push_back(copy);
  }
  auto remap = [&](PortRef p) -> PortRef {
    const Node& nd = nodes_[p.node];
    if (nd.kind != NodeKind::crossing)
      return p;
    // rotate so the old over-in port becomes the new under-in port
    return {p.node, (p.port - nd.over_in + 4) % 4};
  };
  for (const Strand& s : strands_)
    m.strands_.push_back({s.id, remap(s.from), remap(s.to)});
  m.validate();
  return m;
}

int Diagram::euler_characteristic() const {
  return static_cast<int>(nodes_.size()) - static_cast<int>(strands_.size()) +
         static_cast<int>(faces_.size());
}

std::string Diagram::serialize() const {
  std::ostringstream os;
  os << "version 1\n";
  os << "tangle " << (is_tangle_ ? "true" : "false") << "\n";
  for (const Node& nd : nodes_) {
    switch (nd.kind) {
    case NodeKind::crossing:
      os << "crossing " << nd.id << " over_in=" << nd.over_in << "\n";
      break;
    case NodeKind::vertex:
      os << "vertex " << nd.id << " ports=" << nd.n_ports << "\n";
      break;
    case NodeKind::endpoint:
      os << "endpoint " << nd.id << " label=" << nd.label << "\n";
      break;
    }
  }
  for (const Strand& s : strands_)
    os << "strand " << s.id << " from=" << nodes_[s.from.node].id << "."
       << s.from.port << " to=" << nodes_[s.to.node].id << "." << s.to.port
       << "\n";
  return os.str();
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char ch : line) {
    if (ch == '#')
      break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty())
    toks.push_back(cur);
  return toks;
}

// splits "key=value"; returns empty key when '=' is absent
std::pair<std::string, std::string> keyval(const std::string& tok) {
  auto pos = tok.find('=');
  if (pos == std::string::npos)
    return {"", tok};
  return {tok.substr(0, pos), tok.substr(pos + 1)};
}

} // namespace

Diagram Diagram::parse(const std::string& text) {
  Diagram d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  struct PendingStrand {
    std::string id, from, to;
    int line;
  };
  std::vector<PendingStrand> pending;
  auto syntax = [&](const std::string& msg) {
    fail(errc::syntax_error,
         "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty())
      continue;
    const std::string& kind = toks[0];
    if (kind == "version") {
      continue;
    } else if (kind == "tangle") {
      if (toks.size() < 2)
        syntax("tangle needs true|false");
      d.set_tangle(toks[1] == "true" || toks[1] == "1");
    } else if (kind == "crossing") {
      if (toks.size() < 3)
        syntax("crossing needs an id and over_in");
      auto [k, v] = keyval(toks[2]);
      if (k != "over_in")
        syntax("crossing expects over_in=<1|3>");
      if (d.node_index(toks[1]) >= 0)
        syntax("duplicate node id " + toks[1]);
      try {
        d.add_crossing(toks[1], std::stoi(v));
      } catch (const std::invalid_argument&) {
        syntax("bad over_in value");
      }
    } else if (kind == "vertex") {
      if (toks.size() < 3)
        syntax("vertex needs an id and ports");
      auto [k, v] = keyval(toks[2]);
      if (k != "ports")
        syntax("vertex expects ports=<k>");
      if (d.node_index(toks[1]) >= 0)
        syntax("duplicate node id " + toks[1]);
      try {
        d.add_vertex(toks[1], std::stoi(v));
      } catch (const std::invalid_argument&) {
        syntax("bad ports value");
      }
    } else if (kind == "endpoint") {
      if (toks.size() < 2)
        syntax("endpoint needs an id");
      std::string label;
      if (toks.size() >= 3) {
        auto [k, v] = keyval(toks[2]);
        if (k != "label")
          syntax("endpoint expects label=<name>");
        label = v;
      }
      if (d.node_index(toks[1]) >= 0)
        syntax("duplicate node id " + toks[1]);
      d.add_endpoint(toks[1], label);
    } else if (kind == "strand") {
      if (toks.size() < 4)
        syntax("strand needs an id, from= and to=");
      auto [fk, fv] = keyval(toks[2]);
      auto [tk, tv] = keyval(toks[3]);
      if (fk != "from" || tk != "to")
        syntax("strand expects from=<node>.<port> to=<node>.<port>");
      pending.push_back({toks[1], fv, tv, lineno});
    } else {
      syntax("unknown record '" + kind + "'");
    }
  }
  auto parse_ref = [&](const std::string& t, int at_line) -> PortRef {
    auto pos = t.rfind('.');
    if (pos == std::string::npos)
      fail(errc::syntax_error, "line " + std::to_string(at_line) +
                                   ": bad port reference '" + t + "'");
    int node = d.node_index(t.substr(0, pos));
    if (node < 0)
      fail(errc::syntax_error, "line " + std::to_string(at_line) +
                                   ": unknown node in '" + t + "'");
    int port = -1;
    try {
      port = std::stoi(t.substr(pos + 1));
    } catch (const std::invalid_argument&) {
      fail(errc::syntax_error, "line " + std::to_string(at_line) +
                                   ": bad port number in '" + t + "'");
    }
    return {node, port};
  };
  for (const auto& ps : pending)
    d.add_strand(ps.id, parse_ref(ps.from, ps.line), parse_ref(ps.to, ps.line));
  d.validate();
  return d;
}

bool Diagram::isomorphic_to(const Diagram& other) const {
  const Diagram& a = *this;
  const Diagram& b = other;
  if (a.nodes_.size() != b.nodes_.size() ||
      a.strands_.size() != b.strands_.size() ||
      a.is_tangle_ != b.is_tangle_)
    return false;
  const int nn = static_cast<int>(a.nodes_.size());

  // node_map[i] = (node in b, port rotation offset)
  std::vector<std::pair<int, int>> node_map(nn, {-1, 0});
  std::vector<bool> used(nn, false);

  auto compatible = [&](int i, int j) {
    const Node& x = a.nodes_[i];
    const Node& y = b.nodes_[j];
    if (x.kind != y.kind || x.n_ports != y.n_ports)
      return false;
    if (x.kind == NodeKind::crossing && x.over_in != y.over_in)
      return false;
    if (x.kind == NodeKind::endpoint && x.label != y.label)
      return false;
    return true;
  };

  // map port of a-node i (with chosen rotation) to b's port
  auto port_image = [&](int i, int p) -> PortRef {
    auto [j, rot] = node_map[i];
    const Node& x = a.nodes_[i];
    int q = x.kind == NodeKind::vertex ? (p + rot) % x.n_ports : p;
    return {j, q};
  };

  // check all strands whose endpoints are fully mapped
  auto strands_consistent = [&]() {
    for (const Strand& s : a.strands_) {
      if (node_map[s.from.node].first < 0 || node_map[s.to.node].first < 0)
        continue;
      PortRef f = port_image(s.from.node, s.from.port);
      PortRef t = port_image(s.to.node, s.to.port);
      const Attachment& af = b.att_[f.node][f.port];
      if (!af.valid() || af.is_head)
        return false;
      const Strand& bs = b.strands_[af.strand];
      if (!(bs.to == t))
        return false;
    }
    return true;
  };

  std::function<bool(int)> assign = [&](int i) -> bool {
    if (i == nn)
      return strands_consistent();
    for (int j = 0; j < nn; ++j) {
      if (used[j] || !compatible(i, j))
        continue;
      int rots =
          a.nodes_[i].kind == NodeKind::vertex ? a.nodes_[i].n_ports : 1;
      for (int r = 0; r < rots; ++r) {
        node_map[i] = {j, r};
        used[j] = true;
        if (strands_consistent() && assign(i + 1))
          return true;
        used[j] = false;
        node_map[i] = {-1, 0};
      }
    }
    return false;
  };
  return assign(0);
}

std::string Diagram::fresh_node_id(const std::string& prefix) const {
  int k = 0;
  while (true) {
    std::string id = prefix + std::to_string(k);
    if (node_index(id) < 0)
      return id;
    ++k;
  }
}

std::string Diagram::fresh_strand_id() const {
  int k = 0;
  while (true) {
    std::string id = "s" + std::to_string(k);
    bool taken = false;
    for (const Strand& s : strands_)
      if (s.id == id) {
        taken = true;
        break;
      }
    if (!taken)
      return id;
    ++k;
  }
}

void Diagram::remove_strands(const std::vector<int>& strand_indices) {
  std::vector<bool> del(strands_.size(), false);
  for (int s : strand_indices)
    del[s] = true;
  std::vector<Strand> keep;
  for (size_t s = 0; s < strands_.size(); ++s)
    if (!del[s])
      keep.push_back(strands_[s]);
  strands_ = std::move(keep);
  validated_ = false;
}

void Diagram::remove_nodes(const std::vector<int>& node_indices) {
  std::vector<bool> del(nodes_.size(), false);
  for (int n : node_indices)
    del[n] = true;
  std::vector<int> shift(nodes_.size(), 0);
  int acc = 0;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    shift[i] = acc;
    if (del[i])
      ++acc;
  }
  std::vector<Node> keep;
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (!del[i])
      keep.push_back(nodes_[i]);
  nodes_ = std::move(keep);
  for (Strand& s : strands_) {
    s.from.node -= shift[s.from.node];
    s.to.node -= shift[s.to.node];
  }
  validated_ = false;
}

void Diagram::reattach(int strand, bool head, PortRef where) {
  if (head)
    strands_[strand].to = where;
  else
    strands_[strand].from = where;
  validated_ = false;
}

} // namespace sgq
