#include <sgq/presentation.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace sgq {

QuandlePresentation fundamental_quandle_presentation(const Diagram& d) {
  QuandlePresentation p;
  for (const Chain& arc : d.arcs())
    p.generators.push_back(d.strands()[arc.strands.front()].id);
  for (size_t i = 0; i < d.nodes().size(); ++i) {
    const Node& nd = d.nodes()[i];
    if (nd.kind == NodeKind::crossing) {
      auto ca = d.crossing_arcs(static_cast<int>(i));
      p.crossing_relations.push_back(
          {ca.under_in, ca.over, ca.under_out,
           d.crossing_sign(static_cast<int>(i))});
    } else if (nd.kind == NodeKind::vertex) {
      // ports are stored counterclockwise; the relation reads them clockwise
      OperatorWord w;
      for (int port = nd.n_ports - 1; port >= 0; --port) {
        Attachment a = d.at({static_cast<int>(i), port});
        w.push_back({d.arc_of_strand(a.strand), a.is_head ? 1 : -1});
      }
      p.vertex_relations.push_back({static_cast<int>(i), std::move(w)});
    }
  }
  return p;
}

GroupWord as_group_word(const OperatorWord& w) {
  GroupWord g;
  g.reserve(w.size());
  for (const auto& [gen, sign] : w)
    g.push_back({gen, sign});
  return g;
}

GroupWord free_reduce(GroupWord w) {
  GroupWord out;
  for (const Letter& l : w) {
    if (!out.empty() && out.back().generator == l.generator &&
        out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

GroupWord invert(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back({it->generator, -it->sign});
  return out;
}

namespace {

bool letter_less(const Letter& a, const Letter& b) {
  if (a.generator != b.generator)
    return a.generator < b.generator;
  return a.sign > b.sign;
}

bool word_less(const GroupWord& a, const GroupWord& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      letter_less);
}

} // namespace

GroupWord cyclic_canonical(const GroupWord& w) {
  GroupWord r = free_reduce(w);
  // cyclic reduction: cancel first against last
  while (r.size() >= 2 && r.front().generator == r.back().generator &&
         r.front().sign == -r.back().sign) {
    r.erase(r.begin());
    r.pop_back();
  }
  if (r.empty())
    return r;
  GroupWord best = r;
  GroupWord rot = r;
  for (size_t i = 1; i < r.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (word_less(rot, best))
      best = rot;
  }
  return best;
}

bool relators_equal_cyclic(const GroupWord& a, const GroupWord& b) {
  return cyclic_canonical(a) == cyclic_canonical(b);
}

std::string render_group_word(const GroupWord& w,
                              const std::vector<std::string>& names) {
  if (w.empty())
    return "1";
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i)
      os << " ";
    os << names[w[i].generator];
    if (w[i].sign < 0)
      os << "^-1";
  }
  return os.str();
}

std::string render_operator_word(const OperatorWord& w,
                                 const std::vector<std::string>& names) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i)
      os << " ";
    os << names[w[i].generator];
    if (w[i].sign < 0)
      os << "'";
  }
  return os.str();
}

namespace {

OperatorWord op_free_reduce(OperatorWord w) {
  OperatorWord out;
  for (const auto& e : w) {
    if (!out.empty() && out.back().generator == e.generator &&
        out.back().sign == -e.sign)
      out.pop_back();
    else
      out.push_back(e);
  }
  return out;
}

bool op_word_less(const OperatorWord& a, const OperatorWord& b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].generator != b[i].generator)
      return a[i].generator < b[i].generator;
    if (a[i].sign != b[i].sign)
      return a[i].sign > b[i].sign;
  }
  return false;
}

} // namespace

std::vector<OperatorWord> vertex_relation_variants(int generator,
                                                   OperatorWord w) {
  // Closure under: full free reduction, cyclic rotation, absorption of a
  // leading operator equal to the base generator. All moves are length
  // non-increasing, so the reachable set is finite.
  std::set<std::vector<std::pair<int, int>>> seen;
  auto key = [](const OperatorWord& v) {
    std::vector<std::pair<int, int>> k;
    k.reserve(v.size());
    for (const auto& e : v)
      k.push_back({e.generator, e.sign});
    return k;
  };
  OperatorWord start = op_free_reduce(std::move(w));
  std::vector<OperatorWord> out;
  std::vector<OperatorWord> queue{start};
  seen.insert(key(start));
  while (!queue.empty()) {
    OperatorWord cur = queue.back();
    queue.pop_back();
    out.push_back(cur);
    std::vector<OperatorWord> nexts;
    if (!cur.empty()) {
      OperatorWord rot = cur;
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      nexts.push_back(op_free_reduce(std::move(rot)));
      if (cur.front().generator == generator) {
        OperatorWord absorbed(cur.begin() + 1, cur.end());
        nexts.push_back(op_free_reduce(std::move(absorbed)));
      }
    }
    for (auto& nx : nexts)
      if (seen.insert(key(nx)).second)
        queue.push_back(std::move(nx));
  }
  return out;
}

OperatorWord normalize_vertex_relation(int generator, OperatorWord w) {
  auto variants = vertex_relation_variants(generator, std::move(w));
  OperatorWord best = variants.front();
  for (const auto& v : variants)
    if (op_word_less(v, best))
      best = v;
  return best;
}

bool vertex_relation_equivalent(int generator, const OperatorWord& a,
                                const OperatorWord& b) {
  return normalize_vertex_relation(generator, a) ==
         normalize_vertex_relation(generator, b);
}

std::vector<std::pair<int, OperatorWord>>
normalized_vertex_relations(const QuandlePresentation& p) {
  std::vector<std::pair<int, OperatorWord>> out;
  const int ng = static_cast<int>(p.generators.size());
  for (const VertexRelation& vr : p.vertex_relations)
    for (int x = 0; x < ng; ++x) {
      OperatorWord norm = normalize_vertex_relation(x, vr.word);
      bool dup = false;
      for (const auto& [y, w] : out)
        if (y == x && w == norm) {
          dup = true;
          break;
        }
      if (!dup)
        out.push_back({x, std::move(norm)});
    }
  return out;
}

namespace {

GroupWord crossing_relator(const CrossingRelation& r) {
  // positive: x_k^-1 x_i x_k x_j^-1 ; negative: x_k x_i x_k^-1 x_j^-1
  GroupWord w;
  if (r.sign >= 0)
    w = {{r.over, -1}, {r.under_in, 1}, {r.over, 1}, {r.under_out, -1}};
  else
    w = {{r.over, 1}, {r.under_in, 1}, {r.over, -1}, {r.under_out, -1}};
  return free_reduce(std::move(w));
}

} // namespace

GroupPresentation
associated_group_presentation(const QuandlePresentation& p, bool normalized) {
  GroupPresentation gp;
  gp.generators = p.generators;
  for (const CrossingRelation& r : p.crossing_relations)
    gp.relators.push_back(crossing_relator(r));
  const int ng = static_cast<int>(p.generators.size());
  if (normalized) {
    for (const auto& [x, w] : normalized_vertex_relations(p)) {
      GroupWord wh = as_group_word(w);
      GroupWord rel = invert(wh);
      rel.push_back({x, 1});
      rel.insert(rel.end(), wh.begin(), wh.end());
      rel.push_back({x, -1});
      gp.relators.push_back(free_reduce(std::move(rel)));
    }
  } else {
    for (const VertexRelation& vr : p.vertex_relations) {
      GroupWord wh = as_group_word(vr.word);
      GroupWord whi = invert(wh);
      for (int x = 0; x < ng; ++x) {
        GroupWord rel{{x, -1}};
        rel.insert(rel.end(), whi.begin(), whi.end());
        rel.push_back({x, 1});
        rel.insert(rel.end(), wh.begin(), wh.end());
        gp.relators.push_back(free_reduce(std::move(rel)));
      }
    }
  }
  return gp;
}

GroupPresentation wirtinger_presentation(const Diagram& d) {
  if (d.is_tangle())
    fail(errc::tangle_not_supported,
         "Wirtinger presentation requires a closed diagram");
  QuandlePresentation p = fundamental_quandle_presentation(d);
  GroupPresentation gp;
  gp.generators = p.generators;
  for (const CrossingRelation& r : p.crossing_relations)
    gp.relators.push_back(crossing_relator(r));
  for (const VertexRelation& vr : p.vertex_relations)
    gp.relators.push_back(free_reduce(as_group_word(vr.word)));
  return gp;
}

Abelianization abelianization(const GroupPresentation& gp) {
  const int ng = static_cast<int>(gp.generators.size());
  std::vector<std::vector<long long>> m;
  for (const GroupWord& r : gp.relators) {
    std::vector<long long> row(ng, 0);
    for (const Letter& l : r)
      row[l.generator] += l.sign;
    m.push_back(std::move(row));
  }
  if (m.empty())
    m.push_back(std::vector<long long>(ng, 0));
  SmithResult s = smith_normal_form(std::move(m));
  return {std::move(s.factors), s.free_rank};
}

} // namespace sgq
