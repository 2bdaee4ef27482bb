#include <sgq/coloring.hpp>

#include <algorithm>
#include <numeric>

namespace sgq {

namespace {

struct CrossingConstraint {
  int under_in, over, under_out, sign;
};

std::vector<CrossingConstraint> crossing_constraints(const Diagram& d) {
  std::vector<CrossingConstraint> out;
  for (size_t i = 0; i < d.nodes().size(); ++i)
    if (d.nodes()[i].kind == NodeKind::crossing) {
      auto ca = d.crossing_arcs(static_cast<int>(i));
      out.push_back({ca.under_in, ca.over, ca.under_out,
                     d.crossing_sign(static_cast<int>(i))});
    }
  return out;
}

// vertex words instantiated against arc colors: every arc color must be
// fixed by every vertex word
bool vertex_words_fix_all(const Diagram& d, const FiniteQuandle& q,
                          const std::vector<int>& colors) {
  for (size_t i = 0; i < d.nodes().size(); ++i) {
    const Node& nd = d.nodes()[i];
    if (nd.kind != NodeKind::vertex)
      continue;
    // clockwise reading: reversed port order
    std::vector<std::pair<int, int>> word;
    for (int p = nd.n_ports - 1; p >= 0; --p) {
      Attachment a = d.at({static_cast<int>(i), p});
      word.push_back({d.arc_of_strand(a.strand), a.is_head ? 1 : -1});
    }
    for (int color : colors) {
      int x = color;
      for (auto [arc, sign] : word)
        x = q.op_signed(x, colors[arc], sign);
      if (x != color)
        return false;
    }
  }
  return true;
}

} // namespace

bool is_coloring(const Diagram& d, const FiniteQuandle& q, const Coloring& c) {
  if (c.colors.size() != d.arcs().size())
    fail(errc::missing_arc, "coloring must assign every arc");
  for (int v : c.colors)
    if (v < 0 || v >= q.size())
      fail(errc::missing_arc, "color out of range");
  for (const auto& cc : crossing_constraints(d))
    if (q.op_signed(c.colors[cc.under_in], c.colors[cc.over], cc.sign) !=
        c.colors[cc.under_out])
      return false;
  return vertex_words_fix_all(d, q, c.colors);
}

bool is_special_coloring(const Diagram& d, const FiniteQuandle& q,
                         const Coloring& c) {
  if (!is_coloring(d, q, c))
    return false;
  for (size_t i = 0; i < d.nodes().size(); ++i)
    if (d.nodes()[i].kind == NodeKind::vertex) {
      auto arcs = d.arcs_at_vertex(static_cast<int>(i));
      for (int a : arcs)
        if (c.colors[a] != c.colors[arcs[0]])
          return false;
    }
  return true;
}

namespace {

// Shared backtracking core. Groups of arcs are colored together (singletons
// for plain colorings, vertex-star classes for special ones).
class Enumerator {
public:
  Enumerator(const Diagram& d, const FiniteQuandle& q, long long budget,
             bool special)
      : d_(d), q_(q), budget_(budget), special_(special),
        constraints_(crossing_constraints(d)) {
    const int na = static_cast<int>(d.arcs().size());
    rep_.resize(na);
    std::iota(rep_.begin(), rep_.end(), 0);
    if (special_) {
      for (size_t i = 0; i < d.nodes().size(); ++i)
        if (d.nodes()[i].kind == NodeKind::vertex) {
          auto arcs = d.arcs_at_vertex(static_cast<int>(i));
          for (int a : arcs)
            unite(arcs[0], a);
        }
    }
    members_.assign(na, {});
    for (int a = 0; a < na; ++a)
      members_[find(a)].push_back(a);
    colors_.assign(na, -1);
  }

  std::vector<Coloring> run() {
    dfs();
    return std::move(results_);
  }

private:
  int find(int a) { return rep_[a] == a ? a : rep_[a] = find(rep_[a]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b)
      rep_[b] = a;
  }

  // assigns the whole class of arc `a`; records the touched arcs on the
  // trail; returns false on conflict
  bool assign(int a, int color, std::vector<int>& trail) {
    for (int m : members_[find(a)]) {
      if (colors_[m] == color)
        continue;
      if (colors_[m] != -1)
        return false;
      colors_[m] = color;
      trail.push_back(m);
    }
    return true;
  }

  bool propagate(std::vector<int>& trail) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& cc : constraints_) {
        int ci = colors_[cc.under_in], co = colors_[cc.over],
            cu = colors_[cc.under_out];
        if (co < 0)
          continue;
        if (ci >= 0) {
          int want = q_.op_signed(ci, co, cc.sign);
          if (cu < 0) {
            if (!assign(cc.under_out, want, trail))
              return false;
            progress = true;
          } else if (cu != want) {
            return false;
          }
        } else if (cu >= 0) {
          int want = q_.op_signed(cu, co, -cc.sign);
          if (!assign(cc.under_in, want, trail))
            return false;
          progress = true;
        }
      }
    }
    return true;
  }

  bool vertex_condition() {
    // exact per-vertex check: (*a)^m fixes every arc color
    for (size_t i = 0; i < d_.nodes().size(); ++i) {
      if (d_.nodes()[i].kind != NodeKind::vertex)
        continue;
      auto arcs = d_.arcs_at_vertex(static_cast<int>(i));
      int a = colors_[arcs[0]];
      int m = d_.vertex_balance(static_cast<int>(i));
      int ord = q_.column_order(a);
      int steps = ((m % ord) + ord) % ord;
      for (int color : colors_) {
        int x = color;
        for (int s = 0; s < steps; ++s)
          x = q_.op(x, a);
        if (x != color)
          return false;
      }
    }
    return true;
  }

  void dfs() {
    int next = -1;
    for (int a = 0; a < static_cast<int>(colors_.size()); ++a)
      if (colors_[a] < 0) {
        next = a;
        break;
      }
    if (next < 0) {
      bool ok = special_ ? vertex_condition()
                         : vertex_words_fix_all(d_, q_, colors_);
      if (ok)
        results_.push_back({colors_});
      return;
    }
    for (int color = 0; color < q_.size(); ++color) {
      if (--budget_ < 0)
        fail(errc::budget_exceeded, "coloring enumeration budget exhausted");
      std::vector<int> trail;
      if (assign(next, color, trail) && propagate(trail))
        dfs();
      for (int m : trail)
        colors_[m] = -1;
    }
  }

  const Diagram& d_;
  const FiniteQuandle& q_;
  long long budget_;
  bool special_;
  std::vector<CrossingConstraint> constraints_;
  std::vector<int> rep_;
  std::vector<std::vector<int>> members_;
  std::vector<int> colors_;
  std::vector<Coloring> results_;
};

} // namespace

std::vector<Coloring> enumerate_colorings(const Diagram& d,
                                          const FiniteQuandle& q,
                                          long long budget) {
  return Enumerator(d, q, budget, false).run();
}

std::vector<Coloring> enumerate_special_colorings(const Diagram& d,
                                                  const FiniteQuandle& q,
                                                  long long budget) {
  return Enumerator(d, q, budget, true).run();
}

ColoringCounts coloring_counts(const Diagram& d, const FiniteQuandle& q,
                               long long budget) {
  ColoringCounts out;
  out.total = static_cast<long long>(enumerate_colorings(d, q, budget).size());
  out.trivial = q.size();
  out.nontrivial = out.total - out.trivial;
  out.special = static_cast<long long>(
      enumerate_special_colorings(d, q, budget).size());
  return out;
}

SpecialCompatibility special_compatibility(const Diagram& d,
                                           const FiniteQuandle& q) {
  int g = d.balance_gcd();
  return {q.k_order(), g, g % q.k_order() == 0};
}

} // namespace sgq
