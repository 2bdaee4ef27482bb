#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <sgq/cocycle.hpp>
#include <sgq/coloring.hpp>
#include <sgq/diagram.hpp>

namespace sgq {

// Walk from one boundary endpoint to another. Length counts whole edges
// only; the terminal partial segments along the endpoint edges count zero.
struct ExtendedWalk {
  int from_endpoint, to_endpoint; // node indices
  int start_edge, end_edge;       // edges carrying the endpoints
  struct Step {
    int edge;
    bool forward; // traversal agrees with the edge orientation
  };
  std::vector<Step> whole_edges;
  std::vector<int> vertices; // v0..vs; empty for the same-edge walk

  int length() const { return static_cast<int>(whole_edges.size()); }
  int positive_edges() const {
    int k = 0;
    for (const Step& s : whole_edges)
      k += s.forward ? 1 : 0;
    return k;
  }
};

struct WalkFilters {
  bool paths = false; // no vertex repeated
  bool trails = false; // no whole edge repeated
  std::optional<int> exact_length;
  std::optional<int> positive_edges;
};

// All extended walks of length <= max_len between two distinct endpoints
// (by label or node id). Crossings are transparent; walks never pass
// through a third endpoint.
std::vector<ExtendedWalk>
enumerate_extended_walks(const Diagram& d, const std::string& from,
                         const std::string& to, int max_len,
                         const WalkFilters& filters = {});

// Boltzmann weight at a crossing: phi(x,y)^sign, y the over-arc color, x
// the under-in color for positive crossings and the under-out color for
// negative ones.
int boltzmann_weight(const Diagram& d, const TwoCocycle& phi,
                     const Coloring& c, int crossing_node);

// Ordered product of Boltzmann weights over the crossings the walk passes
// under, in walk order.
int psi_walk(const Diagram& d, const TwoCocycle& phi, const Coloring& c,
             const ExtendedWalk& w);

// Canonical multiset of group elements (sorted; size = walks x colorings),
// tagged with what it indexes.
struct PsiMultiset {
  std::vector<int> elements; // sorted H-element indices
  int q = -1;                // boundary color, -1 when unrestricted
  std::string from, to;
  int max_len = 0;
  std::string render(const FiniteGroup& h) const;
  bool operator==(const PsiMultiset&) const = default;
};

struct PsiOptions {
  int max_len = 0;
  WalkFilters filters;
  bool relaxed = false; // skip the stability/exponent gate (balanced only)
  long long budget = kDefaultColoringBudget;
};

// Gate check shared by the psi entry points; throws incompatible_cocycle
// with a report when the preconditions fail.
void check_psi_compatibility(const Diagram& d, const TwoCocycle& phi,
                             bool relaxed);

PsiMultiset psi_q(const Diagram& d, const TwoCocycle& phi, int q,
                  const std::string& from, const std::string& to,
                  const PsiOptions& opt);

// q -> multiset for every quandle element q.
std::map<int, PsiMultiset> psi_full(const Diagram& d, const TwoCocycle& phi,
                                    const std::string& from,
                                    const std::string& to,
                                    const PsiOptions& opt);

// (from,to) -> psi_full over all ordered endpoint pairs.
std::map<std::pair<std::string, std::string>, std::map<int, PsiMultiset>>
psi_all_pairs(const Diagram& d, const TwoCocycle& phi, const PsiOptions& opt);

} // namespace sgq
