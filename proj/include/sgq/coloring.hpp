#pragma once

#include <cstdint>
#include <vector>

#include <sgq/diagram.hpp>
#include <sgq/quandle.hpp>

namespace sgq {

// Arc coloring: one quandle element per arc, in arc index order.
struct Coloring {
  std::vector<int> colors;
  bool operator==(const Coloring&) const = default;
};

inline constexpr long long kDefaultColoringBudget = 10'000'000;

// Crossing rule and vertex-word constraints.
bool is_coloring(const Diagram& d, const FiniteQuandle& q, const Coloring& c);

// is_coloring plus one color per vertex star.
bool is_special_coloring(const Diagram& d, const FiniteQuandle& q,
                         const Coloring& c);

// Exact backtracking enumeration; crossing relations propagate along
// under-strands once over-arcs are chosen. Throws errc::budget_exceeded when
// the branch-node budget runs out (never returns a truncated list).
std::vector<Coloring>
enumerate_colorings(const Diagram& d, const FiniteQuandle& q,
                    long long budget = kDefaultColoringBudget);

// Vertex-uniform enumeration: one color per vertex star; a candidate is
// accepted iff the crossing relations hold and at every vertex with color a
// and balance m the operator (*a)^m fixes every arc color.
std::vector<Coloring>
enumerate_special_colorings(const Diagram& d, const FiniteQuandle& q,
                            long long budget = kDefaultColoringBudget);

struct ColoringCounts {
  long long total = 0;
  long long trivial = 0; // constant colorings, always |Q|
  long long nontrivial = 0;
  long long special = 0;
};

ColoringCounts coloring_counts(const Diagram& d, const FiniteQuandle& q,
                               long long budget = kDefaultColoringBudget);

// Sufficient divisibility condition for special colorings with a k-quandle,
// reported alongside the exact per-vertex check used by the enumerator.
struct SpecialCompatibility {
  int k_order;
  int balance_gcd;
  bool k_order_divides_balance; // k | gcd (gcd 0 counts as divisible)
};

SpecialCompatibility special_compatibility(const Diagram& d,
                                           const FiniteQuandle& q);

} // namespace sgq
