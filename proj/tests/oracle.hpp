#pragma once

// Test-only oracles, kept independent of the library's enumeration paths.

#include <vector>

#include <sgq/coloring.hpp>
#include <sgq/diagram.hpp>
#include <sgq/quandle.hpp>

namespace oracle {

// Counts colorings by checking every |Q|^#arcs assignment against
// is_coloring. Exponential; callers keep |Q|^#arcs small.
inline long long naive_coloring_count(const sgq::Diagram& d,
                                      const sgq::FiniteQuandle& q,
                                      bool special = false) {
  const int na = static_cast<int>(d.arcs().size());
  std::vector<int> colors(na, 0);
  long long count = 0;
  while (true) {
    sgq::Coloring c{colors};
    bool ok = special ? sgq::is_special_coloring(d, q, c)
                      : sgq::is_coloring(d, q, c);
    if (ok)
      ++count;
    int i = 0;
    while (i < na && ++colors[i] == q.size()) {
      colors[i] = 0;
      ++i;
    }
    if (i == na)
      break;
  }
  return count;
}

} // namespace oracle
