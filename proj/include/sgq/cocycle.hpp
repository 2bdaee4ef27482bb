#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <sgq/group.hpp>
#include <sgq/quandle.hpp>

namespace sgq {

inline constexpr long long kDefaultCocycleBudget = 10'000'000;

// phi: X x X -> H with phi(x,x) = 1 and the quandle 2-cocycle identity
// phi(x1,x2) phi(x1*x2,x3) = phi(x1,x3) phi(x1*x3,x2*x3) (products
// left-to-right).
class TwoCocycle {
public:
  TwoCocycle(FiniteQuandle q, FiniteGroup h,
             std::vector<std::vector<int>> values);

  const FiniteQuandle& quandle() const { return q_; }
  const FiniteGroup& group() const { return h_; }
  int value(int x, int y) const { return values_[x][y]; }
  const std::vector<std::vector<int>>& values() const { return values_; }

  // first failing triple (x1,x2,x3) of either cocycle condition
  std::optional<std::array<int, 3>> first_failure() const;
  bool is_cocycle() const { return !first_failure().has_value(); }

  // phi(y*z, z) = phi(y, z) for all y, z; also verifies the derived
  // consequence phi(y *~ z, z) = phi(y, z).
  bool satisfies_stability() const;

  bool operator==(const TwoCocycle& o) const { return values_ == o.values_; }
  bool operator<(const TwoCocycle& o) const { return values_ < o.values_; }

  std::string serialize() const;

private:
  FiniteQuandle q_;
  FiniteGroup h_;
  std::vector<std::vector<int>> values_;
};

TwoCocycle constant_identity_cocycle(const FiniteQuandle& q,
                                     const FiniteGroup& h);

// Cocycle file: one `phi(<x>,<y>) = <element>` line per nonidentity value,
// quandle elements 1-based, omitted pairs default to the identity.
TwoCocycle parse_cocycle(const FiniteQuandle& q, const FiniteGroup& h,
                         const std::string& text);

// beta-transform: phi'(x1,x2) = beta(x1)^-1 phi(x1,x2) beta(x1*x2)
TwoCocycle coboundary_transform(const TwoCocycle& phi,
                                const std::vector<int>& beta);

// Brute-force witness search over all beta: Q -> H (|H|^|Q| candidates).
std::optional<std::vector<int>>
are_cohomologous(const TwoCocycle& a, const TwoCocycle& b,
                 long long budget = kDefaultCocycleBudget);

// All cocycles over (Q, H), optionally restricted to stability-satisfying
// ones. Backtracking over value cells with phi(x,x)=1 propagation, the
// stability orbit collapse, and early cocycle-triple checks. `cell_seed`
// permutes the search order (the result set is order independent).
std::vector<TwoCocycle> search_cocycles(const FiniteQuandle& q,
                                        const FiniteGroup& h,
                                        bool require_stability,
                                        long long budget = kDefaultCocycleBudget,
                                        unsigned cell_seed = 0);

struct CocycleClasses {
  std::vector<std::vector<int>> classes; // indices into the input list
  int trivial_class = -1;                // class containing (or cohomologous
                                         // to) the constant identity
  int nontrivial_count() const {
    return static_cast<int>(classes.size()) - (trivial_class >= 0 ? 1 : 0);
  }
};

// Partition by the coboundary relation (unrestricted beta).
CocycleClasses classify(const std::vector<TwoCocycle>& cocycles,
                        long long budget = kDefaultCocycleBudget);

} // namespace sgq
