#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <sgq/errors.hpp>

namespace sgq {

class FiniteGroup;

// Witness for a failed quandle axiom: which law broke and at which elements.
struct AxiomWitness {
  enum class Law { idempotence, bijectivity, distributivity };
  Law law;
  int a = -1, b = -1, c = -1;
  std::string describe() const;
};

// Finite quandle on {0..n-1} with an explicit operation table.
// table_[a][b] = a * b. The inverse operation a *~ b is derived from the
// column permutations. Immutable after construction.
class FiniteQuandle {
public:
  // Validates all three axioms; throws error(errc::axiom_violation) with a
  // witness description on failure.
  explicit FiniteQuandle(std::vector<std::vector<int>> table,
                         std::vector<std::string> labels = {});

  int size() const { return n_; }

  int op(int a, int b) const { return table_[a][b]; }        // a * b
  int inv_op(int a, int b) const { return inv_table_[a][b]; } // a *~ b

  // x *^s b for s = +1 / -1
  int op_signed(int x, int b, int sign) const {
    return sign >= 0 ? op(x, b) : inv_op(x, b);
  }

  const std::string& label(int a) const { return labels_[a]; }
  std::optional<int> index_of_label(const std::string& s) const;

  // Least k >= 1 with (*b)^k = id for every b: lcm of column orders.
  int k_order() const { return k_order_; }
  bool is_k_quandle(int m) const { return m >= 1 && m % k_order_ == 0; }

  // Order of the single column permutation (*b).
  int column_order(int b) const;

  const std::vector<std::vector<int>>& table() const { return table_; }

  bool operator==(const FiniteQuandle& o) const { return table_ == o.table_; }

private:
  int n_;
  std::vector<std::vector<int>> table_;
  std::vector<std::vector<int>> inv_table_;
  std::vector<std::string> labels_;
  int k_order_;
};

// Checks the axioms without constructing; nullopt when all hold.
std::optional<AxiomWitness>
check_quandle_axioms(const std::vector<std::vector<int>>& table);

FiniteQuandle quandle_from_table(std::vector<std::vector<int>> table,
                                 std::vector<std::string> labels = {});

// i * j = 2j - i (mod n)
FiniteQuandle dihedral_quandle(int n);

// All elements equal: a * b = a.
FiniteQuandle trivial_quandle(int n);

// Residues of Z_n[t]/(h(t)) with a * b = t a + (1-t) b. The constant and
// leading coefficients of h must be units mod n (so t is invertible and
// reduction is well defined). h is given by coefficients, constant first.
FiniteQuandle alexander_quandle(int n, const std::vector<int>& h_coeffs);

// a * b = b^-1 a b  /  a * b = b a^-1 b  over a finite group.
FiniteQuandle conjugation_quandle(const FiniteGroup& g);
FiniteQuandle core_quandle(const FiniteGroup& g);

// Operator word: sequence of (generator id, sign). Empty word = identity.
struct OperatorEntry {
  int generator;
  int sign; // +1 -> *g, -1 -> *~g
  bool operator==(const OperatorEntry&) const = default;
};
using OperatorWord = std::vector<OperatorEntry>;

// Acts on x left-to-right; assignment maps generator ids to quandle
// elements. Throws errc::unassigned_generator if a generator has no image.
int apply_operator_word(const FiniteQuandle& q, int x, const OperatorWord& w,
                        const std::vector<int>& assignment);

// Parses "t2+t+1" or "t^2+t+1" / "2t+3" style polynomials into coefficient
// form (constant term first).
std::vector<int> parse_polynomial(const std::string& text);
std::string polynomial_label(const std::vector<int>& coeffs);

} // namespace sgq
