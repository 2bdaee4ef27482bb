#pragma once

#include <string>
#include <vector>

#include <sgq/errors.hpp>

namespace sgq {

// Finite group given by its multiplication table. Products are evaluated
// left-to-right: mul(a, b) is "a then b" (the first factor acts first).
// This convention is applied uniformly everywhere in the library.
class FiniteGroup {
public:
  // Validates closure, associativity, identity and inverses; throws
  // error(errc::invalid_table) otherwise.
  FiniteGroup(std::vector<std::vector<int>> mult,
              std::vector<std::string> names = {});

  int size() const { return n_; }
  int identity() const { return identity_; }

  int mul(int a, int b) const { return mult_[a][b]; }
  int inv(int a) const { return inv_[a]; }

  int pow(int a, long long e) const;

  // Order of the element / lcm of all element orders.
  int element_order(int a) const;
  int exponent() const { return exponent_; }

  const std::string& name(int a) const { return names_[a]; }
  int index_of_name(const std::string& s) const; // throws bad_argument

  const std::vector<std::vector<int>>& table() const { return mult_; }

private:
  int n_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  std::vector<std::string> names_;
  int identity_;
  int exponent_;
};

// Symmetric group on {1..n}, elements named in cycle notation, identity
// "()". Element 0 is the identity; ordering is lexicographic in one-line
// form, so indices are stable between runs.
FiniteGroup symmetric_group(int n);

// Cyclic group Z_n with additive names "0".."n-1".
FiniteGroup cyclic_group(int n);

FiniteGroup group_from_table(std::vector<std::vector<int>> mult,
                             std::vector<std::string> names = {});

// Cycle-notation helpers for permutations of {1..n} in one-line form
// (0-based internally). "(1,2,3)" maps 1->2->3->1; "()" is the identity.
std::vector<int> parse_cycle_notation(const std::string& text, int n);
std::string cycle_notation(const std::vector<int>& one_line);

} // namespace sgq
