#pragma once

#include <string>
#include <vector>

#include <sgq/diagram.hpp>

namespace sgq {

enum class MoveKind { r1_plus, r1_minus, r2_plus, r2_minus, r3, r4, r5 };

MoveKind parse_move_kind(const std::string& name); // "R1+", "R2-", "R3", ...
std::string move_kind_name(MoveKind k);

// A site references the diagram it was found on; applying it to a modified
// diagram raises invalid_site when the referenced pattern is gone.
struct MoveSite {
  MoveKind kind;
  int variant = 0;
  std::vector<int> nodes;
  std::vector<int> strands;
  std::vector<int> darts;
  std::string describe(const Diagram& d) const;
};

std::vector<MoveSite> find_move_sites(const Diagram& d, MoveKind kind);

// Local rewrite; everything outside the site is untouched. The result is a
// fresh validated diagram.
Diagram apply_move(const Diagram& d, const MoveSite& site);

} // namespace sgq
