#pragma once

#include <string>
#include <vector>

#include <sgq/diagram.hpp>
#include <sgq/quandle.hpp>

namespace sgq {

// Built-in diagrams usable by name from the CLI and tests.
std::vector<std::string> fixture_names();
const std::string& fixture_text(const std::string& name); // throws on miss
Diagram fixture(const std::string& name);

// The distinguished 5-element quandle used throughout the cocycle examples
// (CLI spec name "paper5").
FiniteQuandle paper5_quandle();

// Cocycle file text for the standard nontrivial cocycle over paper5 with
// values in the symmetric group on 3 letters.
const std::string& paper5_cocycle_text();

} // namespace sgq
