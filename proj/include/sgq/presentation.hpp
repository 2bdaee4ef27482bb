#pragma once

#include <string>
#include <vector>

#include <sgq/diagram.hpp>
#include <sgq/quandle.hpp>

namespace sgq {

// x_{under_in} *^sign x_{over} = x_{under_out}, one per crossing.
struct CrossingRelation {
  int under_in, over, under_out;
  int sign;
};

// Universally quantified vertex relation: x^w = x for every generator x.
struct VertexRelation {
  int vertex_node;
  OperatorWord word;
};

struct QuandlePresentation {
  std::vector<std::string> generators; // one per arc
  std::vector<CrossingRelation> crossing_relations;
  std::vector<VertexRelation> vertex_relations;
};

// Signed word over presentation generators, e.g. a b^-1 c.
struct Letter {
  int generator;
  int sign;
  bool operator==(const Letter&) const = default;
};
using GroupWord = std::vector<Letter>;

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<GroupWord> relators; // freely reduced
};

QuandlePresentation fundamental_quandle_presentation(const Diagram& d);

// Vertex words read generators as conjugating letters: as_group_word(w)
// turns an operator word into the product it denotes.
GroupWord as_group_word(const OperatorWord& w);

GroupWord free_reduce(GroupWord w);
GroupWord invert(const GroupWord& w);
// canonical representative of the relator up to free reduction and cyclic
// rotation (least rotation of the cyclically reduced word, the inverse is
// not identified)
GroupWord cyclic_canonical(const GroupWord& w);
bool relators_equal_cyclic(const GroupWord& a, const GroupWord& b);

std::string render_group_word(const GroupWord& w,
                              const std::vector<std::string>& names);
std::string render_operator_word(const OperatorWord& w,
                                 const std::vector<std::string>& names);

// Normal form of the instantiated relation x^w = x under the sound
// rewrites: free reduction, cyclic rotation of the word, and absorption of
// a leading operator equal to the base generator. Returns the canonical
// minimal word.
OperatorWord normalize_vertex_relation(int generator, OperatorWord w);

// Every word reachable from w by those moves (all are valid relation words
// for the generator).
std::vector<OperatorWord> vertex_relation_variants(int generator,
                                                   OperatorWord w);
bool vertex_relation_equivalent(int generator, const OperatorWord& a,
                                const OperatorWord& b);

// Per-generator instantiated normal forms, duplicates removed.
std::vector<std::pair<int, OperatorWord>>
normalized_vertex_relations(const QuandlePresentation& p);

// Crossing relation -> x_k^-1 x_i x_k x_j^-1 (barred: x_k x_i x_k^-1 x_j^-1).
// Vertex words: one commutator relator [x, w-hat] per generator when
// normalized == false; with normalized == true the per-generator normal
// forms are used, giving w-hat^-1 x w-hat x^-1 per instantiated relation.
GroupPresentation
associated_group_presentation(const QuandlePresentation& p,
                              bool normalized = false);

// Meridian generators, crossing relators as above, one relator per vertex.
// Closed diagrams only.
GroupPresentation wirtinger_presentation(const Diagram& d);

struct Abelianization {
  std::vector<long long> invariant_factors; // nonzero, each divides the next
  int free_rank;
  bool torsion_free() const {
    for (long long f : invariant_factors)
      if (f != 1)
        return false;
    return true;
  }
};

Abelianization abelianization(const GroupPresentation& gp);

struct SmithResult {
  std::vector<long long> factors; // nonzero invariant factors
  int free_rank;                  // columns minus number of factors
};

// Exact integer Smith normal form (arbitrary precision internally).
SmithResult smith_normal_form(std::vector<std::vector<long long>> m);

} // namespace sgq
