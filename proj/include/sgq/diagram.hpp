#pragma once

#include <optional>
#include <string>
#include <vector>

#include <sgq/errors.hpp>

namespace sgq {

// Diagrams are combinatorial maps: nodes carry counterclockwise port lists,
// strands are directed connections between ports. Crossings have four ports
// with fixed roles: port 0 = under-strand in, port 2 = under-strand out, the
// over-strand occupies ports 1 and 3 and enters at over_in. A crossing is
// positive exactly when over_in == 3.

enum class NodeKind { crossing, vertex, endpoint };

struct Node {
  NodeKind kind;
  std::string id;
  int n_ports = 0;
  int over_in = 3;   // crossings only
  std::string label; // endpoints only
};

struct PortRef {
  int node = -1;
  int port = -1;
  bool operator==(const PortRef&) const = default;
};

struct Strand {
  std::string id;
  PortRef from; // tail: the strand leaves this port
  PortRef to;   // head: the strand enters this port
};

// What sits at a port: which strand and which of its ends.
struct Attachment {
  int strand = -1;
  bool is_head = false;
  bool valid() const { return strand >= 0; }
};

// Maximal strand chain. Arcs glue through crossings along the over-strand
// only; edges glue through both over and under sides. Closed chains have no
// start/end attachment.
struct Chain {
  std::vector<int> strands;
  bool closed = false;
  PortRef start; // tail port of the first strand (open chains)
  PortRef end;   // head port of the last strand
};

// Face of the rotation system: cyclic dart list. Dart encoding:
// 2*strand for the forward dart (tail -> head), 2*strand+1 for backward.
struct Face {
  std::vector<int> darts;
};

inline int dart_strand(int d) { return d >> 1; }
inline bool dart_forward(int d) { return (d & 1) == 0; }
inline int dart_reverse(int d) { return d ^ 1; }

class Diagram {
public:
  Diagram() = default;

  int add_crossing(const std::string& id, int over_in);
  int add_vertex(const std::string& id, int ports);
  int add_endpoint(const std::string& id, const std::string& label);
  int add_strand(const std::string& id, PortRef from, PortRef to);
  void set_tangle(bool t) { is_tangle_ = t; }

  // Checks port usage, crossing orientation and the tangle/endpoint rule,
  // then derives arcs, edges and faces. Throws on hard errors; planarity
  // failures are recorded as warnings.
  void validate();

  bool is_tangle() const { return is_tangle_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Strand>& strands() const { return strands_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  int node_index(const std::string& id) const; // -1 when absent
  int endpoint_by_label(const std::string& label) const;

  Attachment at(PortRef p) const { return att_[p.node][p.port]; }

  const std::vector<Chain>& arcs() const { return arcs_; }
  const std::vector<Chain>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  int arc_of_strand(int s) const { return arc_of_strand_[s]; }
  int edge_of_strand(int s) const { return edge_of_strand_[s]; }
  int face_of_dart(int d) const { return face_of_dart_[d]; }

  int crossing_sign(int node) const; // +1 iff over_in == 3
  int over_out_port(int node) const;

  // Arcs meeting a crossing: under-in arc, over arc, under-out arc.
  struct CrossingArcs {
    int under_in, over, under_out;
  };
  CrossingArcs crossing_arcs(int node) const;

  // Arc ids incident to a vertex, one entry per port (counterclockwise).
  std::vector<int> arcs_at_vertex(int node) const;

  int vertex_balance(int node) const; // heads minus tails
  int balance_gcd() const;
  bool all_balanced() const;

  // Over/under exchange at every crossing; an involution.
  Diagram mirrored() const;

  bool is_planar() const { return planar_; }
  int euler_characteristic() const; // summed over components

  std::string serialize() const;
  static Diagram parse(const std::string& text);

  // Structure-preserving bijection test (node/strand renaming; vertex port
  // lists may rotate cyclically; endpoint labels must agree).
  bool isomorphic_to(const Diagram& other) const;

  std::string fresh_node_id(const std::string& prefix) const;
  std::string fresh_strand_id() const;

  // Editing helpers used by the move engine. The diagram must be
  // re-validated afterwards.
  void remove_strands(const std::vector<int>& strand_indices);
  void remove_nodes(const std::vector<int>& node_indices);
  void reattach(int strand, bool head, PortRef where);

private:
  void derive();

  std::vector<Node> nodes_;
  std::vector<Strand> strands_;
  bool is_tangle_ = false;

  std::vector<std::vector<Attachment>> att_;
  std::vector<Chain> arcs_, edges_;
  std::vector<Face> faces_;
  std::vector<int> arc_of_strand_, edge_of_strand_, face_of_dart_;
  std::vector<std::string> warnings_;
  bool planar_ = false;
  bool validated_ = false;
};

} // namespace sgq
