#pragma once

// The graph G on the non-zero constant states: vertex c has one edge per
// d <= (p-1)/2, to c * binom(2d, d) mod p.

#include <cstdint>
#include <vector>

#include "catmod/algebra.hpp"
#include "catmod/automaton.hpp"

namespace catmod {

struct GraphEdge {
  std::uint32_t source;
  std::uint32_t label;  // d
  std::uint32_t target;
};

class ConstantGraph {
 public:
  /// Vertices 1..p-1 with edge (c, d) -> c * multipliers[d] mod p, edges
  /// ordered by (c, d).
  ConstantGraph(Prime p, const std::vector<Residue>& multipliers);

  Prime prime() const noexcept { return p_; }
  const std::vector<std::uint32_t>& vertices() const noexcept { return vertices_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  /// Edges leaving c, ordered by label.
  std::vector<GraphEdge> out_edges(std::uint32_t c) const;
  /// Target of the edge (c, d); throws if there is none.
  std::uint32_t follow(std::uint32_t c, std::uint32_t d) const;

 private:
  Prime p_;
  std::vector<std::uint32_t> vertices_;
  std::vector<GraphEdge> edges_;
  std::size_t out_degree_;
};

ConstantGraph build_graph(Prime p);

/// Tarjan SCC count == 1.
bool strongly_connected(const ConstantGraph& graph);
bool strongly_connected(const std::vector<std::uint32_t>& vertices, const std::vector<GraphEdge>& edges);

/// Edge labels of a walk from c1 to c2: flatten(decompose_residue(c2 / c1)).
std::vector<std::uint32_t> path_between(Residue c1, Residue c2, Prime p);

struct WalkCertificate {
  std::uint32_t start;
  std::vector<std::uint32_t> labels;
  /// vertices[i] is the source of edge i; the last entry equals start.
  std::vector<std::uint32_t> vertices;
  std::vector<std::uint32_t> visited;  // ascending, distinct
};

/// Concatenates path_between over the vertices in ascending order and closes
/// the loop, validating every edge against the graph.
WalkCertificate closed_walk_all_vertices(const ConstantGraph& graph);

/// Checks the certificate edge by edge against the graph; false on any defect.
bool validate_walk(const WalkCertificate& walk, const ConstantGraph& graph);

/// Replays the walk inside the automaton through digit_pair_action starting
/// at the constant-family member labelled walk.start. Throws
/// ErrorCode::property_violation on the first label mismatch.
bool automaton_correspondence(const WalkCertificate& walk, const Dfao& dfao, const FamilyTable& families);

}  // namespace catmod
