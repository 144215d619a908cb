#pragma once

#include <optional>
#include <vector>

#include "kvis/geometry.hpp"

namespace kvis {

enum class EdgeKind { kReal, kDiagonal };

/// What a piece edge is: a (sub-)edge of the source polygon, by flat edge
/// index, or a diagonal, by diagonal id.
struct EdgeLabel {
  EdgeKind kind = EdgeKind::kReal;
  int index = -1;

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

/// A region of the decomposition. Convex as produced by decompose(); after
/// merge() the union of two pieces is stored here as well and may have up to
/// two reflex vertices.
struct ConvexPiece {
  int id = -1;
  Ring ring;                      // counterclockwise
  std::vector<int> vertex_ids;    // FlatIndex ids, parallel to ring
  std::vector<EdgeLabel> labels;  // labels[i] describes ring edge i -> i+1

  int real_edge_count() const;
  std::vector<int> real_edges() const;  // source edge ids, in ring order
};

struct Diagonal {
  int id = -1;
  Segment segment;
  int vertex_a = -1, vertex_b = -1;  // FlatIndex ids
  int piece_a = -1, piece_b = -1;
};

enum class DecompositionMode { kMinimal, kFast };

struct Decomposition {
  std::vector<ConvexPiece> pieces;
  std::vector<Diagonal> diagonals;
  PolygonWithHoles source;
  DecompositionMode mode = DecompositionMode::kFast;

  const ConvexPiece& piece(int id) const;
  const Diagonal& diagonal(int id) const;
};

/// Convex partition by vertex-to-vertex diagonals. kMinimal uses an exact
/// dynamic program and requires a polygon without holes (with holes it falls
/// back to kFast; check Decomposition::mode). kFast triangulates and then
/// greedily drops diagonals whose removal keeps both sides convex.
Decomposition decompose(const PolygonWithHoles& poly, DecompositionMode mode = DecompositionMode::kFast);

/// All vertex pairs (i < j) whose open segment lies in the polygon interior.
std::vector<std::pair<int, int>> valid_diagonals(const PolygonWithHoles& poly);

/// Triangle decomposition (every diagonal of a maximal non-crossing set).
Decomposition triangulate(const PolygonWithHoles& poly);

struct DualEdge {
  int piece_a, piece_b, diagonal;
};

struct DualGraph {
  std::vector<int> nodes;  // piece ids, ascending
  std::vector<DualEdge> edges;

  std::vector<int> neighbors(int piece) const;
  int degree(int piece) const;
  bool is_tree() const;
  bool is_connected() const;
};

DualGraph dual_graph(const Decomposition& d);

/// BFS spanning tree from root with neighbours visited in ascending piece id.
DualGraph spanning_tree(const DualGraph& g, int root);

/// Leaf pieces of a tree dual graph (the single node when there is one).
/// Throws kNotATree for cyclic duals.
std::vector<int> ears(const DualGraph& g);

/// Ear with smallest minimum x; ties by smallest minimum y, then piece id.
int leftmost_ear(const DualGraph& g, const Decomposition& d);

/// Replaces the two pieces on either side of `diagonal_id` with their union.
/// The union keeps the lower piece id.
Decomposition merge(const Decomposition& d, int diagonal_id);

/// Union of two pieces sharing diagonal `diagonal_id`, labels preserved.
ConvexPiece merge_pieces(const ConvexPiece& a, const ConvexPiece& b, int diagonal_id);

/// Optional post-pass: merges pieces with fewer than `min_edges` edges into a
/// dual neighbour when the union stays strictly convex.
Decomposition merge_small_pieces(const Decomposition& d, int min_edges);

/// A maximal chain of ring vertices strictly inside a convex-hull bridge.
struct Pocket {
  std::vector<Point> chain;           // v1 .. vn; v1 and vn are hull vertices
  std::vector<std::size_t> indices;   // ring indices, parallel to chain
  Segment mouth;                      // v1 -> vn
};

std::vector<Pocket> pockets_of(const Ring& ring);

/// Exact convex hull (no collinear points), counterclockwise, starting from
/// the lexicographically smallest vertex.
std::vector<Point> convex_hull(std::vector<Point> points);

/// Total exact area of the pieces, doubled.
Rational total_area2(const Decomposition& d);

/// Checks every structural decomposition invariant. Throws kInvalidArgument
/// with a description of the first violation.
void check_decomposition(const Decomposition& d);

}  // namespace kvis
