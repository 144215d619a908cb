#include <gtest/gtest.h>

#include <map>
#include <set>

#include "kvis/placement.hpp"
#include "support/corpus.hpp"

using namespace kvis;

namespace {

std::vector<Point> positions(const std::vector<Guard>& gs) {
  std::vector<Point> out;
  for (const Guard& g : gs) out.push_back(g.position);
  return out;
}

// Every guard sits on its host edge at a parameter strictly inside (0, 1).
void expect_on_real_edges(const PolygonWithHoles& poly, const GuardSet& gs, const std::string& name) {
  const FlatIndex idx = FlatIndex::build(poly);
  for (const Guard& g : gs.guards) {
    ASSERT_EQ(g.host.kind, EdgeKind::kReal) << name;
    ASSERT_GE(g.host.index, 0);
    ASSERT_LT(g.host.index, static_cast<int>(idx.size()));
    EXPECT_GT(g.host.t, 0) << name;
    EXPECT_LT(g.host.t, 1) << name;
    const Segment e = idx.edge(g.host.index);
    EXPECT_EQ(lerp(e.a, e.b, g.host.t), g.position) << name;
  }
}

}  // namespace

TEST(GuardConvexPiece, SquareMidpoints) {
  const Decomposition d = decompose(corpus::square(), DecompositionMode::kMinimal);
  const std::vector<Guard> gs = guard_convex_piece(d.pieces.front(), 4, true, d, 2);
  const std::vector<Point> expect{Point(0.5, 0.0), Point(1.0, 0.5), Point(0.5, 1.0), Point(0.0, 0.5)};
  EXPECT_EQ(positions(gs), expect);
  for (const Guard& g : gs) {
    EXPECT_EQ(g.host.t, Rational(1, 2));
    EXPECT_EQ(g.role, GuardRole::kBase);
  }
}

TEST(GuardConvexPiece, TriangleGetsExtraOnLongestEdge) {
  const PolygonWithHoles tri = corpus::triangle();  // longest edge (4,0)-(1,3)
  const Decomposition d = decompose(tri, DecompositionMode::kMinimal);
  const std::vector<Guard> gs = guard_convex_piece(d.pieces.front(), 4, true, d, 2);
  ASSERT_EQ(gs.size(), 4u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(gs[i].host.t, Rational(1, 2));
  EXPECT_EQ(gs[3].host.t, Rational(1, 3));
  EXPECT_EQ(gs[3].position, Point(3, 1));
}

TEST(GuardConvexPiece, TwoRealEdgesReuseThem) {
  // Middle piece of a path of three: two real edges, two diagonals.
  const PolygonWithHoles hex = make_polygon(corpus::ring({{0, 0}, {6, 0}, {6, 2}, {4, 1}, {2, 1}, {0, 2}}));
  const Decomposition d = decompose(hex, DecompositionMode::kMinimal);
  const ConvexPiece* two = nullptr;
  for (const ConvexPiece& p : d.pieces) {
    int diag = 0;
    for (const EdgeLabel& l : p.labels) diag += l.kind == EdgeKind::kDiagonal;
    if (p.real_edge_count() == 2 && diag == 2) two = &p;
  }
  ASSERT_NE(two, nullptr);
  const std::vector<Guard> gs = guard_convex_piece(*two, 4, true, d, 2);
  ASSERT_EQ(gs.size(), 4u);
  std::map<int, int> per_edge;
  for (const Guard& g : gs) {
    EXPECT_EQ(g.host.kind, EdgeKind::kReal);
    ++per_edge[g.host.index];
  }
  EXPECT_EQ(per_edge.size(), 2u);
  EXPECT_EQ(gs[0].host.t, Rational(1, 2));
  EXPECT_EQ(gs[1].host.t, Rational(1, 2));
  const std::vector<Point> pos = positions(gs);
  const std::set<Point> distinct(pos.begin(), pos.end());
  EXPECT_EQ(distinct.size(), 4u);
}

TEST(PlaceGuards, ConvexBaseCase) {
  for (int k : {2, 4}) {
    const PlacementResult r = place_guards(corpus::pentagon(), k);
    EXPECT_EQ(r.guards.guards.size(), static_cast<std::size_t>(k + 2));
    EXPECT_EQ(r.trace.steps.size(), 1u);
    EXPECT_TRUE(r.certified);
    EXPECT_GE(r.min_coverage, k + 2);
    expect_on_real_edges(corpus::pentagon(), r.guards, "pentagon");
  }
}

TEST(PlaceGuards, LShape) {
  const PlacementResult r = place_guards(corpus::l_hexagon(), 2);
  EXPECT_LE(r.guards.guards.size(), 4u);
  EXPECT_TRUE(r.certified);
  EXPECT_EQ(r.guards.target_m, 4);
  expect_on_real_edges(corpus::l_hexagon(), r.guards, "l");
}

TEST(PlaceGuards, CombWithinBoundAndCertified) {
  const PolygonWithHoles comb = corpus::gen(Family::kComb, 12, 1);
  const PlacementResult r = place_guards(comb, 2);
  const int pieces = static_cast<int>(decompose(comb, DecompositionMode::kMinimal).pieces.size());
  EXPECT_LE(static_cast<int>(r.guards.guards.size()), guard_bound(2, pieces));
  EXPECT_TRUE(r.certified);
}

TEST(PlaceGuards, CorpusInvariants) {
  for (const auto& c : corpus::main_corpus()) {
    for (int k : {2, 4}) {
      const PlacementResult r = place_guards(c.polygon, k);
      EXPECT_TRUE(r.certified) << c.name << " k=" << k;
      expect_on_real_edges(c.polygon, r.guards, c.name);
      EXPECT_TRUE(check_guard_bound(r.guards, decompose(c.polygon, DecompositionMode::kMinimal))) << c.name;
      std::map<int, int> relocated;
      for (const TraceStep& s : r.trace.steps) {
        for (int g : s.relocations) ++relocated[g];
      }
      for (const auto& [g, n] : relocated) EXPECT_EQ(n, 1) << c.name << " guard " << g;
      EXPECT_EQ(r.trace.order.size(), r.trace.decomposition.pieces.size());
      EXPECT_EQ(r.trace.order.front(), r.trace.root);
    }
  }
}

TEST(PlaceGuards, Deterministic) {
  for (const auto& c : corpus::main_corpus()) {
    const PlacementResult a = place_guards(c.polygon, 2);
    const PlacementResult b = place_guards(c.polygon, 2);
    EXPECT_EQ(a.guards, b.guards) << c.name;
  }
}

TEST(PlaceGuards, FastModeAlsoCertifies) {
  PlacementOptions opt;
  opt.mode = DecompositionMode::kFast;
  for (const auto& c : corpus::main_corpus()) {
    const PlacementResult r = place_guards(c.polygon, 2, opt);
    EXPECT_TRUE(r.certified) << c.name;
  }
}

TEST(PlaceGuards, OddKIsFlooredAndSmallKRejected) {
  const PlacementResult r = place_guards(corpus::l_hexagon(), 3);
  EXPECT_EQ(r.guards.k, 2);
  EXPECT_FALSE(r.trace.warnings.empty());
  EXPECT_THROW(place_guards(corpus::l_hexagon(), 1), Error);
}

TEST(PlaceGuards, TraceMergesReplayToSource) {
  for (const auto& c : corpus::main_corpus()) {
    const PlacementResult r = place_guards(c.polygon, 4);
    Decomposition d = decompose(c.polygon, DecompositionMode::kMinimal);
    for (int id : r.trace.merged_diagonals) d = merge(d, id);
    ASSERT_EQ(d.pieces.size(), r.trace.decomposition.pieces.size()) << c.name;
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
      EXPECT_EQ(d.pieces[i].ring.vertices, r.trace.decomposition.pieces[i].ring.vertices) << c.name;
    }
    while (!d.diagonals.empty()) d = merge(d, d.diagonals.front().id);
    ASSERT_EQ(d.pieces.size(), 1u);
    EXPECT_EQ(signed_area2(d.pieces.front().ring), signed_area2(c.polygon.outer)) << c.name;
    EXPECT_EQ(d.pieces.front().ring.size(), c.polygon.outer.size()) << c.name;
  }
}

TEST(Relocate, SplitSquareGuardMovesToOtherHalf) {
  const PolygonWithHoles sq = make_polygon(corpus::ring({{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
  const Decomposition d = triangulate(sq);
  ASSERT_EQ(d.diagonals.size(), 1u);
  const Diagonal& diag = d.diagonals.front();
  const VisibilityScene scene(sq);
  const Guard g{lerp(diag.segment.a, diag.segment.b, Rational(1, 2)), {EdgeKind::kDiagonal, diag.id, Rational(1, 2)}, 2,
                GuardRole::kBase};
  const Guard moved = relocate_guard(g, d, diag.piece_a, scene, 16);
  EXPECT_EQ(moved.role, GuardRole::kRelocated);
  EXPECT_EQ(moved.host.kind, EdgeKind::kReal);
  const std::vector<int> other = d.piece(diag.piece_b).real_edges();
  EXPECT_NE(std::find(other.begin(), other.end(), moved.host.index), other.end());
  EXPECT_TRUE(strongly_k_sees_region(moved.position, d.piece(diag.piece_a).ring, 2, scene, 64));
}

TEST(Relocate, RealEdgeGuardIsUnchanged) {
  const Decomposition d = decompose(corpus::l_hexagon(), DecompositionMode::kMinimal);
  const VisibilityScene scene(corpus::l_hexagon());
  const Guard g{Point(1, 0), {EdgeKind::kReal, 0, Rational(1, 2)}, 2, GuardRole::kBase};
  EXPECT_EQ(relocate_guard(g, d, d.pieces.front().id, scene, 16), g);
}

TEST(Relocate, InteriorPieceFallsBackToSharedVertex) {
  // This polygon's minimum partition has a piece bounded only by diagonals.
  const PolygonWithHoles tri = corpus::gen(Family::kRandomSimple, 16, 4);
  const Decomposition d = decompose(tri, DecompositionMode::kMinimal);
  const ConvexPiece* interior = nullptr;
  for (const ConvexPiece& p : d.pieces) {
    if (p.real_edge_count() == 0) interior = &p;
  }
  ASSERT_NE(interior, nullptr);
  const VisibilityScene scene(tri);
  const FlatIndex& idx = scene.index();
  int tried = 0;
  for (const Diagonal& diag : d.diagonals) {
    if (diag.piece_a != interior->id && diag.piece_b != interior->id) continue;
    const int previous = diag.piece_a == interior->id ? diag.piece_b : diag.piece_a;
    const Guard g{lerp(diag.segment.a, diag.segment.b, Rational(1, 2)), {EdgeKind::kDiagonal, diag.id, Rational(1, 2)},
                  2, GuardRole::kBase};
    const Guard moved = relocate_guard(g, d, previous, scene, 16);
    EXPECT_EQ(moved.host.kind, EdgeKind::kReal);
    const int e = moved.host.index;
    const bool at_v = e == diag.vertex_a || e == diag.vertex_b || idx.next[e] == diag.vertex_a ||
                      idx.next[e] == diag.vertex_b;
    EXPECT_TRUE(at_v);
    EXPECT_TRUE(strongly_k_sees_region(moved.position, d.piece(previous).ring, 2, scene, 64));
    ++tried;
  }
  EXPECT_GT(tried, 0);
}

TEST(GuardWithHoles, SquareHole) {
  const PolygonWithHoles p = corpus::square_with_square_hole();
  const PlacementResult r = guard_with_holes(p, 2);
  int hole = 0, base = 0;
  for (const Guard& g : r.guards.guards) (g.role == GuardRole::kHoleEdge ? hole : base)++;
  EXPECT_EQ(hole, 4);
  EXPECT_EQ(base, 4);
  EXPECT_EQ(r.guards.target_m, 2);
  EXPECT_TRUE(r.certified);
  expect_on_real_edges(p, r.guards, "square_hole");
}

TEST(GuardWithHoles, StarHoleCountsAndCertifies) {
  const PolygonWithHoles p = corpus::l_with_star_hole();
  const PlacementResult outer_only = place_guards(PolygonWithHoles{p.outer, {}}, 2);
  const PlacementResult r = guard_with_holes(p, 2);
  int hole = 0;
  for (const Guard& g : r.guards.guards) hole += g.role == GuardRole::kHoleEdge;
  EXPECT_EQ(hole, static_cast<int>(p.holes.front().size()));
  EXPECT_EQ(r.guards.guards.size(), outer_only.guards.guards.size() + p.holes.front().size());
  EXPECT_TRUE(r.certified);
  EXPECT_GE(r.min_coverage, 2);
}
