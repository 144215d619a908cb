#include <gtest/gtest.h>

#include <random>

#include "kvis/decomposition.hpp"
#include "kvis/visibility.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace kvis;

namespace {

// Random points on a 1/8 lattice strictly inside the polygon.
std::vector<Point> interior_points(const PolygonWithHoles& poly, int count, std::mt19937_64& rng) {
  const BoundingBox b = bounding_box(poly.outer);
  std::uniform_int_distribution<int> ux(static_cast<int>(b.min_x * 8), static_cast<int>(b.max_x * 8));
  std::uniform_int_distribution<int> uy(static_cast<int>(b.min_y * 8), static_cast<int>(b.max_y * 8));
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    Point p(Rational(ux(rng), 8), Rational(uy(rng), 8));
    if (point_in_polygon(p, poly) == Location::kInside) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(CrossingCount, Examples) {
  const VisibilityScene sq(corpus::square());
  EXPECT_EQ(crossing_count(Point(0.5, 0.5), Point(0.5, 0.0), sq), 0);
  const VisibilityScene holed(corpus::square_with_square_hole());
  EXPECT_EQ(crossing_count(Point(1, 5), Point(9, 5), holed), 2);
  EXPECT_TRUE(k_visible(Point(1, 5), Point(9, 5), 2, holed));
  EXPECT_FALSE(k_visible(Point(1, 5), Point(9, 5), 1, holed));
}

TEST(CrossingCount, DegenerateSegmentsThrow) {
  const VisibilityScene holed(corpus::square_with_square_hole());
  // Passes through hole corner (4,4).
  EXPECT_THROW(crossing_count(Point(1, 1), Point(7, 7), holed), Error);
  // Runs along the hole's bottom edge.
  EXPECT_THROW(crossing_count(Point(3, 4), Point(7, 4), holed), Error);
}

TEST(CrossingCount, HostEdgeFlag) {
  VisibilityOptions counting;
  counting.count_host_edge = true;
  const VisibilityScene plain(corpus::square());
  const VisibilityScene strict(corpus::square(), counting);
  EXPECT_EQ(crossing_count(Point(0.5, 0.0), Point(0.5, 0.5), plain), 0);
  EXPECT_EQ(crossing_count(Point(0.5, 0.0), Point(0.5, 0.5), strict), 1);
}

TEST(CrossingCount, CombAgreesWithBruteForceOracle) {
  const PolygonWithHoles comb = corpus::gen(Family::kComb, 12, 1);
  const VisibilityScene scene(comb);
  std::mt19937_64 rng(17);
  const std::vector<Point> pts = interior_points(comb, 400, rng);
  int compared = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    const auto expect = oracle::crossings(pts[i], pts[i + 1], comb);
    if (!expect) {
      EXPECT_THROW(crossing_count(pts[i], pts[i + 1], scene), Error);
      continue;
    }
    EXPECT_EQ(crossing_count(pts[i], pts[i + 1], scene), *expect);
    ++compared;
  }
  EXPECT_GT(compared, 150);
}

TEST(CrossingCount, SymmetricAndMonotone) {
  const PolygonWithHoles poly = corpus::l_with_star_hole();
  const VisibilityScene scene(poly);
  std::mt19937_64 rng(19);
  const std::vector<Point> pts = interior_points(poly, 600, rng);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    try {
      const int c = crossing_count(pts[i], pts[i + 1], scene);
      EXPECT_EQ(c, crossing_count(pts[i + 1], pts[i], scene));
      for (int k = 0; k < 6; ++k) {
        if (k_visible(pts[i], pts[i + 1], k, scene)) EXPECT_TRUE(k_visible(pts[i], pts[i + 1], k + 1, scene));
      }
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
    }
  }
}

TEST(CrossingCount, ConvexSceneInteriorPairsSeeEachOther) {
  const PolygonWithHoles pent = corpus::pentagon();
  const VisibilityScene scene(pent);
  std::mt19937_64 rng(23);
  const std::vector<Point> pts = interior_points(pent, 200, rng);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    EXPECT_EQ(crossing_count(pts[i], pts[i + 1], scene), 0);
    EXPECT_TRUE(k_visible(pts[i], pts[i + 1], 0, scene));
  }
}

TEST(StrongVisibility, ConvexContainmentAndDiagonal) {
  const PolygonWithHoles sq = make_polygon(corpus::ring({{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
  const VisibilityScene scene(sq);
  const Ring tri = corpus::ring({{0, 0}, {4, 0}, {4, 4}});
  EXPECT_TRUE(strongly_k_sees_region(Point(3, 1), tri, 0, scene, 16));
  // A point on the diagonal of the square sees the other half.
  const Ring other = corpus::ring({{0, 0}, {4, 4}, {0, 4}});
  EXPECT_TRUE(strongly_k_sees_region(Point(2, 2), other, 2, scene, 16));
}

TEST(StrongVisibility, DeepCombToothIsBlockedAtZero) {
  const PolygonWithHoles comb = corpus::gen(Family::kComb, 12, 1);
  const VisibilityScene scene(comb);
  // The comb's left tooth, seen from inside its right tooth.
  const Ring left_tooth = corpus::ring({{0, 0}, {2, 2}, {1, 8}});
  EXPECT_FALSE(strongly_k_sees_region(Point(9, 7), left_tooth, 0, scene, 32));
  EXPECT_GT(count_unseen_samples(Point(9, 7), left_tooth, 0, scene, 32), 0);
}

TEST(StrongInterval, SplitSquareSeesAcrossDiagonal) {
  const PolygonWithHoles sq = make_polygon(corpus::ring({{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
  const VisibilityScene scene(sq);
  const Ring a = corpus::ring({{0, 0}, {4, 0}, {4, 4}});
  const std::vector<double> cand = candidate_parameters(16);
  for (int e : {2, 3}) {  // edges of the other half
    const auto iv = strong_kvis_interval_on_edge(e, a, 2, scene, 16);
    ASSERT_EQ(iv.size(), 1u);
    EXPECT_DOUBLE_EQ(iv[0].t_lo, cand.front());
    EXPECT_DOUBLE_EQ(iv[0].t_hi, cand.back());
  }
}

TEST(StrongInterval, DeepSpiralIsEmpty) {
  const PolygonWithHoles spiral = corpus::gen(Family::kSpiral, 18, 1);
  const VisibilityScene scene(spiral);
  const Decomposition d = decompose(spiral, DecompositionMode::kMinimal);
  // Region: the piece farthest (in dual distance) from the host edge's piece.
  const DualGraph g = dual_graph(d);
  const int host = d.pieces.front().real_edges().front();
  int host_piece = d.pieces.front().id;
  std::vector<int> dist(d.pieces.size() * 2 + 1, -1);
  std::vector<int> queue{host_piece};
  dist[host_piece] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int nb : g.neighbors(queue[i])) {
      if (dist[nb] < 0) {
        dist[nb] = dist[queue[i]] + 1;
        queue.push_back(nb);
      }
    }
  }
  const int far = queue.back();
  ASSERT_GE(dist[far], 3);
  try {
    const auto iv = strong_kvis_interval_on_edge(host, d.piece(far).ring, 2, scene, 16);
    FAIL() << "expected no qualifying candidate, got " << iv.size() << " intervals";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyResult);
  }
}

TEST(StrongInterval, OwnPieceGivesFullEdgeAndRecheckPasses) {
  for (const auto& c : corpus::main_corpus()) {
    const VisibilityScene scene(c.polygon);
    const Decomposition d = decompose(c.polygon, DecompositionMode::kMinimal);
    const std::vector<double> cand = candidate_parameters(12);
    for (const ConvexPiece& piece : d.pieces) {
      for (int e : piece.real_edges()) {
        const auto iv = strong_kvis_interval_on_edge(e, piece.ring, 2, scene, 12);
        ASSERT_EQ(iv.size(), 1u) << c.name;
        EXPECT_DOUBLE_EQ(iv[0].t_lo, cand.front());
        EXPECT_DOUBLE_EQ(iv[0].t_hi, cand.back());
      }
      // Intervals toward each neighbouring piece: every returned candidate
      // passes an individual re-check.
      for (const ConvexPiece& other : d.pieces) {
        if (other.id == piece.id) continue;
        for (int e : piece.real_edges()) {
          std::vector<EdgeInterval> ivs;
          try {
            ivs = strong_kvis_interval_on_edge(e, other.ring, 2, scene, 12);
          } catch (const Error&) {
            continue;
          }
          for (const EdgeInterval& iv : ivs) {
            for (double t : cand) {
              if (t < iv.t_lo || t > iv.t_hi) continue;
              EXPECT_TRUE(strongly_k_sees_region(point_on_edge(scene, e, t), other.ring, 2, scene, 12)) << c.name;
            }
          }
        }
      }
    }
  }
}

TEST(BoundarySamples, CountAndPlacement) {
  const Ring sq = corpus::square().outer;
  const std::vector<Point> s = boundary_samples(sq, 4, 1e-3);
  EXPECT_EQ(s.size(), 4u * (4 + 2));
  for (const Point& p : s) EXPECT_NE(point_in_ring(p, sq), Location::kOutside);
}
