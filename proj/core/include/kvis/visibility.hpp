#pragma once

#include <cstddef>
#include <vector>

#include "kvis/geometry.hpp"

namespace kvis {

struct VisibilityOptions {
  /// Samples per region edge for strong-visibility checks, and candidate
  /// positions per host edge for interval searches.
  int samples_per_edge = 64;
  /// Inward nudge, as a fraction of the polygon's bounding-box diagonal.
  double epsilon_rel = 1e-6;
  /// When true, a sight segment that starts or ends in the interior of an
  /// edge counts that edge as one crossing.
  bool count_host_edge = false;
};

struct ObstacleEdge {
  Point a, b;
  int ring = 0;
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

/// All edges of a polygon as obstacles, indexed like FlatIndex (outer edges
/// first, then each hole).
class VisibilityScene {
 public:
  explicit VisibilityScene(PolygonWithHoles polygon, VisibilityOptions options = {});

  const PolygonWithHoles& polygon() const { return polygon_; }
  const FlatIndex& index() const { return index_; }
  const std::vector<ObstacleEdge>& edges() const { return edges_; }
  const VisibilityOptions& options() const { return options_; }
  /// Absolute epsilon: epsilon_rel times the bounding-box diagonal.
  double epsilon() const { return epsilon_; }
  const BoundingBox& bounds() const { return bounds_; }

 private:
  PolygonWithHoles polygon_;
  FlatIndex index_;
  std::vector<ObstacleEdge> edges_;
  VisibilityOptions options_;
  BoundingBox bounds_{};
  double epsilon_ = 0.0;
};

/// Parameter range [t_lo, t_hi] on an edge, measured from its first vertex.
struct EdgeInterval {
  int edge = -1;
  double t_lo = 0.0;
  double t_hi = 0.0;

  double midpoint() const { return 0.5 * (t_lo + t_hi); }
  double length() const { return t_hi - t_lo; }
};

/// Number of obstacle edges whose open interior transversally crosses the
/// open segment pq. Throws kDegenerate when pq overlaps an edge or passes
/// through a polygon vertex.
int crossing_count(const Point& p, const Point& q, const VisibilityScene& scene);

/// crossing_count(p, q) <= k, stopping early once k is exceeded.
bool k_visible(const Point& p, const Point& q, int k, const VisibilityScene& scene);

/// Samples on the boundary of `region`: per edge, n_samples interior
/// parameters plus both endpoints nudged inward by the scene epsilon.
std::vector<Point> boundary_samples(const Ring& region, int n_samples, double epsilon);

/// p is k-visible from every boundary sample of region. Degenerate samples
/// are nudged toward the region's vertex centroid up to 8 times before being
/// counted as blocked.
bool strongly_k_sees_region(const Point& p, const Ring& region, int k, const VisibilityScene& scene,
                            int n_samples);

/// Number of region boundary samples that p fails to k-see (0 means strong
/// visibility). Stops counting after `limit` failures.
int count_unseen_samples(const Point& p, const Ring& region, int k, const VisibilityScene& scene,
                         int n_samples, int limit = 1 << 30);

/// Candidate parameters used on a host edge: (j + 1) / (n + 1), j < n.
std::vector<double> candidate_parameters(int n_candidates);

/// Maximal runs of candidate positions on host_edge from which the region is
/// strongly k-visible. Throws kEmptyResult when no candidate qualifies.
std::vector<EdgeInterval> strong_kvis_interval_on_edge(int host_edge, const Ring& region, int k,
                                                       const VisibilityScene& scene, int n_samples);

/// Point at parameter t on obstacle edge `edge`.
Point point_on_edge(const VisibilityScene& scene, int edge, double t);

}  // namespace kvis
