#include "kvis/visibility.hpp"

#include <algorithm>
#include <cmath>

namespace kvis {

VisibilityScene::VisibilityScene(PolygonWithHoles polygon, VisibilityOptions options)
    : polygon_(std::move(polygon)), index_(FlatIndex::build(polygon_)), options_(options) {
  edges_.reserve(index_.size());
  for (std::size_t i = 0; i < index_.size(); ++i) {
    const Segment s = index_.edge(static_cast<int>(i));
    ObstacleEdge e{s.a, s.b, index_.ring_of[i]};
    e.min_x = std::min(s.a.fx(), s.b.fx());
    e.max_x = std::max(s.a.fx(), s.b.fx());
    e.min_y = std::min(s.a.fy(), s.b.fy());
    e.max_y = std::max(s.a.fy(), s.b.fy());
    edges_.push_back(std::move(e));
  }
  bounds_ = bounding_box(polygon_.outer);
  epsilon_ = options_.epsilon_rel * bounds_.diagonal();
}

namespace {

constexpr Orientation kZero = Orientation::kCollinear;

// Positive-length overlap of two collinear closed segments.
bool collinear_overlap(const Point& p, const Point& q, const Point& a, const Point& b) {
  const bool use_x = p.x() != q.x();
  auto key = [use_x](const Point& v) -> const Rational& { return use_x ? v.x() : v.y(); };
  const Rational lo1 = std::min(key(p), key(q)), hi1 = std::max(key(p), key(q));
  const Rational lo2 = std::min(key(a), key(b)), hi2 = std::max(key(a), key(b));
  return std::min(hi1, hi2) > std::max(lo1, lo2);
}

// Contribution of one obstacle edge to crossing_count(p, q).
int edge_contribution(const Point& p, const Point& q, const ObstacleEdge& e, bool count_host) {
  const Orientation o1 = orientation(p, q, e.a);
  const Orientation o2 = orientation(p, q, e.b);
  if (o1 == o2 && o1 != kZero) return 0;
  const Orientation o3 = orientation(e.a, e.b, p);
  const Orientation o4 = orientation(e.a, e.b, q);
  if (o3 == o4 && o3 != kZero) return 0;

  if (o1 == kZero && o2 == kZero) {
    if (collinear_overlap(p, q, e.a, e.b)) {
      throw Error(ErrorCode::kDegenerate, "sight segment overlaps an obstacle edge");
    }
    if (strictly_between(p, q, e.a) || strictly_between(p, q, e.b)) {
      throw Error(ErrorCode::kDegenerate, "sight segment passes through a polygon vertex");
    }
    return 0;
  }
  if ((o1 == kZero && strictly_between(p, q, e.a)) || (o2 == kZero && strictly_between(p, q, e.b))) {
    throw Error(ErrorCode::kDegenerate, "sight segment passes through a polygon vertex");
  }
  if (o1 == kZero || o2 == kZero) return 0;  // vertex incidence at p or q, or no contact
  // a and b strictly on opposite sides of line pq.
  if (o3 == kZero || o4 == kZero) return count_host ? 1 : 0;  // p or q inside the open edge
  return 1;
}

}  // namespace

int crossing_count(const Point& p, const Point& q, const VisibilityScene& scene) {
  if (p == q) throw Error(ErrorCode::kInvalidArgument, "crossing_count needs distinct points");
  const double min_x = std::min(p.fx(), q.fx()), max_x = std::max(p.fx(), q.fx());
  const double min_y = std::min(p.fy(), q.fy()), max_y = std::max(p.fy(), q.fy());
  const double slack = 1e-12 * (1.0 + scene.bounds().diagonal());
  const bool count_host = scene.options().count_host_edge;
  int count = 0;
  for (const ObstacleEdge& e : scene.edges()) {
    if (e.max_x < min_x - slack || e.min_x > max_x + slack || e.max_y < min_y - slack ||
        e.min_y > max_y + slack) {
      continue;
    }
    count += edge_contribution(p, q, e, count_host);
  }
  return count;
}

bool k_visible(const Point& p, const Point& q, int k, const VisibilityScene& scene) {
  if (p == q) return true;
  const double min_x = std::min(p.fx(), q.fx()), max_x = std::max(p.fx(), q.fx());
  const double min_y = std::min(p.fy(), q.fy()), max_y = std::max(p.fy(), q.fy());
  const double slack = 1e-12 * (1.0 + scene.bounds().diagonal());
  const bool count_host = scene.options().count_host_edge;
  int count = 0;
  for (const ObstacleEdge& e : scene.edges()) {
    if (e.max_x < min_x - slack || e.min_x > max_x + slack || e.max_y < min_y - slack ||
        e.min_y > max_y + slack) {
      continue;
    }
    count += edge_contribution(p, q, e, count_host);
    if (count > k) return false;
  }
  return true;
}

std::vector<double> candidate_parameters(int n_candidates) {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(std::max(n_candidates, 0)));
  for (int j = 0; j < n_candidates; ++j) ts.push_back(double(j + 1) / double(n_candidates + 1));
  return ts;
}

std::vector<Point> boundary_samples(const Ring& region, int n_samples, double epsilon) {
  std::vector<Point> out;
  const std::size_t n = region.size();
  out.reserve(n * static_cast<std::size_t>(n_samples + 2));
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = region[i];
    const Point& b = region[(i + 1) % n];
    const double len = std::hypot(b.fx() - a.fx(), b.fy() - a.fy());
    const double t_eps = std::clamp(epsilon / std::max(len, 1e-300), 1e-12, 0.25);
    out.push_back(lerp(a, b, to_rational(t_eps)));
    for (int j = 0; j < n_samples; ++j) {
      out.push_back(lerp(a, b, Rational(j + 1, n_samples + 1)));
    }
    out.push_back(lerp(a, b, to_rational(1.0 - t_eps)));
  }
  return out;
}

namespace {

Point vertex_centroid(const Ring& region) {
  Rational sx = 0, sy = 0;
  for (const Point& v : region.vertices) {
    sx += v.x();
    sy += v.y();
  }
  const Rational n(static_cast<long>(region.size()));
  return Point(Rational(sx / n), Rational(sy / n));
}

// Visibility of one boundary sample with bounded re-perturbation.
bool sees_sample(const Point& p, const Point& sample, const Point& centroid, int k, const VisibilityScene& scene) {
  Point s = sample;
  for (int attempt = 0; attempt <= 8; ++attempt) {
    if (s == p) return true;
    try {
      return k_visible(p, s, k, scene);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kDegenerate) throw;
    }
    // Move a tiny, attempt-dependent fraction of the way to the centroid.
    const double frac = 1e-7 * (attempt + 1) * 1.6180339887;
    s = lerp(sample, centroid, to_rational(frac));
  }
  return false;
}

}  // namespace

int count_unseen_samples(const Point& p, const Ring& region, int k, const VisibilityScene& scene, int n_samples,
                         int limit) {
  if (n_samples < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 samples per edge");
  const Point centroid = vertex_centroid(region);
  const std::size_t n = region.size();
  const std::size_t per_edge = static_cast<std::size_t>(n_samples + 2);
  const std::vector<Point> samples = boundary_samples(region, n_samples, scene.epsilon());
  int unseen = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // Samples on a region edge through p run along that edge.
    if (on_segment(region[i], region[(i + 1) % n], p)) continue;
    for (std::size_t j = 0; j < per_edge; ++j) {
      if (!sees_sample(p, samples[i * per_edge + j], centroid, k, scene)) {
        if (++unseen >= limit) return unseen;
      }
    }
  }
  return unseen;
}

bool strongly_k_sees_region(const Point& p, const Ring& region, int k, const VisibilityScene& scene,
                            int n_samples) {
  return count_unseen_samples(p, region, k, scene, n_samples, 1) == 0;
}

Point point_on_edge(const VisibilityScene& scene, int edge, double t) {
  const ObstacleEdge& e = scene.edges().at(static_cast<std::size_t>(edge));
  return lerp(e.a, e.b, to_rational(t));
}

std::vector<EdgeInterval> strong_kvis_interval_on_edge(int host_edge, const Ring& region, int k,
                                                       const VisibilityScene& scene, int n_samples) {
  if (host_edge < 0 || host_edge >= static_cast<int>(scene.edges().size())) {
    throw Error(ErrorCode::kInvalidArgument, "host edge index out of range");
  }
  const std::vector<double> ts = candidate_parameters(n_samples);
  std::vector<EdgeInterval> out;
  bool open = false;
  for (double t : ts) {
    const bool ok = strongly_k_sees_region(point_on_edge(scene, host_edge, t), region, k, scene, n_samples);
    if (ok && !open) {
      out.push_back({host_edge, t, t});
      open = true;
    } else if (ok) {
      out.back().t_hi = t;
    } else {
      open = false;
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::kEmptyResult, "no position on edge " + std::to_string(host_edge) +
                                             " strongly sees the region");
  }
  return out;
}

}  // namespace kvis
