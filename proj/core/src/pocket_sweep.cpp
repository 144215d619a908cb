#include "kvis/pocket_sweep.hpp"

#include <algorithm>

namespace kvis {

std::vector<Point> critical_vertices(const Pocket& pocket) {
  const std::vector<Point>& chain = pocket.chain;
  std::vector<Point> out;
  const std::size_t n = chain.size();
  if (n < 3) return out;
  const Point& origin = chain[n - 1];
  for (std::size_t i = n - 2; i >= 1; --i) {
    const Point& u = chain[i];
    // Only reflex chain vertices (clockwise turns in counterclockwise ring
    // order) can obstruct.
    if (orientation(chain[i - 1], u, chain[i + 1]) != Orientation::kCW) {
      if (i == 1) break;
      continue;
    }
    const Segment sight{origin, u};
    bool visible = true;
    for (std::size_t j = 0; j + 1 < n && visible; ++j) {
      if (j == i || j + 1 == i) continue;  // edges at u
      const Segment edge{chain[j], chain[j + 1]};
      if (j + 1 == n - 1) {
        // Edge at the origin: blocks only if u's sight runs along it.
        if (strictly_between(origin, u, chain[j])) visible = false;
        continue;
      }
      if (segments_intersect(sight, edge)) visible = false;
    }
    if (visible) {
      const Orientation before = orientation(origin, u, chain[i - 1]);
      const Orientation after = orientation(origin, u, chain[i + 1]);
      const bool same_side = static_cast<int>(before) * static_cast<int>(after) >= 0;
      if (same_side) out.push_back(u);
    }
    if (i == 1) break;
  }
  return out;
}

namespace {

Rational cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
  return ax * by - ay * bx;
}

}  // namespace

SweepResult sweep(const Pocket& pocket, const HostEdge& host, int k, double epsilon_t) {
  if (k < 2 || k % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "sweep needs an even k >= 2");
  SweepResult result;
  result.feasible.edge = host.edge;
  result.critical_vertices = critical_vertices(pocket);
  const double x_t = host.reflex_at_b ? 1.0 - epsilon_t : epsilon_t;
  auto interval_to_x = [&](double t) {
    if (host.reflex_at_b) {
      result.feasible.t_lo = std::min(t, x_t);
      result.feasible.t_hi = x_t;
    } else {
      result.feasible.t_lo = x_t;
      result.feasible.t_hi = std::max(t, x_t);
    }
  };
  const double far_t = host.reflex_at_b ? 0.0 : 1.0;
  if (result.critical_vertices.empty()) {
    result.status = SweepStatus::kNoCriticalVertices;
    interval_to_x(far_t);
    return result;
  }
  const std::size_t budget = static_cast<std::size_t>((k + 1) / 2);
  std::size_t pick = budget;
  if (result.critical_vertices.size() < budget) {
    result.status = SweepStatus::kFewerCriticalThanBudget;
    pick = result.critical_vertices.size();
  }
  const Point& w = result.critical_vertices[pick - 1];
  result.chosen = w;
  const Point& origin = pocket.chain.back();
  const Point& a = host.segment.a;
  const Point& b = host.segment.b;
  const Rational dx = w.x() - origin.x(), dy = w.y() - origin.y();
  const Rational ex = b.x() - a.x(), ey = b.y() - a.y();
  const Rational denom = cross(dx, dy, ex, ey);
  if (sgn(denom) == 0) {
    interval_to_x(far_t);
    result.ray_hit = host.reflex_at_b ? a : b;
    return result;
  }
  const Rational ox = a.x() - origin.x(), oy = a.y() - origin.y();
  const Rational ray_param = cross(ox, oy, ex, ey) / denom;
  Rational edge_param = cross(ox, oy, dx, dy) / denom;
  if (sgn(ray_param) <= 0) {
    interval_to_x(far_t);
    result.ray_hit = host.reflex_at_b ? a : b;
    return result;
  }
  if (edge_param < 0) edge_param = 0;
  if (edge_param > 1) edge_param = 1;
  result.ray_hit = lerp(a, b, edge_param);
  interval_to_x(edge_param.get_d());
  return result;
}

}  // namespace kvis
