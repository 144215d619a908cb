#pragma once

#include <optional>
#include <vector>

#include "kvis/decomposition.hpp"
#include "kvis/visibility.hpp"

namespace kvis {

/// Host edge for a sweep: a segment and which endpoint is the reflex vertex
/// x that bounds the feasible sub-segment.
struct HostEdge {
  Segment segment;
  bool reflex_at_b = true;  // x = segment.b, else x = segment.a
  int edge = -1;            // scene edge index, when known
};

enum class SweepStatus { kOk, kFewerCriticalThanBudget, kNoCriticalVertices };

struct SweepResult {
  SweepStatus status = SweepStatus::kOk;
  std::vector<Point> critical_vertices;  // chain order from vn toward v1
  std::optional<Point> chosen;           // w
  std::optional<Point> ray_hit;          // p = L_w intersected with e
  EdgeInterval feasible;                 // S, parameters on the host segment
};

/// Reflex interior chain vertices (clockwise turns; the chain comes from a
/// counterclockwise ring), visited from vn toward v1, that the ray from vn
/// reaches before any chain edge and whose two neighbours lie in one closed
/// half-plane of the line through vn and the vertex.
std::vector<Point> critical_vertices(const Pocket& pocket);

/// Rotational sweep from vn. Chooses the ceil(k/2)-th critical vertex (or the
/// last one when there are fewer), shoots the ray from vn through it and
/// returns the part of the host edge between the hit point and x. k must be
/// even and at least 2.
SweepResult sweep(const Pocket& pocket, const HostEdge& host, int k, double epsilon_t = 1e-6);

}  // namespace kvis
