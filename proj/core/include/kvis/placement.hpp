#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kvis/decomposition.hpp"
#include "kvis/guards.hpp"
#include "kvis/pocket_sweep.hpp"
#include "kvis/verifier.hpp"
#include "kvis/visibility.hpp"

namespace kvis {

struct PlacementOptions {
  DecompositionMode mode = DecompositionMode::kMinimal;
  VisibilityOptions visibility;
  /// Merge pieces with fewer than k edges into a neighbour when the union
  /// stays convex.
  bool merge_small = true;
  /// Candidate positions per host edge for strong-visibility intervals.
  int interval_samples = 16;
  /// Self-check plan. The repair step sees exactly these samples.
  SamplePlan check_plan{64, 10000, 8, 1};
  bool self_check = true;
  /// Move guards (never add any) when the self-check finds undercovered
  /// samples.
  bool repair = true;
  int repair_rounds = 200;
  int repair_candidates_per_edge = 15;
};

struct SweepRecord {
  int piece = -1, next_piece = -1;
  HostEdge host;
  SweepResult result;
  bool used = false;  // guards were placed inside result.feasible
};

struct TraceStep {
  int piece = -1;
  std::vector<int> guards;       // indices into GuardSet::guards
  std::vector<SweepRecord> sweeps;
  std::vector<int> relocations;  // guard indices relocated in this step
  std::vector<int> merges;       // diagonal ids merged while processing
  std::string note;
};

struct RepairMove {
  int guard = -1;
  GuardHost from, to;
};

struct PlacementTrace {
  Decomposition decomposition;  // after the optional merge pass
  std::vector<int> merged_diagonals;  // removed by the merge pass, in order
  std::vector<int> order;       // piece visiting order
  int root = -1;
  std::vector<TraceStep> steps;
  std::vector<RepairMove> repairs;
  std::vector<std::string> warnings;
};

struct PlacementResult {
  GuardSet guards;
  PlacementTrace trace;
  bool certified = false;
  int min_coverage = 0;
  std::vector<Point> undercovered;  // from the final self-check, first few
};

/// m guards on a convex piece: real-edge midpoints in ring order, then extra
/// parameters (1/3, 2/3, 1/4, 3/4, ...) on real edges by decreasing length.
/// Diagonal midpoints are used only when the piece has no real edge.
std::vector<Guard> guard_convex_piece(const ConvexPiece& piece, int m, bool prefer_real, const Decomposition& d,
                                      int k);

/// Moves a guard off a diagonal onto a real edge from which the previous
/// piece is strongly k-visible. Guards already on real edges come back
/// unchanged. Throws kRelocationFailed when no position qualifies.
Guard relocate_guard(const Guard& g, const Decomposition& d, int previous_piece, const VisibilityScene& scene,
                     int interval_samples, const std::vector<Point>& occupied = {});

/// The (k+2)-guarding pipeline. Odd k is floored to even with a warning;
/// k < 2 throws kInvalidArgument. The result is never silently uncertified:
/// check `certified`.
PlacementResult place_guards(const PolygonWithHoles& poly, int k, const PlacementOptions& options = {});

/// 2-guarding of a polygon with holes: the pipeline on the outer boundary
/// plus a guard at the midpoint of every hole edge.
PlacementResult guard_with_holes(const PolygonWithHoles& poly, int k, const PlacementOptions& options = {});

}  // namespace kvis
