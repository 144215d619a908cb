#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kvis/decomposition.hpp"
#include "kvis/guards.hpp"
#include "kvis/visibility.hpp"

namespace kvis {

struct SamplePlan {
  int grid_density = 64;  // per bounding-box axis, boundary lines included
  int random_count = 2000;
  int near_feature_count = 8;  // per vertex and per edge
  std::uint64_t seed = 1;
};

/// Strictly interior sample points: grid, rejection-sampled uniform points
/// (at most 100x oversampling) and points just inside every vertex and edge.
std::vector<Point> sample_points(const PolygonWithHoles& poly, const SamplePlan& plan);

struct CoverageReport {
  int k = 0;
  int target_m = 0;
  std::vector<Point> samples;
  std::vector<int> counts;  // parallel to samples
  int min_coverage = 0;
  std::map<int, int> histogram;
  std::vector<std::size_t> violations;  // indices into samples, count < target_m
  int redrawn = 0;                      // samples replaced after repeated degeneracy
  bool guard_bound_ok = true;
  int guard_bound = 0;  // 0 when no piece count was supplied

  bool certified() const { return violations.empty() && !samples.empty(); }
};

/// Guard bound for a piece count: max(k * C, k + 2). Hole-edge guards are not
/// counted against it.
int guard_bound(int k, int piece_count);
bool check_guard_bound(const GuardSet& guards, const Decomposition& d);

/// Counts, per sample, the guards that k-see it. Degenerate sight lines are
/// retried with jittered samples (up to 8 times), then the sample is redrawn.
/// Evaluation is spread over KVIS_THREADS threads; results do not depend on
/// the thread count. `piece_count` > 0 enables the guard-bound check.
CoverageReport coverage(const PolygonWithHoles& poly, const GuardSet& guards, const SamplePlan& plan,
                        int piece_count = 0, VisibilityOptions options = {});

struct PropertyReport {
  long long cases = 0;
  long long checks = 0;
  long long violations = 0;
  int max_value = 0;  // largest observed crossing or pocket count
  std::vector<std::string> examples;  // first few violation descriptions

  bool ok() const { return violations == 0 && cases > 0; }
};

/// Unions of adjacent MINIMAL pieces: sampled point pairs cross at most two
/// edges of the union.
PropertyReport check_blocking_lemma(const std::vector<PolygonWithHoles>& polygons, int pairs_per_union,
                                    std::uint64_t seed);

/// Random convex A, exterior g, interior p: the segment gp crosses the
/// boundary of A exactly once.
PropertyReport check_boundary_guarding(int triples, std::uint64_t seed);

/// Random non-convex simple quadrilaterals have exactly one pocket.
PropertyReport check_quad_pocket(int quads, std::uint64_t seed);

/// Thread count for sampling: KVIS_THREADS if set and positive, else the
/// hardware concurrency.
int verifier_threads();

}  // namespace kvis
