#include "kvis/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <random>
#include <thread>

#include "kvis/polygen.hpp"

namespace kvis {

namespace {

using Rng = std::mt19937_64;

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

BoundingBox bounds_of(const PolygonWithHoles& poly) { return bounding_box(poly.outer); }

bool strictly_inside(const Point& p, const PolygonWithHoles& poly) {
  return point_in_polygon(p, poly) == Location::kInside;
}

std::optional<Point> random_interior(const PolygonWithHoles& poly, Rng& rng, int attempts) {
  const BoundingBox b = bounds_of(poly);
  for (int a = 0; a < attempts; ++a) {
    const Point p(b.min_x + uniform01(rng) * (b.max_x - b.min_x), b.min_y + uniform01(rng) * (b.max_y - b.min_y));
    if (strictly_inside(p, poly)) return p;
  }
  return std::nullopt;
}

void add_near(const PolygonWithHoles& poly, const Point& base, double dx, double dy, std::vector<Point>& out) {
  const Point p(base.fx() + dx, base.fy() + dy);
  if (strictly_inside(p, poly)) out.push_back(p);
}

void near_features(const PolygonWithHoles& poly, const Ring& ring, int count, double eps, std::vector<Point>& out) {
  const double pi = std::acos(-1.0);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point& v = ring[i];
    for (int j = 0; j < count; ++j) {
      const double ang = 2.0 * pi * (j + 0.5) / count;
      add_near(poly, v, eps * std::cos(ang), eps * std::sin(ang), out);
    }
    const Point& w = ring.at_cyclic(i + 1);
    const double ex = w.fx() - v.fx(), ey = w.fy() - v.fy();
    const double len = std::hypot(ex, ey);
    // Both normals; only the interior one survives the inside test.
    for (int j = 0; j < count; ++j) {
      const Point on(v.fx() + ex * (j + 0.5) / count, v.fy() + ey * (j + 0.5) / count);
      add_near(poly, on, -ey / len * eps, ex / len * eps, out);
      add_near(poly, on, ey / len * eps, -ex / len * eps, out);
    }
  }
}

// Throws kDegenerate when some sight line is degenerate.
int count_guards(const Point& s, const GuardSet& guards, const VisibilityScene& scene) {
  int c = 0;
  for (const Guard& g : guards.guards) {
    if (g.position == s) {
      ++c;
      continue;
    }
    if (k_visible(s, g.position, guards.k, scene)) ++c;
  }
  return c;
}

}  // namespace

std::vector<Point> sample_points(const PolygonWithHoles& poly, const SamplePlan& plan) {
  std::vector<Point> out;
  const BoundingBox b = bounds_of(poly);
  if (plan.grid_density >= 2) {
    const int g = plan.grid_density;
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) {
        const Rational x = Rational(b.min_x) + (Rational(b.max_x) - Rational(b.min_x)) * Rational(i, g - 1);
        const Rational y = Rational(b.min_y) + (Rational(b.max_y) - Rational(b.min_y)) * Rational(j, g - 1);
        Point p(x, y);
        if (strictly_inside(p, poly)) out.push_back(std::move(p));
      }
    }
  }
  Rng rng(plan.seed);
  const long long cap = 100LL * std::max(plan.random_count, 1);
  long long tries = 0;
  int accepted = 0;
  while (accepted < plan.random_count && tries < cap) {
    ++tries;
    const Point p(b.min_x + uniform01(rng) * (b.max_x - b.min_x), b.min_y + uniform01(rng) * (b.max_y - b.min_y));
    if (strictly_inside(p, poly)) {
      out.push_back(p);
      ++accepted;
    }
  }
  if (plan.near_feature_count > 0) {
    const double eps = std::max(1e-6 * b.diagonal(), 1e-9);
    near_features(poly, poly.outer, plan.near_feature_count, eps, out);
    for (const Ring& h : poly.holes) near_features(poly, h, plan.near_feature_count, eps, out);
  }
  return out;
}

int guard_bound(int k, int piece_count) { return std::max(k * piece_count, k + 2); }

bool check_guard_bound(const GuardSet& guards, const Decomposition& d) {
  const auto counted = std::count_if(guards.guards.begin(), guards.guards.end(),
                                     [](const Guard& g) { return g.role != GuardRole::kHoleEdge; });
  return counted <= guard_bound(guards.k, static_cast<int>(d.pieces.size()));
}

int verifier_threads() {
  if (const char* env = std::getenv("KVIS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CoverageReport coverage(const PolygonWithHoles& poly, const GuardSet& guards, const SamplePlan& plan,
                        int piece_count, VisibilityOptions options) {
  if (guards.guards.empty()) throw Error(ErrorCode::kInvalidArgument, "coverage needs at least one guard");
  const VisibilityScene scene(poly, options);
  CoverageReport rep;
  rep.k = guards.k;
  rep.target_m = guards.target_m;
  rep.samples = sample_points(poly, plan);
  rep.counts.assign(rep.samples.size(), 0);
  std::vector<char> redrawn(rep.samples.size(), 0);
  const double eps = scene.epsilon();

  auto evaluate = [&](std::size_t i) {
    // Per-sample generator keeps the jitter independent of scheduling.
    Rng rng(plan.seed ^ (0xA24BAED4963EE407ULL * (i + 1)));
    Point s = rep.samples[i];
    for (int redraw = 0; redraw < 16; ++redraw) {
      Point trial = s;
      for (int attempt = 0; attempt <= 8; ++attempt) {
        try {
          rep.counts[i] = count_guards(trial, guards, scene);
          rep.samples[i] = trial;
          return;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kDegenerate) throw;
        }
        do {
          trial = Point(s.fx() + (2 * uniform01(rng) - 1) * eps, s.fy() + (2 * uniform01(rng) - 1) * eps);
        } while (!strictly_inside(trial, poly));
      }
      redrawn[i] = 1;
      if (auto p = random_interior(poly, rng, 10000)) s = *p;
    }
    rep.counts[i] = 0;  // unresolvable: report as uncovered rather than hide it
  };

  const int threads = std::min<int>(verifier_threads(), static_cast<int>(std::max<std::size_t>(rep.samples.size(), 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < rep.samples.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < rep.samples.size(); i = next++) evaluate(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  rep.min_coverage = rep.counts.empty() ? 0 : *std::min_element(rep.counts.begin(), rep.counts.end());
  for (std::size_t i = 0; i < rep.counts.size(); ++i) {
    ++rep.histogram[rep.counts[i]];
    if (rep.counts[i] < guards.target_m) rep.violations.push_back(i);
    rep.redrawn += redrawn[i];
  }
  if (piece_count > 0) {
    rep.guard_bound = guard_bound(guards.k, piece_count);
    const auto counted = std::count_if(guards.guards.begin(), guards.guards.end(),
                                       [](const Guard& g) { return g.role != GuardRole::kHoleEdge; });
    rep.guard_bound_ok = counted <= rep.guard_bound;
  }
  return rep;
}

namespace {

void note(PropertyReport& rep, std::string msg) {
  ++rep.violations;
  if (rep.examples.size() < 5) rep.examples.push_back(std::move(msg));
}

}  // namespace

PropertyReport check_blocking_lemma(const std::vector<PolygonWithHoles>& polygons, int pairs_per_union,
                                    std::uint64_t seed) {
  PropertyReport rep;
  Rng rng(seed);
  for (const PolygonWithHoles& poly : polygons) {
    const Decomposition d = decompose(poly, DecompositionMode::kMinimal);
    for (const Diagonal& diag : d.diagonals) {
      const ConvexPiece u = merge_pieces(d.piece(diag.piece_a), d.piece(diag.piece_b), diag.id);
      const PolygonWithHoles up = make_polygon(u.ring);
      const VisibilityScene scene(up);
      ++rep.cases;
      int done = 0;
      for (int attempt = 0; done < pairs_per_union && attempt < 20 * pairs_per_union; ++attempt) {
        const auto p = random_interior(up, rng, 1000);
        const auto q = random_interior(up, rng, 1000);
        if (!p || !q || *p == *q) continue;
        int c = 0;
        try {
          c = crossing_count(*p, *q, scene);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kDegenerate) continue;
          throw;
        }
        ++done;
        ++rep.checks;
        rep.max_value = std::max(rep.max_value, c);
        if (c > 2) note(rep, "union of pieces " + std::to_string(diag.piece_a) + "," + std::to_string(diag.piece_b) +
                                 ": " + to_string(*p) + " -> " + to_string(*q) + " crosses " + std::to_string(c));
      }
    }
  }
  return rep;
}

PropertyReport check_boundary_guarding(int triples, std::uint64_t seed) {
  PropertyReport rep;
  Rng rng(seed);
  while (rep.cases < triples) {
    std::vector<Point> pts;
    const int n = 3 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) pts.emplace_back(static_cast<int>(rng() % 101), static_cast<int>(rng() % 101));
    const std::vector<Point> hull = convex_hull(pts);
    if (hull.size() < 3) continue;
    const PolygonWithHoles a = make_polygon(Ring{hull});
    const VisibilityScene scene(a);
    const auto p = random_interior(a, rng, 10000);
    if (!p) continue;
    // Exterior point in a box three times the size of A's box.
    std::optional<Point> g;
    for (int t = 0; t < 1000 && !g; ++t) {
      const Point c(-100.0 + 300.0 * uniform01(rng), -100.0 + 300.0 * uniform01(rng));
      if (point_in_polygon(c, a) == Location::kOutside) g = c;
    }
    if (!g) continue;
    int c = 0;
    try {
      c = crossing_count(*g, *p, scene);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDegenerate) continue;
      throw;
    }
    ++rep.cases;
    ++rep.checks;
    rep.max_value = std::max(rep.max_value, c);
    if (c != 1) note(rep, to_string(*g) + " -> " + to_string(*p) + " crosses " + std::to_string(c));
  }
  return rep;
}

PropertyReport check_quad_pocket(int quads, std::uint64_t seed) {
  PropertyReport rep;
  Rng rng(seed);
  while (rep.cases < quads) {
    Ring r;
    for (int i = 0; i < 4; ++i) r.vertices.emplace_back(static_cast<int>(rng() % 41), static_cast<int>(rng() % 41));
    bool general = true;
    for (std::size_t i = 0; i < 4 && general; ++i) {
      for (std::size_t j = i + 1; j < 4 && general; ++j) {
        if (r[i] == r[j]) general = false;
        for (std::size_t l = j + 1; l < 4 && general; ++l) {
          if (orientation(r[i], r[j], r[l]) == Orientation::kCollinear) general = false;
        }
      }
    }
    if (!general || !is_simple(r)) continue;
    if (!is_ccw(r)) r = reversed(r);
    if (is_convex(r)) continue;
    ++rep.cases;
    ++rep.checks;
    const int pockets = static_cast<int>(pockets_of(r).size());
    rep.max_value = std::max(rep.max_value, pockets);
    if (pockets != 1) {
      std::string desc;
      for (const Point& v : r.vertices) desc += to_string(v) + " ";
      note(rep, desc + "has " + std::to_string(pockets) + " pockets");
    }
  }
  return rep;
}

}  // namespace kvis
