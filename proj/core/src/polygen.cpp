#include "kvis/polygen.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace kvis {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kRandomSimple: return "random";
    case Family::kMonotone: return "monotone";
    case Family::kComb: return "comb";
    case Family::kSpiral: return "spiral";
    case Family::kStaircase: return "staircase";
    case Family::kDart: return "dart";
    case Family::kWithHoles: return "holes";
  }
  return "random";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::kRandomSimple, Family::kMonotone, Family::kComb, Family::kSpiral, Family::kStaircase,
                   Family::kDart, Family::kWithHoles}) {
    if (to_string(f) == name) return f;
  }
  if (name == "random_simple" || name == "simple") return Family::kRandomSimple;
  if (name == "with_holes") return Family::kWithHoles;
  return std::nullopt;
}

bool is_x_monotone(const Ring& ring) {
  const std::size_t n = ring.size();
  int changes = 0;
  int last = 0;
  for (std::size_t s = 0; s < 2 * n; ++s) {
    const int dir = cmp(ring[(s + 1) % n].x(), ring[s % n].x());
    if (dir == 0) continue;
    if (last != 0 && dir != last && s >= n) ++changes;
    last = dir;
  }
  return changes == 2;
}

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Ring ring_of(const std::vector<std::array<int, 2>>& pts) {
  Ring r;
  for (const auto& p : pts) r.vertices.emplace_back(p[0], p[1]);
  return r;
}

// Accepts a candidate only if normalization left it untouched.
std::optional<PolygonWithHoles> accept(const Ring& outer, const std::vector<Ring>& holes = {}) {
  try {
    std::vector<std::string> warnings;
    PolygonWithHoles poly = make_polygon(outer, holes, &warnings);
    const bool collapsed = std::any_of(warnings.begin(), warnings.end(), [](const std::string& w) {
      return w.find("collapsed") != std::string::npos || w.find("merged") != std::string::npos;
    });
    if (collapsed) return std::nullopt;
    return poly;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<PolygonWithHoles> random_simple(int n, Rng& rng) {
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    Point p(uniform(rng, 0, 1000), uniform(rng, 0, 1000));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        if (orientation(pts[i], pts[j], pts[l]) == Orientation::kCollinear) return std::nullopt;
      }
    }
  }
  // 2-opt untangling: reversing the path between two crossing edges strictly
  // shortens the tour, so this terminates.
  for (int iter = 0; iter < 20 * n * n; ++iter) {
    bool fixed = false;
    for (int i = 0; i < n && !fixed; ++i) {
      for (int j = i + 2; j < n && !fixed; ++j) {
        if (i == 0 && j == n - 1) continue;
        const Segment a{pts[i], pts[(i + 1) % n]};
        const Segment b{pts[j], pts[(j + 1) % n]};
        if (segments_intersect(a, b)) {
          std::reverse(pts.begin() + i + 1, pts.begin() + j + 1);
          fixed = true;
        }
      }
    }
    if (!fixed) return accept(Ring{pts});
  }
  return std::nullopt;
}

std::optional<PolygonWithHoles> monotone(int n, Rng& rng) {
  std::vector<int> xs;
  while (static_cast<int>(xs.size()) < n) {
    const int x = uniform(rng, 0, 1000);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<std::array<int, 2>> lower{{xs.front(), 500}}, upper;
  for (int i = 1; i + 1 < n; ++i) {
    if (uniform(rng, 0, 1) == 0) {
      lower.push_back({xs[i], uniform(rng, 0, 450)});
    } else {
      upper.push_back({xs[i], uniform(rng, 550, 1000)});
    }
  }
  lower.push_back({xs.back(), 500});
  std::reverse(upper.begin(), upper.end());
  lower.insert(lower.end(), upper.begin(), upper.end());
  return accept(ring_of(lower));
}

std::optional<PolygonWithHoles> comb(int teeth, Rng& rng) {
  const int width = 4 * teeth - 2;
  std::vector<std::array<int, 2>> v{{0, 0}, {width / 2, 1}, {width, 0}};
  for (int t = teeth - 1; t >= 1; --t) {
    const int h = uniform(rng, 6, 9);
    const int left = 4 * t;
    v.push_back({left + 2, h});
    v.push_back({left, h});
    v.push_back({left, 2});
    v.push_back({left - 2, 2});
  }
  // Leftmost tooth ends in a single apex.
  Ring r = ring_of(v);
  r.vertices.emplace_back(Rational(1), Rational(uniform(rng, 6, 9)));
  return accept(r);
}

std::optional<PolygonWithHoles> spiral(int turns, Rng& rng) {
  const int s = 4;
  std::vector<std::array<int, 2>> path{{0, 0}};
  static constexpr std::array<std::array<int, 2>, 4> kDirs{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  const int offset = uniform(rng, 0, 3);
  for (int i = 0; i < 4 * turns; ++i) {
    const auto& d = kDirs[static_cast<std::size_t>((i + offset) % 4)];
    const int len = s * (i / 2 + 1);
    path.push_back({path.back()[0] + d[0] * len, path.back()[1] + d[1] * len});
  }
  auto dir = [&](std::size_t i) {
    const int dx = path[i + 1][0] - path[i][0], dy = path[i + 1][1] - path[i][1];
    return std::array<int, 2>{(dx > 0) - (dx < 0), (dy > 0) - (dy < 0)};
  };
  // Corridor of width 2 around the path (offset 1 either side).
  std::vector<std::array<int, 2>> left, right;
  const std::size_t m = path.size() - 1;
  for (std::size_t i = 0; i <= m; ++i) {
    std::array<int, 2> nl{0, 0};
    if (i > 0) {
      const auto d = dir(i - 1);
      nl[0] += -d[1];
      nl[1] += d[0];
    }
    if (i < m) {
      const auto d = dir(i);
      nl[0] += -d[1];
      nl[1] += d[0];
    }
    if (i > 0 && i < m) {
      // Corner: the sum of the two unit normals already has length sqrt(2)
      // along the bisector, which is the exact offset corner.
    }
    left.push_back({path[i][0] + nl[0], path[i][1] + nl[1]});
    right.push_back({path[i][0] - nl[0], path[i][1] - nl[1]});
  }
  std::vector<std::array<int, 2>> ring = right;
  for (std::size_t i = left.size(); i-- > 0;) ring.push_back(left[i]);
  return accept(ring_of(ring));
}

std::optional<PolygonWithHoles> staircase(int steps, Rng& rng) {
  std::vector<int> tread(static_cast<std::size_t>(steps)), rise(static_cast<std::size_t>(steps));
  int x0 = 0;
  for (int j = 0; j < steps; ++j) {
    tread[static_cast<std::size_t>(j)] = uniform(rng, 1, 3);
    rise[static_cast<std::size_t>(j)] = uniform(rng, 1, 3);
    x0 += tread[static_cast<std::size_t>(j)];
  }
  std::vector<std::array<int, 2>> v{{0, 0}, {x0, 0}};
  int x = x0, y = 0;
  for (int j = 0; j < steps; ++j) {
    y += rise[static_cast<std::size_t>(j)];
    v.push_back({x, y});
    x -= tread[static_cast<std::size_t>(j)];
    v.push_back({x, y});
  }
  return accept(ring_of(v));
}

std::optional<PolygonWithHoles> dart(Rng& rng) {
  const Point a(uniform(rng, 0, 20), uniform(rng, 0, 20));
  const Point b(uniform(rng, 0, 20), uniform(rng, 0, 20));
  const Point c(uniform(rng, 0, 20), uniform(rng, 0, 20));
  const Orientation o = orientation(a, b, c);
  if (o == Orientation::kCollinear) return std::nullopt;
  const Point& b2 = o == Orientation::kCCW ? b : c;
  const Point& c2 = o == Orientation::kCCW ? c : b;
  const int u = uniform(rng, 1, 6), w1 = uniform(rng, 1, 6), w2 = uniform(rng, 1, 6);
  const Rational sum(u + w1 + w2);
  const Point d(Rational((u * a.x() + w1 * b2.x() + w2 * c2.x()) / sum),
                Rational((u * a.y() + w1 * b2.y() + w2 * c2.y()) / sum));
  return accept(Ring{{a, b2, c2, d}});
}

std::optional<PolygonWithHoles> with_holes(int count, Rng& rng) {
  const int width = 12 * count;
  Ring outer = ring_of({{0, 0}, {width, 0}, {width, 12}, {0, 12}});
  std::vector<Ring> holes;
  for (int i = 0; i < count; ++i) {
    const int cx = 12 * i + 6 + uniform(rng, -1, 1);
    const int cy = 6 + uniform(rng, -1, 1);
    if (i % 2 == 0) {
      holes.push_back(ring_of({{cx - 2, cy - 2}, {cx - 2, cy + 2}, {cx + 2, cy + 2}, {cx + 2, cy - 2}}));
    } else {
      holes.push_back(ring_of({{cx - 3, cy - 2}, {cx, cy + 3}, {cx + 3, cy - 2}}));
    }
  }
  return accept(outer, holes);
}

}  // namespace

PolygonWithHoles generate(const GenSpec& spec) {
  auto too_small = [&](int min_n) {
    if (spec.n < min_n) {
      throw Error(ErrorCode::kInvalidArgument, std::string(to_string(spec.family)) + " needs n >= " +
                                                   std::to_string(min_n) + ", got " + std::to_string(spec.n));
    }
  };
  int param = spec.parameter;
  switch (spec.family) {
    case Family::kRandomSimple:
    case Family::kMonotone: too_small(3); break;
    case Family::kDart: too_small(4); break;
    case Family::kComb:
      too_small(8);
      if (param <= 0) param = spec.n / 4;
      break;
    case Family::kSpiral:
      too_small(10);
      if (param <= 0) param = (spec.n / 2 - 1) / 4;
      break;
    case Family::kStaircase:
      too_small(4);
      if (param <= 0) param = (spec.n - 2) / 2;
      break;
    case Family::kWithHoles:
      too_small(8);
      if (param <= 0) param = spec.n / 8;
      break;
  }
  constexpr int kAttempts = 200;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng(spec.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(attempt));
    std::optional<PolygonWithHoles> out;
    switch (spec.family) {
      case Family::kRandomSimple: out = random_simple(spec.n, rng); break;
      case Family::kMonotone: out = monotone(spec.n, rng); break;
      case Family::kComb: out = comb(param, rng); break;
      case Family::kSpiral: out = spiral(param, rng); break;
      case Family::kStaircase: out = staircase(param, rng); break;
      case Family::kDart: out = dart(rng); break;
      case Family::kWithHoles: out = with_holes(param, rng); break;
    }
    if (out) return *out;
  }
  throw Error(ErrorCode::kGenFailed, std::string(to_string(spec.family)) + " generation failed after " +
                                         std::to_string(kAttempts) + " attempts");
}

}  // namespace kvis
