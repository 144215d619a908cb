#include "kvis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kvis {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kInvalidPolygon: return "INVALID_POLYGON";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kDegenerate: return "DEGENERATE";
    case ErrorCode::kEmptyResult: return "EMPTY_RESULT";
    case ErrorCode::kNotATree: return "NOT_A_TREE";
    case ErrorCode::kRelocationFailed: return "RELOCATION_FAILED";
    case ErrorCode::kPlacementUncertified: return "PLACEMENT_UNCERTIFIED";
    case ErrorCode::kGenFailed: return "GEN_FAILED";
    case ErrorCode::kIoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

Point::Point(Rational x, Rational y) : x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
  fx_ = x_.get_d();
  fy_ = y_.get_d();
}

Point::Point(double x, double y) : Point(to_rational(x), to_rational(y)) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite coordinate");
  }
}

Rational to_rational(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite coordinate");
  }
  Rational r(v);
  r.canonicalize();
  return r;
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(' << p.fx() << ", " << p.fy() << ')';
  return os.str();
}

Point lerp(const Point& a, const Point& b, const Rational& t) {
  return Point(Rational(a.x() + (b.x() - a.x()) * t),
               Rational(a.y() + (b.y() - a.y()) * t));
}

namespace {

// |error| of the double determinant is below this multiple of the summed
// absolute products, including the rounding of rational inputs to double.
constexpr double kFilterBound = 1e-14;

int sign(const Rational& v) { return sgn(v); }

int compare(const Rational& a, double fa, const Rational& b, double fb) {
  const double gap = fa - fb;
  const double scale = std::abs(fa) + std::abs(fb);
  if (gap > 1e-15 * scale) return 1;
  if (gap < -1e-15 * scale) return -1;
  return cmp(a, b);
}

}  // namespace

Orientation orientation_exact(const Point& p, const Point& q, const Point& r) {
  Rational det = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
  return static_cast<Orientation>(sign(det));
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
  const double ax = q.fx() - p.fx(), ay = q.fy() - p.fy();
  const double bx = r.fx() - p.fx(), by = r.fy() - p.fy();
  const double det = ax * by - ay * bx;
  const double mag = (std::abs(q.fx()) + std::abs(p.fx())) * (std::abs(r.fy()) + std::abs(p.fy())) +
                     (std::abs(q.fy()) + std::abs(p.fy())) * (std::abs(r.fx()) + std::abs(p.fx()));
  const double bound = kFilterBound * mag;
  if (det > bound) return Orientation::kCCW;
  if (det < -bound) return Orientation::kCW;
  return orientation_exact(p, q, r);
}

bool on_segment(const Point& p, const Point& q, const Point& r) {
  if (orientation(p, q, r) != Orientation::kCollinear) return false;
  const bool in_x = compare(r.x(), r.fx(), std::min(p.x(), q.x()), std::min(p.fx(), q.fx())) >= 0 &&
                    compare(r.x(), r.fx(), std::max(p.x(), q.x()), std::max(p.fx(), q.fx())) <= 0;
  const bool in_y = compare(r.y(), r.fy(), std::min(p.y(), q.y()), std::min(p.fy(), q.fy())) >= 0 &&
                    compare(r.y(), r.fy(), std::max(p.y(), q.y()), std::max(p.fy(), q.fy())) <= 0;
  return in_x && in_y;
}

bool strictly_between(const Point& p, const Point& q, const Point& r) {
  return r != p && r != q && on_segment(p, q, r);
}

bool segments_properly_cross(const Segment& s1, const Segment& s2) {
  const auto o1 = orientation(s1.a, s1.b, s2.a);
  const auto o2 = orientation(s1.a, s1.b, s2.b);
  if (o1 == Orientation::kCollinear || o2 == Orientation::kCollinear || o1 == o2) return false;
  const auto o3 = orientation(s2.a, s2.b, s1.a);
  const auto o4 = orientation(s2.a, s2.b, s1.b);
  return o3 != Orientation::kCollinear && o4 != Orientation::kCollinear && o3 != o4;
}

bool segments_intersect(const Segment& s1, const Segment& s2) {
  const auto o1 = orientation(s1.a, s1.b, s2.a);
  const auto o2 = orientation(s1.a, s1.b, s2.b);
  const auto o3 = orientation(s2.a, s2.b, s1.a);
  const auto o4 = orientation(s2.a, s2.b, s1.b);
  const bool none_collinear = o1 != Orientation::kCollinear && o2 != Orientation::kCollinear &&
                              o3 != Orientation::kCollinear && o4 != Orientation::kCollinear;
  if (none_collinear) return o1 != o2 && o3 != o4;
  return (o1 == Orientation::kCollinear && on_segment(s1.a, s1.b, s2.a)) ||
         (o2 == Orientation::kCollinear && on_segment(s1.a, s1.b, s2.b)) ||
         (o3 == Orientation::kCollinear && on_segment(s2.a, s2.b, s1.a)) ||
         (o4 == Orientation::kCollinear && on_segment(s2.a, s2.b, s1.b));
}

const Point& Ring::at_cyclic(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(vertices.size());
  return vertices[static_cast<std::size_t>(((i % n) + n) % n)];
}

Segment Ring::edge(std::size_t i) const {
  return {vertices[i], vertices[(i + 1) % vertices.size()]};
}

Rational signed_area2(const Ring& ring) {
  Rational sum = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    sum += a.x() * b.y() - b.x() * a.y();
  }
  return sum;
}

bool is_ccw(const Ring& ring) { return sgn(signed_area2(ring)) > 0; }

Ring reversed(const Ring& ring) {
  Ring out = ring;
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

bool is_reflex(const Ring& ring, std::size_t i) {
  const auto turn = orientation(ring.at_cyclic(static_cast<std::ptrdiff_t>(i) - 1), ring[i],
                                ring.at_cyclic(static_cast<std::ptrdiff_t>(i) + 1));
  if (turn == Orientation::kCollinear) return false;
  const auto expected = is_ccw(ring) ? Orientation::kCCW : Orientation::kCW;
  return turn != expected;
}

bool is_convex(const Ring& ring) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (is_reflex(ring, i)) return false;
  }
  return true;
}

bool is_strictly_convex(const Ring& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (orientation(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) != Orientation::kCCW) {
      return false;
    }
  }
  return true;
}

bool is_simple(const Ring& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment ei = ring.edge(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment ej = ring.edge(j);
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (segments_intersect(ei, ej)) return false;
        continue;
      }
      // Adjacent edges share one vertex; they must not fold back onto each
      // other.
      const Point& shared = (j == i + 1) ? ei.b : ei.a;
      const Point& far_i = (j == i + 1) ? ei.a : ei.b;
      const Point& far_j = (j == i + 1) ? ej.b : ej.a;
      if (n == 3) {
        if (orientation(far_i, shared, far_j) == Orientation::kCollinear) return false;
        continue;
      }
      if (on_segment(shared, far_i, far_j) || on_segment(shared, far_j, far_i)) return false;
    }
  }
  return true;
}

Ring normalize_ring(const Ring& ring, std::vector<std::string>* warnings, const std::string& label) {
  std::vector<Point> v = ring.vertices;
  auto warn = [&](const std::string& msg) {
    if (warnings != nullptr) warnings->push_back(label + ": " + msg);
  };
  // Duplicates.
  std::vector<Point> dedup;
  for (const Point& p : v) {
    if (!dedup.empty() && dedup.back() == p) {
      warn("merged duplicate vertex " + to_string(p));
      continue;
    }
    dedup.push_back(p);
  }
  while (dedup.size() > 1 && dedup.front() == dedup.back()) {
    warn("merged duplicate vertex " + to_string(dedup.back()));
    dedup.pop_back();
  }
  v = std::move(dedup);
  // Collinear triples, repeated until stable.
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
      const std::size_t n = v.size();
      const Point& prev = v[(i + n - 1) % n];
      const Point& next = v[(i + 1) % n];
      if (orientation(prev, v[i], next) == Orientation::kCollinear) {
        warn("collapsed collinear vertex " + to_string(v[i]));
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) {
    throw Error(ErrorCode::kInvalidPolygon, label + " has fewer than 3 distinct non-collinear vertices");
  }
  return Ring{std::move(v)};
}

std::size_t PolygonWithHoles::vertex_count() const {
  std::size_t n = outer.size();
  for (const Ring& h : holes) n += h.size();
  return n;
}

namespace {

std::string ring_label(std::size_t ring) {
  return ring == 0 ? std::string("outer ring") : "hole " + std::to_string(ring - 1);
}

// First vertex index of a non-simple ring's offending edge pair, for error
// messages.
std::string describe_self_intersection(const Ring& ring) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(ring.edge(i), ring.edge(j))) {
        return "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
      }
    }
  }
  return "adjacent edges overlap";
}

}  // namespace

void validate_polygon(const PolygonWithHoles& poly) {
  std::vector<const Ring*> rings{&poly.outer};
  for (const Ring& h : poly.holes) rings.push_back(&h);
  for (std::size_t r = 0; r < rings.size(); ++r) {
    const Ring& ring = *rings[r];
    if (ring.size() < 3) {
      throw Error(ErrorCode::kInvalidPolygon, ring_label(r) + " has fewer than 3 vertices");
    }
    if (!is_simple(ring)) {
      throw Error(ErrorCode::kInvalidPolygon,
                  ring_label(r) + " is self-intersecting: " + describe_self_intersection(ring));
    }
    const bool ccw = is_ccw(ring);
    if (r == 0 && !ccw) throw Error(ErrorCode::kInvalidPolygon, "outer ring is not counterclockwise");
    if (r > 0 && ccw) throw Error(ErrorCode::kInvalidPolygon, ring_label(r) + " is not clockwise");
  }
  for (std::size_t h = 0; h < poly.holes.size(); ++h) {
    const Ring& hole = poly.holes[h];
    for (std::size_t i = 0; i < hole.size(); ++i) {
      const Location loc = point_in_ring(hole[i], poly.outer);
      if (loc == Location::kBoundary) {
        throw Error(ErrorCode::kInvalidPolygon, "hole " + std::to_string(h) + " vertex " + std::to_string(i) +
                                                    " " + to_string(hole[i]) + " touches the outer boundary");
      }
      if (loc == Location::kOutside) {
        throw Error(ErrorCode::kInvalidPolygon, "hole " + std::to_string(h) + " vertex " + std::to_string(i) +
                                                    " " + to_string(hole[i]) + " lies outside the outer boundary");
      }
    }
    for (std::size_t i = 0; i < hole.size(); ++i) {
      for (std::size_t j = 0; j < poly.outer.size(); ++j) {
        if (segments_intersect(hole.edge(i), poly.outer.edge(j))) {
          throw Error(ErrorCode::kInvalidPolygon, "hole " + std::to_string(h) + " edge " + std::to_string(i) +
                                                      " touches outer edge " + std::to_string(j));
        }
      }
    }
    for (std::size_t g = h + 1; g < poly.holes.size(); ++g) {
      const Ring& other = poly.holes[g];
      for (std::size_t i = 0; i < hole.size(); ++i) {
        for (std::size_t j = 0; j < other.size(); ++j) {
          if (segments_intersect(hole.edge(i), other.edge(j))) {
            throw Error(ErrorCode::kInvalidPolygon, "holes " + std::to_string(h) + " and " + std::to_string(g) +
                                                        " touch (edges " + std::to_string(i) + ", " +
                                                        std::to_string(j) + ")");
          }
        }
      }
      if (point_in_ring(other[0], hole) != Location::kOutside ||
          point_in_ring(hole[0], other) != Location::kOutside) {
        throw Error(ErrorCode::kInvalidPolygon,
                    "holes " + std::to_string(h) + " and " + std::to_string(g) + " are nested");
      }
    }
  }
}

PolygonWithHoles make_polygon(Ring outer, std::vector<Ring> holes, std::vector<std::string>* warnings) {
  PolygonWithHoles poly;
  poly.outer = normalize_ring(outer, warnings, "outer ring");
  if (!is_ccw(poly.outer)) {
    poly.outer = reversed(poly.outer);
    if (warnings != nullptr) warnings->push_back("outer ring: reversed to counterclockwise");
  }
  for (std::size_t h = 0; h < holes.size(); ++h) {
    const std::string label = "hole " + std::to_string(h);
    Ring ring = normalize_ring(holes[h], warnings, label);
    if (is_ccw(ring)) {
      ring = reversed(ring);
      if (warnings != nullptr) warnings->push_back(label + ": reversed to clockwise");
    }
    poly.holes.push_back(std::move(ring));
  }
  validate_polygon(poly);
  return poly;
}

Location point_in_ring(const Point& p, const Ring& ring) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    const int ay = compare(a.y(), a.fy(), p.y(), p.fy());
    const int by = compare(b.y(), b.fy(), p.y(), p.fy());
    if ((ay < 0 && by < 0) || (ay > 0 && by > 0)) continue;
    const int ax = compare(a.x(), a.fx(), p.x(), p.fx());
    const int bx = compare(b.x(), b.fx(), p.x(), p.fx());
    if (ax < 0 && bx < 0) continue;  // edge entirely left of p
    const auto o = orientation(a, b, p);
    if (o == Orientation::kCollinear && on_segment(a, b, p)) return Location::kBoundary;
    // Half-open rule on y: count edges that straddle p.y with one endpoint
    // strictly above.
    const bool up = ay <= 0 && by > 0;
    const bool down = by <= 0 && ay > 0;
    if (up && o == Orientation::kCCW) inside = !inside;
    if (down && o == Orientation::kCW) inside = !inside;
  }
  return inside ? Location::kInside : Location::kOutside;
}

Location point_in_polygon(const Point& p, const PolygonWithHoles& poly) {
  const Location outer = point_in_ring(p, poly.outer);
  if (outer != Location::kInside) return outer;
  for (const Ring& h : poly.holes) {
    const Location l = point_in_ring(p, h);
    if (l == Location::kBoundary) return Location::kBoundary;
    if (l == Location::kInside) return Location::kOutside;
  }
  return Location::kInside;
}

FlatIndex FlatIndex::build(const PolygonWithHoles& poly) {
  FlatIndex idx;
  auto add_ring = [&](const Ring& ring, int ring_id) {
    const int base = static_cast<int>(idx.vertices.size());
    const int n = static_cast<int>(ring.size());
    for (int i = 0; i < n; ++i) {
      idx.vertices.push_back(ring[static_cast<std::size_t>(i)]);
      idx.next.push_back(base + (i + 1) % n);
      idx.prev.push_back(base + (i + n - 1) % n);
      idx.ring_of.push_back(ring_id);
    }
  };
  add_ring(poly.outer, 0);
  for (std::size_t h = 0; h < poly.holes.size(); ++h) add_ring(poly.holes[h], static_cast<int>(h) + 1);
  return idx;
}

bool is_reflex_in_polygon(const FlatIndex& index, int i) {
  // Both outer (CCW) and holes (CW) keep the interior on the left.
  return orientation(index.vertices[index.prev[i]], index.vertices[i], index.vertices[index.next[i]]) ==
         Orientation::kCW;
}

double BoundingBox::diagonal() const { return std::hypot(max_x - min_x, max_y - min_y); }

BoundingBox bounding_box(const Ring& ring) {
  BoundingBox box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point& p : ring.vertices) {
    box.min_x = std::min(box.min_x, p.fx());
    box.min_y = std::min(box.min_y, p.fy());
    box.max_x = std::max(box.max_x, p.fx());
    box.max_y = std::max(box.max_y, p.fy());
  }
  return box;
}

}  // namespace kvis
