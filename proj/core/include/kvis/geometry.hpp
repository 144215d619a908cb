#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kvis/error.hpp"

namespace kvis {

using Rational = mpq_class;

/// A point with exact rational coordinates and a cached double approximation.
/// Predicates decide on the exact values; the doubles only drive the static
/// filter, sampling heuristics and rendering.
class Point {
 public:
  Point() : x_(0), y_(0) {}
  Point(Rational x, Rational y);
  Point(double x, double y);
  Point(int x, int y) : Point(Rational(x), Rational(y)) {}

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  double fx() const { return fx_; }
  double fy() const { return fy_; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  /// Lexicographic (x, then y).
  friend bool operator<(const Point& a, const Point& b) {
    return a.x_ < b.x_ || (a.x_ == b.x_ && a.y_ < b.y_);
  }

 private:
  Rational x_, y_;
  double fx_ = 0.0, fy_ = 0.0;
};

std::string to_string(const Point& p);

struct Segment {
  Point a, b;
};

/// Point at parameter t on segment ab, computed exactly.
Point lerp(const Point& a, const Point& b, const Rational& t);

enum class Orientation { kCW = -1, kCollinear = 0, kCCW = 1 };

/// Sign of det(q - p, r - p). Floating-point filter with an exact fallback.
Orientation orientation(const Point& p, const Point& q, const Point& r);
/// Same predicate evaluated directly in rationals; used to test the filter.
Orientation orientation_exact(const Point& p, const Point& q, const Point& r);

/// True iff the open segments cross transversally in exactly one point.
bool segments_properly_cross(const Segment& s1, const Segment& s2);
/// True iff the closed segments share at least one point.
bool segments_intersect(const Segment& s1, const Segment& s2);
/// r collinear with pq and inside the closed segment pq.
bool on_segment(const Point& p, const Point& q, const Point& r);
/// r collinear with pq and strictly between p and q.
bool strictly_between(const Point& p, const Point& q, const Point& r);

/// An ordered cyclic vertex list. Construction does not validate; use
/// normalize_ring / make_polygon for checked input.
struct Ring {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  const Point& operator[](std::size_t i) const { return vertices[i]; }
  const Point& at_cyclic(std::ptrdiff_t i) const;
  Segment edge(std::size_t i) const;
};

/// Twice the signed area (positive for counterclockwise rings).
Rational signed_area2(const Ring& ring);
bool is_ccw(const Ring& ring);
Ring reversed(const Ring& ring);

/// Interior angle at vertex i exceeds pi, measured against the ring's own
/// orientation (a clockwise ring is treated as enclosing its right side).
bool is_reflex(const Ring& ring, std::size_t i);
/// No vertex is reflex. Flat vertices are allowed.
bool is_convex(const Ring& ring);
/// Every turn is a strict left turn (for a counterclockwise ring).
bool is_strictly_convex(const Ring& ring);
/// Every non-adjacent pair of edges is disjoint and adjacent edges meet only
/// at their shared vertex.
bool is_simple(const Ring& ring);

/// Merges duplicate consecutive vertices and drops vertices collinear with
/// their neighbours. Appends a message per fix to `warnings` when given.
/// Throws kInvalidPolygon if fewer than three vertices remain.
Ring normalize_ring(const Ring& ring, std::vector<std::string>* warnings = nullptr,
                    const std::string& label = "ring");

/// Outer boundary counterclockwise, holes clockwise.
struct PolygonWithHoles {
  Ring outer;
  std::vector<Ring> holes;

  std::size_t vertex_count() const;
};

/// Normalizes every ring, fixes orientations and validates simplicity and
/// hole placement. Throws kInvalidPolygon naming the offending ring/vertex.
PolygonWithHoles make_polygon(Ring outer, std::vector<Ring> holes = {},
                              std::vector<std::string>* warnings = nullptr);

/// Throws kInvalidPolygon if the polygon breaks any structural invariant.
void validate_polygon(const PolygonWithHoles& poly);

enum class Location { kInside, kBoundary, kOutside };

Location point_in_ring(const Point& p, const Ring& ring);
Location point_in_polygon(const Point& p, const PolygonWithHoles& poly);

/// Polygon vertices flattened: outer ring first, then each hole in order.
/// Edge i runs from vertex i to vertex next[i] within the same ring, so edge
/// and vertex indices coincide.
struct FlatIndex {
  std::vector<Point> vertices;
  std::vector<int> next;
  std::vector<int> prev;
  std::vector<int> ring_of;  // 0 = outer, h + 1 = hole h

  static FlatIndex build(const PolygonWithHoles& poly);
  std::size_t size() const { return vertices.size(); }
  Segment edge(int i) const { return {vertices[i], vertices[next[i]]}; }
};

/// Vertex i is reflex with respect to the polygon interior.
bool is_reflex_in_polygon(const FlatIndex& index, int i);

struct BoundingBox {
  double min_x, min_y, max_x, max_y;
  double diagonal() const;
};

BoundingBox bounding_box(const Ring& ring);

/// Rational approximation of a double, exact for the binary value.
Rational to_rational(double v);

}  // namespace kvis
