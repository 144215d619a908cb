#include "kvis/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>

namespace kvis {

int ConvexPiece::real_edge_count() const {
  return static_cast<int>(std::count_if(labels.begin(), labels.end(),
                                        [](const EdgeLabel& l) { return l.kind == EdgeKind::kReal; }));
}

std::vector<int> ConvexPiece::real_edges() const {
  std::vector<int> out;
  for (const EdgeLabel& l : labels) {
    if (l.kind == EdgeKind::kReal) out.push_back(l.index);
  }
  return out;
}

const ConvexPiece& Decomposition::piece(int id) const {
  for (const ConvexPiece& p : pieces) {
    if (p.id == id) return p;
  }
  throw Error(ErrorCode::kInvalidArgument, "no piece with id " + std::to_string(id));
}

const Diagonal& Decomposition::diagonal(int id) const {
  for (const Diagonal& d : diagonals) {
    if (d.id == id) return d;
  }
  throw Error(ErrorCode::kInvalidArgument, "no diagonal with id " + std::to_string(id));
}

namespace {

struct Box {
  double min_x, min_y, max_x, max_y;
};

Box box_of(const Point& a, const Point& b) {
  return {std::min(a.fx(), b.fx()), std::min(a.fy(), b.fy()), std::max(a.fx(), b.fx()),
          std::max(a.fy(), b.fy())};
}

bool boxes_apart(const Box& a, const Box& b, double slack) {
  return a.max_x < b.min_x - slack || b.max_x < a.min_x - slack || a.max_y < b.min_y - slack ||
         b.max_y < a.min_y - slack;
}

bool is_polygon_edge(const FlatIndex& idx, int i, int j) { return idx.next[i] == j || idx.next[j] == i; }

// Polygon edges with their float boxes, built once per query batch so the
// all-pairs diagonal test copies no rationals.
struct EdgeTable {
  std::vector<Segment> segments;
  std::vector<Box> boxes;

  explicit EdgeTable(const FlatIndex& idx) {
    for (int e = 0; e < static_cast<int>(idx.size()); ++e) {
      segments.push_back(idx.edge(e));
      boxes.push_back(box_of(segments.back().a, segments.back().b));
    }
  }
};

bool diagonal_is_valid(const PolygonWithHoles& poly, const FlatIndex& idx, const EdgeTable& edges, int i, int j) {
  if (i == j || is_polygon_edge(idx, i, j)) return false;
  const Point& a = idx.vertices[i];
  const Point& b = idx.vertices[j];
  if (a == b) return false;
  const Box sb = box_of(a, b);
  const double slack = 1e-12 * (1.0 + std::abs(sb.max_x) + std::abs(sb.max_y));
  const int n = static_cast<int>(idx.size());
  std::optional<Segment> s;
  for (int e = 0; e < n; ++e) {
    if (boxes_apart(sb, edges.boxes[e], slack)) continue;
    const int f = idx.next[e];
    const bool incident = e == i || e == j || f == i || f == j;
    if (incident) {
      // Only a fold-back along the incident edge matters here.
      const int other = (e == i || e == j) ? f : e;
      if (strictly_between(a, b, idx.vertices[other])) return false;
      continue;
    }
    if (!s) s = Segment{a, b};
    if (segments_intersect(*s, edges.segments[e])) return false;
  }
  const Point mid(Rational((a.x() + b.x()) / 2), Rational((a.y() + b.y()) / 2));
  return point_in_polygon(mid, poly) == Location::kInside;
}

using PairKey = std::pair<int, int>;

PairKey key(int a, int b) { return a < b ? PairKey{a, b} : PairKey{b, a}; }

// Piece from an ordered CCW vertex-id cycle; diagonal ids looked up by pair.
ConvexPiece make_piece(int id, const std::vector<int>& cycle, const FlatIndex& idx,
                       const std::map<PairKey, int>& diagonal_ids) {
  ConvexPiece p;
  p.id = id;
  p.vertex_ids = cycle;
  const std::size_t m = cycle.size();
  for (std::size_t t = 0; t < m; ++t) {
    const int a = cycle[t];
    const int b = cycle[(t + 1) % m];
    p.ring.vertices.push_back(idx.vertices[a]);
    if (idx.next[a] == b) {
      p.labels.push_back({EdgeKind::kReal, a});
    } else {
      p.labels.push_back({EdgeKind::kDiagonal, diagonal_ids.at(key(a, b))});
    }
  }
  return p;
}

void attach_diagonal_pieces(Decomposition& d) {
  for (Diagonal& diag : d.diagonals) {
    diag.piece_a = diag.piece_b = -1;
  }
  std::map<int, Diagonal*> by_id;
  for (Diagonal& diag : d.diagonals) by_id[diag.id] = &diag;
  for (const ConvexPiece& p : d.pieces) {
    for (const EdgeLabel& l : p.labels) {
      if (l.kind != EdgeKind::kDiagonal) continue;
      Diagonal* diag = by_id.at(l.index);
      if (diag->piece_a < 0) {
        diag->piece_a = p.id;
      } else {
        diag->piece_b = p.id;
      }
    }
  }
}

Decomposition build_from_diagonals(const PolygonWithHoles& poly, const FlatIndex& idx,
                                   const std::vector<PairKey>& chosen,
                                   const std::vector<std::vector<int>>& cycles, DecompositionMode mode) {
  Decomposition d;
  d.source = poly;
  d.mode = mode;
  std::map<PairKey, int> ids;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const auto [a, b] = chosen[i];
    ids[key(a, b)] = static_cast<int>(i);
    d.diagonals.push_back({static_cast<int>(i), Segment{idx.vertices[a], idx.vertices[b]}, a, b, -1, -1});
  }
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    d.pieces.push_back(make_piece(static_cast<int>(c), cycles[c], idx, ids));
  }
  attach_diagonal_pieces(d);
  return d;
}

}  // namespace

std::vector<std::pair<int, int>> valid_diagonals(const PolygonWithHoles& poly) {
  const FlatIndex idx = FlatIndex::build(poly);
  const EdgeTable edges(idx);
  const int n = static_cast<int>(idx.size());
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (diagonal_is_valid(poly, idx, edges, i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

Decomposition triangulate(const PolygonWithHoles& poly) {
  const FlatIndex idx = FlatIndex::build(poly);
  const int n = static_cast<int>(idx.size());
  std::vector<PairKey> candidates = valid_diagonals(poly);
  auto len2 = [&](const PairKey& k) {
    const Point& a = idx.vertices[k.first];
    const Point& b = idx.vertices[k.second];
    const double dx = a.fx() - b.fx(), dy = a.fy() - b.fy();
    return dx * dx + dy * dy;
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const PairKey& l, const PairKey& r) { return len2(l) < len2(r); });
  std::vector<PairKey> chosen;
  std::vector<Segment> chosen_segments;
  std::vector<Box> chosen_boxes;
  for (const PairKey& c : candidates) {
    const Point& a = idx.vertices[c.first];
    const Point& b = idx.vertices[c.second];
    const Box sb = box_of(a, b);
    const Segment s{a, b};
    bool ok = true;
    for (std::size_t t = 0; t < chosen.size() && ok; ++t) {
      if (boxes_apart(sb, chosen_boxes[t], 0.0)) continue;
      ok = !segments_properly_cross(s, chosen_segments[t]);
    }
    if (ok) {
      chosen.push_back(c);
      chosen_segments.push_back(s);
      chosen_boxes.push_back(sb);
    }
  }
  std::sort(chosen.begin(), chosen.end());

  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    adj[i][idx.next[i]] = adj[idx.next[i]][i] = 1;
  }
  for (const auto& [a, b] : chosen) adj[a][b] = adj[b][a] = 1;

  std::vector<std::vector<int>> triangles;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!adj[u][v]) continue;
      for (int w = v + 1; w < n; ++w) {
        if (!adj[u][w] || !adj[v][w]) continue;
        const Point& pu = idx.vertices[u];
        const Point& pv = idx.vertices[v];
        const Point& pw = idx.vertices[w];
        const Orientation o = orientation(pu, pv, pw);
        if (o == Orientation::kCollinear) continue;
        Ring tri{{pu, pv, pw}};
        if (o == Orientation::kCW) tri = reversed(tri);
        bool empty = true;
        for (int x = 0; x < n && empty; ++x) {
          if (x == u || x == v || x == w) continue;
          if (point_in_ring(idx.vertices[x], tri) != Location::kOutside) empty = false;
        }
        if (!empty) continue;
        const Point centroid(Rational((pu.x() + pv.x() + pw.x()) / 3), Rational((pu.y() + pv.y() + pw.y()) / 3));
        if (point_in_polygon(centroid, poly) != Location::kInside) continue;
        triangles.push_back(o == Orientation::kCCW ? std::vector<int>{u, v, w} : std::vector<int>{u, w, v});
      }
    }
  }
  const std::size_t expected = static_cast<std::size_t>(n) + 2 * poly.holes.size() - 2;
  if (triangles.size() != expected) {
    throw Error(ErrorCode::kInvalidPolygon, "triangulation produced " + std::to_string(triangles.size()) +
                                                " triangles, expected " + std::to_string(expected));
  }
  return build_from_diagonals(poly, idx, chosen, triangles, DecompositionMode::kFast);
}

ConvexPiece merge_pieces(const ConvexPiece& a, const ConvexPiece& b, int diagonal_id) {
  const EdgeLabel target{EdgeKind::kDiagonal, diagonal_id};
  const auto sa = std::find(a.labels.begin(), a.labels.end(), target);
  const auto sb = std::find(b.labels.begin(), b.labels.end(), target);
  if (sa == a.labels.end() || sb == b.labels.end()) {
    throw Error(ErrorCode::kInvalidArgument, "pieces do not share diagonal " + std::to_string(diagonal_id));
  }
  const std::size_t m = a.ring.size(), nb = b.ring.size();
  const std::size_t s = static_cast<std::size_t>(sa - a.labels.begin());
  const std::size_t t = static_cast<std::size_t>(sb - b.labels.begin());
  ConvexPiece u;
  u.id = std::min(a.id, b.id);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t i = (s + 1 + r) % m;
    u.ring.vertices.push_back(a.ring[i]);
    u.vertex_ids.push_back(a.vertex_ids[i]);
    if (r + 1 < m) u.labels.push_back(a.labels[i]);
  }
  for (std::size_t r = 0; r + 2 < nb; ++r) {
    const std::size_t i = (t + 2 + r) % nb;
    u.ring.vertices.push_back(b.ring[i]);
    u.vertex_ids.push_back(b.vertex_ids[i]);
  }
  for (std::size_t r = 0; r + 1 < nb; ++r) {
    u.labels.push_back(b.labels[(t + 1 + r) % nb]);
  }
  return u;
}

namespace {

// Replaces the two pieces on a diagonal by their union, without copying the
// rest of the decomposition.
void merge_in_place(Decomposition& d, int diagonal_id) {
  const auto dit = std::find_if(d.diagonals.begin(), d.diagonals.end(),
                                [&](const Diagonal& x) { return x.id == diagonal_id; });
  if (dit == d.diagonals.end()) {
    throw Error(ErrorCode::kInvalidArgument, "no diagonal with id " + std::to_string(diagonal_id));
  }
  if (dit->piece_a == dit->piece_b) {
    throw Error(ErrorCode::kInvalidArgument, "diagonal " + std::to_string(diagonal_id) + " has one piece on both sides");
  }
  auto find_piece = [&](int id) {
    const auto it = std::find_if(d.pieces.begin(), d.pieces.end(), [&](const ConvexPiece& p) { return p.id == id; });
    if (it == d.pieces.end()) throw Error(ErrorCode::kInvalidArgument, "no piece with id " + std::to_string(id));
    return it;
  };
  const auto pa = find_piece(dit->piece_a);
  const auto pb = find_piece(dit->piece_b);
  ConvexPiece u = merge_pieces(*pa, *pb, diagonal_id);
  const int keep = u.id;
  const int drop = keep == pa->id ? pb->id : pa->id;
  *(keep == pa->id ? pa : pb) = std::move(u);
  d.pieces.erase(find_piece(drop));
  d.diagonals.erase(dit);
  for (Diagonal& other : d.diagonals) {
    if (other.piece_a == drop) other.piece_a = keep;
    if (other.piece_b == drop) other.piece_b = keep;
  }
}

}  // namespace

Decomposition merge(const Decomposition& d, int diagonal_id) {
  Decomposition out = d;
  merge_in_place(out, diagonal_id);
  return out;
}

namespace {

// Hertel-Mehlhorn pass over the diagonals in the given order.
Decomposition hertel_mehlhorn(Decomposition d, const std::vector<int>& order) {
  for (int id : order) {
    const Diagonal& diag = d.diagonal(id);
    if (diag.piece_a == diag.piece_b) continue;
    const ConvexPiece u = merge_pieces(d.piece(diag.piece_a), d.piece(diag.piece_b), id);
    if (is_strictly_convex(u.ring)) merge_in_place(d, id);
  }
  return d;
}

// Exact minimum convex partition of a simple CCW polygon by diagonals.
// best[i][j] is the minimum number of pieces of the sub-polygon i..j closed
// by segment (j, i); the piece touching that segment is a strictly convex
// chain i = a0 < a1 < ... < am = j whose links are edges or diagonals.
Decomposition minimal_partition(const PolygonWithHoles& poly) {
  const FlatIndex idx = FlatIndex::build(poly);
  const int n = static_cast<int>(idx.size());
  const auto& v = idx.vertices;
  std::vector<char> link(static_cast<std::size_t>(n * n), 0);
  auto L = [&](int a, int b) -> char& { return link[static_cast<std::size_t>(a * n + b)]; };
  for (int i = 0; i + 1 < n; ++i) L(i, i + 1) = 1;
  for (const auto& [a, b] : valid_diagonals(poly)) L(a, b) = 1;
  std::vector<signed char> orient(static_cast<std::size_t>(n) * n * n, 0);
  auto O = [&](int a, int b, int c) { return orient[(static_cast<std::size_t>(a) * n + b) * n + c]; };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        orient[(static_cast<std::size_t>(a) * n + b) * n + c] =
            static_cast<signed char>(orientation(v[a], v[b], v[c]));
      }
    }
  }
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<int> best(static_cast<std::size_t>(n * n), kInf);
  std::vector<std::vector<int>> chain(static_cast<std::size_t>(n * n));
  auto B = [&](int a, int b) -> int& { return best[static_cast<std::size_t>(a * n + b)]; };
  std::vector<int> h(static_cast<std::size_t>(n * n));
  std::vector<int> parent(static_cast<std::size_t>(n * n));
  auto H = [&](int a, int b) -> int& { return h[static_cast<std::size_t>(a * n + b)]; };
  auto P = [&](int a, int b) -> int& { return parent[static_cast<std::size_t>(a * n + b)]; };

  for (int len = 1; len < n; ++len) {
    for (int i = 0; i + len < n; ++i) {
      const int j = i + len;
      if (len == 1) {
        B(i, j) = 0;
        continue;
      }
      if (!L(i, j) && !(i == 0 && j == n - 1)) continue;
      for (int a = i; a <= j; ++a) {
        for (int b = a; b <= j; ++b) H(a, b) = kInf;
      }
      for (int a1 = i + 1; a1 < j; ++a1) {
        if (L(i, a1) && B(i, a1) < kInf && O(j, i, a1) > 0) {
          H(i, a1) = B(i, a1);
          P(i, a1) = -1;
        }
      }
      for (int cur = i + 1; cur < j; ++cur) {
        for (int prev = i; prev < cur; ++prev) {
          const int base = H(prev, cur);
          if (base >= kInf) continue;
          for (int nxt = cur + 1; nxt <= j; ++nxt) {
            if (!L(cur, nxt) || B(cur, nxt) >= kInf || O(prev, cur, nxt) <= 0) continue;
            const int cand = base + B(cur, nxt);
            if (cand < H(cur, nxt)) {
              H(cur, nxt) = cand;
              P(cur, nxt) = prev;
            }
          }
        }
      }
      int best_prev = -1, best_cost = kInf;
      for (int prev = i + 1; prev < j; ++prev) {
        if (H(prev, j) < kInf && O(prev, j, i) > 0 && H(prev, j) + 1 < best_cost) {
          best_cost = H(prev, j) + 1;
          best_prev = prev;
        }
      }
      if (best_prev < 0) continue;
      B(i, j) = best_cost;
      std::vector<int> c{j};
      int cur = j, prev = best_prev;
      while (prev >= 0) {
        c.push_back(prev);
        const int pp = P(prev, cur);
        cur = prev;
        prev = pp;
        if (cur == i) break;
      }
      if (c.back() != i) c.push_back(i);
      std::reverse(c.begin(), c.end());
      chain[static_cast<std::size_t>(i * n + j)] = std::move(c);
    }
  }
  if (B(0, n - 1) >= kInf) {
    throw Error(ErrorCode::kInvalidPolygon, "no convex partition found");
  }
  std::vector<PairKey> diagonals;
  std::vector<std::vector<int>> cycles;
  std::function<void(int, int)> emit = [&](int i, int j) {
    if (j == i + 1) return;
    const std::vector<int>& c = chain[static_cast<std::size_t>(i * n + j)];
    cycles.push_back(c);
    for (std::size_t t = 0; t + 1 < c.size(); ++t) {
      if (c[t + 1] != c[t] + 1) diagonals.push_back(key(c[t], c[t + 1]));
      emit(c[t], c[t + 1]);
    }
  };
  emit(0, n - 1);
  std::sort(diagonals.begin(), diagonals.end());
  return build_from_diagonals(poly, idx, diagonals, cycles, DecompositionMode::kMinimal);
}

}  // namespace

Decomposition decompose(const PolygonWithHoles& poly, DecompositionMode mode) {
  validate_polygon(poly);
  if (mode == DecompositionMode::kMinimal && poly.holes.empty()) {
    Decomposition d = minimal_partition(poly);
    std::sort(d.pieces.begin(), d.pieces.end(), [](const ConvexPiece& a, const ConvexPiece& b) { return a.id < b.id; });
    return d;
  }
  const Decomposition tri = triangulate(poly);
  std::vector<int> by_index(tri.diagonals.size());
  std::iota(by_index.begin(), by_index.end(), 0);
  auto length = [&](int id) {
    const Segment& s = tri.diagonal(id).segment;
    return std::hypot(s.a.fx() - s.b.fx(), s.a.fy() - s.b.fy());
  };
  std::vector<int> longest_first = by_index, shortest_first = by_index;
  std::stable_sort(longest_first.begin(), longest_first.end(), [&](int a, int b) { return length(a) > length(b); });
  std::stable_sort(shortest_first.begin(), shortest_first.end(), [&](int a, int b) { return length(a) < length(b); });
  std::optional<Decomposition> best;
  for (const auto* order : {&longest_first, &by_index, &shortest_first}) {
    Decomposition d = hertel_mehlhorn(tri, *order);
    if (!best || d.pieces.size() < best->pieces.size()) best = std::move(d);
  }
  best->mode = DecompositionMode::kFast;
  return *best;
}

Decomposition merge_small_pieces(const Decomposition& d, int min_edges) {
  Decomposition cur = d;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const ConvexPiece& p : cur.pieces) {
      if (static_cast<int>(p.ring.size()) >= min_edges) continue;
      for (const EdgeLabel& l : p.labels) {
        if (l.kind != EdgeKind::kDiagonal) continue;
        const Diagonal& diag = cur.diagonal(l.index);
        if (diag.piece_a == diag.piece_b) continue;
        const ConvexPiece u = merge_pieces(cur.piece(diag.piece_a), cur.piece(diag.piece_b), l.index);
        if (is_strictly_convex(u.ring)) {
          cur = merge(cur, l.index);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
  return cur;
}

std::vector<int> DualGraph::neighbors(int piece) const {
  std::vector<int> out;
  for (const DualEdge& e : edges) {
    if (e.piece_a == piece) out.push_back(e.piece_b);
    if (e.piece_b == piece) out.push_back(e.piece_a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int DualGraph::degree(int piece) const { return static_cast<int>(neighbors(piece).size()); }

bool DualGraph::is_connected() const {
  if (nodes.empty()) return true;
  std::vector<int> seen{nodes.front()};
  std::queue<int> q;
  q.push(nodes.front());
  while (!q.empty()) {
    const int cur = q.front();
    q.pop();
    for (int nb : neighbors(cur)) {
      if (std::find(seen.begin(), seen.end(), nb) == seen.end()) {
        seen.push_back(nb);
        q.push(nb);
      }
    }
  }
  return seen.size() == nodes.size();
}

bool DualGraph::is_tree() const { return is_connected() && edges.size() + 1 == nodes.size(); }

DualGraph dual_graph(const Decomposition& d) {
  DualGraph g;
  for (const ConvexPiece& p : d.pieces) g.nodes.push_back(p.id);
  std::sort(g.nodes.begin(), g.nodes.end());
  for (const Diagonal& diag : d.diagonals) g.edges.push_back({diag.piece_a, diag.piece_b, diag.id});
  return g;
}

DualGraph spanning_tree(const DualGraph& g, int root) {
  DualGraph t;
  t.nodes = g.nodes;
  std::vector<int> seen{root};
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    const int cur = q.front();
    q.pop();
    std::vector<DualEdge> incident;
    for (const DualEdge& e : g.edges) {
      if (e.piece_a == cur || e.piece_b == cur) incident.push_back(e);
    }
    std::sort(incident.begin(), incident.end(), [cur](const DualEdge& a, const DualEdge& b) {
      const int na = a.piece_a == cur ? a.piece_b : a.piece_a;
      const int nb = b.piece_a == cur ? b.piece_b : b.piece_a;
      return na != nb ? na < nb : a.diagonal < b.diagonal;
    });
    for (const DualEdge& e : incident) {
      const int nb = e.piece_a == cur ? e.piece_b : e.piece_a;
      if (std::find(seen.begin(), seen.end(), nb) != seen.end()) continue;
      seen.push_back(nb);
      t.edges.push_back(e);
      q.push(nb);
    }
  }
  return t;
}

std::vector<int> ears(const DualGraph& g) {
  if (!g.is_tree()) throw Error(ErrorCode::kNotATree, "dual graph has a cycle; use a spanning tree");
  if (g.nodes.size() == 1) return g.nodes;
  std::vector<int> out;
  for (int id : g.nodes) {
    if (g.degree(id) == 1) out.push_back(id);
  }
  return out;
}

int leftmost_ear(const DualGraph& g, const Decomposition& d) {
  const std::vector<int> candidates = ears(g);
  int best = -1;
  Rational best_x, best_y;
  for (int id : candidates) {
    const ConvexPiece& p = d.piece(id);
    Rational mx = p.ring[0].x(), my = p.ring[0].y();
    for (const Point& v : p.ring.vertices) {
      mx = std::min(mx, v.x());
      my = std::min(my, v.y());
    }
    if (best < 0 || mx < best_x || (mx == best_x && (my < best_y || (my == best_y && id < best)))) {
      best = id;
      best_x = mx;
      best_y = my;
    }
  }
  return best;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], p) != Orientation::kCCW) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && orientation(hull[k - 2], hull[k - 1], pts[i]) != Orientation::kCCW) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Pocket> pockets_of(const Ring& ring) {
  const std::vector<Point> hull = convex_hull(ring.vertices);
  const std::size_t n = ring.size();
  std::vector<std::size_t> on_hull;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(hull.begin(), hull.end(), ring[i]) != hull.end()) on_hull.push_back(i);
  }
  std::vector<Pocket> out;
  if (on_hull.size() < 2) return out;
  for (std::size_t h = 0; h < on_hull.size(); ++h) {
    const std::size_t from = on_hull[h];
    const std::size_t to = on_hull[(h + 1) % on_hull.size()];
    const std::size_t gap = (to + n - from) % n;
    if (gap <= 1) continue;
    Pocket p;
    for (std::size_t r = 0; r <= gap; ++r) {
      const std::size_t i = (from + r) % n;
      p.chain.push_back(ring[i]);
      p.indices.push_back(i);
    }
    p.mouth = {ring[from], ring[to]};
    const bool off_mouth = std::any_of(p.chain.begin() + 1, p.chain.end() - 1, [&](const Point& q) {
      return orientation(p.mouth.a, p.mouth.b, q) != Orientation::kCollinear;
    });
    if (off_mouth) out.push_back(std::move(p));
  }
  return out;
}

Rational total_area2(const Decomposition& d) {
  Rational sum = 0;
  for (const ConvexPiece& p : d.pieces) sum += signed_area2(p.ring);
  return sum;
}

void check_decomposition(const Decomposition& d) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  const FlatIndex idx = FlatIndex::build(d.source);
  Rational source_area = signed_area2(d.source.outer);
  for (const Ring& h : d.source.holes) source_area += signed_area2(h);
  if (total_area2(d) != source_area) fail("piece areas do not sum to the polygon area");
  std::vector<int> real_uses(idx.size(), 0);
  std::map<int, int> diagonal_uses;
  for (const ConvexPiece& p : d.pieces) {
    if (p.labels.size() != p.ring.size() || p.vertex_ids.size() != p.ring.size()) {
      fail("piece " + std::to_string(p.id) + " has inconsistent label count");
    }
    if (!is_strictly_convex(p.ring)) fail("piece " + std::to_string(p.id) + " is not convex");
    for (std::size_t t = 0; t < p.labels.size(); ++t) {
      const EdgeLabel& l = p.labels[t];
      const int a = p.vertex_ids[t];
      const int b = p.vertex_ids[(t + 1) % p.vertex_ids.size()];
      if (l.kind == EdgeKind::kReal) {
        if (l.index != a || idx.next[a] != b) fail("piece " + std::to_string(p.id) + " mislabels a real edge");
        ++real_uses[static_cast<std::size_t>(a)];
      } else {
        const Diagonal& diag = d.diagonal(l.index);
        if (key(a, b) != key(diag.vertex_a, diag.vertex_b)) fail("diagonal label endpoints mismatch");
        ++diagonal_uses[l.index];
      }
    }
  }
  for (std::size_t e = 0; e < real_uses.size(); ++e) {
    if (real_uses[e] != 1) fail("source edge " + std::to_string(e) + " used " + std::to_string(real_uses[e]) + " times");
  }
  for (const Diagonal& diag : d.diagonals) {
    if (diagonal_uses[diag.id] != 2) fail("diagonal " + std::to_string(diag.id) + " not shared by two pieces");
  }
}

}  // namespace kvis
