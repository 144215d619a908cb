#include "kvis/placement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

namespace kvis {

std::string_view to_string(GuardRole role) {
  switch (role) {
    case GuardRole::kBase: return "BASE";
    case GuardRole::kHoleEdge: return "HOLE_EDGE";
    case GuardRole::kRelocated: return "RELOCATED";
  }
  return "BASE";
}

std::optional<GuardRole> parse_guard_role(std::string_view name) {
  for (GuardRole r : {GuardRole::kBase, GuardRole::kHoleEdge, GuardRole::kRelocated}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

namespace {

// 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ... (each reduced fraction once).
std::vector<Rational> parameter_sequence(std::size_t count) {
  std::vector<Rational> out;
  for (int den = 2; out.size() < count; ++den) {
    for (int num = 1; num < den && out.size() < count; ++num) {
      if (std::gcd(num, den) == 1) out.emplace_back(num, den);
    }
  }
  return out;
}

Segment host_segment(const Decomposition& d, const FlatIndex& idx, EdgeKind kind, int index) {
  if (kind == EdgeKind::kReal) return idx.edge(index);
  return d.diagonal(index).segment;
}

Guard make_guard(const Segment& s, EdgeKind kind, int index, const Rational& t, int k, GuardRole role) {
  Guard g;
  g.host = {kind, index, t};
  g.position = lerp(s.a, s.b, t);
  g.k = k;
  g.role = role;
  return g;
}

double seg_length(const Segment& s) { return std::hypot(s.b.fx() - s.a.fx(), s.b.fy() - s.a.fy()); }

bool occupied_by(const std::vector<Point>& occupied, const Point& p) {
  return std::find(occupied.begin(), occupied.end(), p) != occupied.end();
}

// Parameters inside an interval, centre first, then spreading outward.
std::vector<Rational> interval_parameters(const EdgeInterval& iv, int count) {
  std::vector<Rational> out;
  const Rational lo = to_rational(iv.t_lo), hi = to_rational(iv.t_hi);
  out.push_back((lo + hi) / 2);
  for (const Rational& f : parameter_sequence(static_cast<std::size_t>(count) + 1)) {
    if (f == Rational(1, 2)) continue;
    out.push_back(lo + (hi - lo) * f);
  }
  return out;
}

}  // namespace

std::vector<Guard> guard_convex_piece(const ConvexPiece& piece, int m, bool prefer_real, const Decomposition& d,
                                      int k) {
  const FlatIndex idx = FlatIndex::build(d.source);
  std::vector<EdgeLabel> hosts;
  for (const EdgeLabel& l : piece.labels) {
    if (l.kind == EdgeKind::kReal) hosts.push_back(l);
  }
  if (hosts.empty()) {
    if (prefer_real) {
      throw Error(ErrorCode::kInvalidArgument, "piece " + std::to_string(piece.id) + " has no real edge");
    }
    hosts = piece.labels;
  }
  std::vector<Guard> out;
  const std::size_t r = hosts.size();
  for (std::size_t i = 0; i < r && static_cast<int>(out.size()) < m; ++i) {
    const Segment s = host_segment(d, idx, hosts[i].kind, hosts[i].index);
    out.push_back(make_guard(s, hosts[i].kind, hosts[i].index, Rational(1, 2), k, GuardRole::kBase));
  }
  std::vector<std::size_t> by_length(r);
  for (std::size_t i = 0; i < r; ++i) by_length[i] = i;
  std::stable_sort(by_length.begin(), by_length.end(), [&](std::size_t a, std::size_t b) {
    return seg_length(host_segment(d, idx, hosts[a].kind, hosts[a].index)) >
           seg_length(host_segment(d, idx, hosts[b].kind, hosts[b].index));
  });
  const std::size_t extra = m > static_cast<int>(out.size()) ? static_cast<std::size_t>(m) - out.size() : 0;
  const std::vector<Rational> params = parameter_sequence(extra / std::max<std::size_t>(r, 1) + 2);
  for (std::size_t e = 0; e < extra; ++e) {
    const EdgeLabel& l = hosts[by_length[e % r]];
    const Segment s = host_segment(d, idx, l.kind, l.index);
    out.push_back(make_guard(s, l.kind, l.index, params[1 + e / r], k, GuardRole::kBase));
  }
  return out;
}

namespace {

// Real edges of a piece together with their flat ids.
std::vector<int> piece_real_edges(const ConvexPiece& p) { return p.real_edges(); }

std::optional<Guard> place_in_intervals(const std::vector<EdgeInterval>& ivs, const FlatIndex& idx, int k,
                                        GuardRole role, const std::vector<Point>& occupied) {
  std::vector<EdgeInterval> sorted = ivs;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const EdgeInterval& a, const EdgeInterval& b) { return a.length() > b.length(); });
  for (const EdgeInterval& iv : sorted) {
    const Segment s = idx.edge(iv.edge);
    for (const Rational& t : interval_parameters(iv, 8)) {
      if (t <= 0 || t >= 1) continue;
      Guard g = make_guard(s, EdgeKind::kReal, iv.edge, t, k, role);
      if (!occupied_by(occupied, g.position)) return g;
    }
  }
  return std::nullopt;
}

std::vector<EdgeInterval> strong_intervals(int edge, const Ring& region, int k, const VisibilityScene& scene,
                                           int samples) {
  try {
    return strong_kvis_interval_on_edge(edge, region, k, scene, samples);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kEmptyResult) return {};
    throw;
  }
}

int local_index(const ConvexPiece& p, int flat_vertex) {
  for (std::size_t i = 0; i < p.vertex_ids.size(); ++i) {
    if (p.vertex_ids[i] == flat_vertex) return static_cast<int>(i);
  }
  return -1;
}

// Pocket of `ring` whose chain has `v` strictly inside it.
std::optional<Pocket> pocket_through(const Ring& ring, const Point& v) {
  for (Pocket& p : pockets_of(ring)) {
    for (std::size_t i = 1; i + 1 < p.chain.size(); ++i) {
      if (p.chain[i] == v) return std::move(p);
    }
  }
  return std::nullopt;
}

}  // namespace

Guard relocate_guard(const Guard& g, const Decomposition& d, int previous_piece, const VisibilityScene& scene,
                     int interval_samples, const std::vector<Point>& occupied) {
  if (g.host.kind == EdgeKind::kReal) return g;
  const Diagonal& diag = d.diagonal(g.host.index);
  const ConvexPiece& a = d.piece(previous_piece);
  const int other = diag.piece_a == previous_piece ? diag.piece_b : diag.piece_a;
  const FlatIndex& idx = scene.index();
  // Real edges of the region across the diagonal, strongly seeing A.
  std::vector<EdgeInterval> ivs;
  for (int e : piece_real_edges(d.piece(other))) {
    for (const EdgeInterval& iv : strong_intervals(e, a.ring, g.k, scene, interval_samples)) ivs.push_back(iv);
  }
  if (auto out = place_in_intervals(ivs, idx, g.k, GuardRole::kRelocated, occupied)) return *out;
  // Interior case: a piece sharing an endpoint v of the diagonal that has a
  // real edge at v; use the sweep interval on that edge.
  for (int v : {diag.vertex_a, diag.vertex_b}) {
    for (const ConvexPiece& c : d.pieces) {
      if (c.id == previous_piece || local_index(c, v) < 0) continue;
      for (int e : piece_real_edges(c)) {
        if (e != v && idx.next[e] != v) continue;
        std::vector<EdgeInterval> found = strong_intervals(e, a.ring, g.k, scene, interval_samples);
        if (found.empty()) {
          if (auto pocket = pocket_through(d.source.outer, idx.vertices[v])) {
            HostEdge host{idx.edge(e), idx.next[e] == v, e};
            const SweepResult sr = sweep(*pocket, host, g.k, scene.epsilon() / std::max(seg_length(host.segment), 1e-300));
            const Segment s = idx.edge(e);
            for (const Rational& t : interval_parameters(sr.feasible, interval_samples)) {
              if (t <= 0 || t >= 1) continue;
              const Point p = lerp(s.a, s.b, t);
              if (strongly_k_sees_region(p, a.ring, g.k, scene, interval_samples)) {
                found.push_back({e, t.get_d(), t.get_d()});
                break;
              }
            }
          }
        }
        if (auto out = place_in_intervals(found, idx, g.k, GuardRole::kRelocated, occupied)) return *out;
      }
    }
  }
  throw Error(ErrorCode::kRelocationFailed, "no real-edge position strongly sees piece " +
                                                std::to_string(previous_piece) + " for the guard on diagonal " +
                                                std::to_string(g.host.index));
}

namespace {

struct Traversal {
  DualGraph tree;
  int root = -1;
  std::vector<int> order;
  std::map<int, int> parent;           // piece -> parent piece
  std::map<int, int> parent_diagonal;  // piece -> diagonal to parent
  std::map<int, std::vector<std::pair<int, int>>> children;  // piece -> (child, diagonal)
  std::map<int, int> depth;
};

Point vertex_centroid(const Ring& r) {
  double x = 0, y = 0;
  for (const Point& p : r.vertices) {
    x += p.fx();
    y += p.fy();
  }
  return Point(x / r.size(), y / r.size());
}

Traversal traverse(const Decomposition& d) {
  Traversal t;
  const DualGraph g = dual_graph(d);
  if (g.is_tree()) {
    t.tree = g;
  } else {
    // Cyclic dual (holes): spanning tree from the leftmost piece.
    int start = g.nodes.front();
    auto key = [&](int id) {
      const ConvexPiece& p = d.piece(id);
      double mx = 1e300, my = 1e300;
      for (const Point& v : p.ring.vertices) {
        if (v.fx() < mx || (v.fx() == mx && v.fy() < my)) {
          mx = v.fx();
          my = v.fy();
        }
      }
      return std::tuple(mx, my, id);
    };
    for (int id : g.nodes) {
      if (key(id) < key(start)) start = id;
    }
    t.tree = spanning_tree(g, start);
  }
  t.root = leftmost_ear(t.tree, d);
  std::vector<int> stack{t.root};
  t.parent[t.root] = -1;
  t.depth[t.root] = 0;
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    t.order.push_back(p);
    const Point c = vertex_centroid(d.piece(p).ring);
    std::vector<std::tuple<double, int, int>> kids;  // angle, diagonal, child
    for (const DualEdge& e : t.tree.edges) {
      int child = -1;
      if (e.piece_a == p) child = e.piece_b;
      if (e.piece_b == p) child = e.piece_a;
      if (child < 0 || child == t.parent[p]) continue;
      const Segment& s = d.diagonal(e.diagonal).segment;
      const double mx = 0.5 * (s.a.fx() + s.b.fx()), my = 0.5 * (s.a.fy() + s.b.fy());
      kids.emplace_back(std::atan2(my - c.fy(), mx - c.fx()), e.diagonal, child);
    }
    std::sort(kids.begin(), kids.end());
    for (const auto& [ang, diag, child] : kids) {
      t.children[p].push_back({child, diag});
      t.parent[child] = p;
      t.parent_diagonal[child] = diag;
      t.depth[child] = t.depth[p] + 1;
    }
    // Push in reverse so the smallest angle is visited first.
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::get<2>(*it));
  }
  return t;
}

// Sweep placement for piece p against the next piece; empty when the
// pocket offers too few critical vertices or only a single-point interval.
std::vector<Guard> sweep_guards(const Decomposition& d, const ConvexPiece& p, const ConvexPiece& next, int diag_id,
                                int k, const VisibilityScene& scene, TraceStep& step) {
  const FlatIndex& idx = scene.index();
  const Diagonal& diag = d.diagonal(diag_id);
  const ConvexPiece u = merge_pieces(p, next, diag_id);
  for (int v : {diag.vertex_a, diag.vertex_b}) {
    const int li = local_index(u, v);
    if (li < 0 || !is_reflex(u.ring, static_cast<std::size_t>(li))) continue;
    const auto pocket = pocket_through(u.ring, idx.vertices[v]);
    if (!pocket) continue;
    for (int e : piece_real_edges(p)) {
      if (e != v && idx.next[e] != v) continue;
      SweepRecord rec;
      rec.piece = p.id;
      rec.next_piece = next.id;
      rec.host = HostEdge{idx.edge(e), idx.next[e] == v, e};
      rec.result = sweep(*pocket, rec.host, k, scene.epsilon() / std::max(seg_length(rec.host.segment), 1e-300));
      const EdgeInterval& s = rec.result.feasible;
      const bool enough = static_cast<int>(rec.result.critical_vertices.size()) >= k / 2;
      if (enough && s.length() > 0) {
        std::vector<Guard> out;
        const Rational lo = to_rational(s.t_lo), hi = to_rational(s.t_hi);
        for (int i = 0; i < k; ++i) {
          out.push_back(make_guard(rec.host.segment, EdgeKind::kReal, e, lo + (hi - lo) * Rational(i + 1, k + 1), k,
                                   GuardRole::kBase));
        }
        rec.used = true;
        step.sweeps.push_back(std::move(rec));
        return out;
      }
      step.sweeps.push_back(std::move(rec));
    }
  }
  return {};
}

// Moves every real-edge guard by epsilon along its edge toward the endpoint
// deeper in the traversal tree (ties: toward the larger vertex id).
void shift_guards(std::vector<Guard>& guards, const Decomposition& d, const Traversal& t,
                  const VisibilityScene& scene) {
  const FlatIndex& idx = scene.index();
  std::map<int, int> vertex_depth;
  for (const ConvexPiece& p : d.pieces) {
    const auto it = t.depth.find(p.id);
    const int dep = it == t.depth.end() ? 0 : it->second;
    for (int v : p.vertex_ids) vertex_depth[v] = std::max(vertex_depth[v], dep);
  }
  for (Guard& g : guards) {
    if (g.host.kind != EdgeKind::kReal) continue;
    const int a = g.host.index, b = idx.next[g.host.index];
    const int da = vertex_depth[a], db = vertex_depth[b];
    const bool toward_b = db != da ? db > da : b > a;
    const Segment s = idx.edge(g.host.index);
    const Rational dt = to_rational(scene.epsilon() / std::max(seg_length(s), 1e-300));
    const Rational t = toward_b ? Rational(g.host.t + dt) : Rational(g.host.t - dt);
    if (t <= 0 || t >= 1) continue;
    g.host.t = t;
    g.position = lerp(s.a, s.b, t);
  }
}

// Local search over real-edge candidate positions that lowers the total
// coverage deficit on the self-check samples. The guard count is unchanged.
void repair(const PolygonWithHoles& poly, GuardSet& gs, const CoverageReport& rep, const VisibilityScene& scene,
            const PlacementOptions& opt, PlacementTrace& trace) {
  const FlatIndex& idx = scene.index();
  const std::size_t ns = rep.samples.size();
  const std::size_t words = (ns + 63) / 64;
  using Bits = std::vector<std::uint64_t>;
  auto visibility = [&](const Point& c) {
    Bits bits(words, 0);
    for (std::size_t s = 0; s < ns; ++s) {
      bool vis = false;
      if (rep.samples[s] == c) {
        vis = true;
      } else {
        try {
          vis = k_visible(rep.samples[s], c, gs.k, scene);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kDegenerate) throw;
        }
      }
      if (vis) bits[s / 64] |= std::uint64_t{1} << (s % 64);
    }
    return bits;
  };
  struct Candidate {
    GuardHost host;
    Point position;
    Bits vis;
  };
  std::vector<Candidate> cands;
  const int per_edge = opt.repair_candidates_per_edge;
  for (int e = 0; e < static_cast<int>(idx.size()); ++e) {
    const Segment s = idx.edge(e);
    for (int j = 1; j <= per_edge; ++j) {
      const Rational t(j, per_edge + 1);
      Point p = lerp(s.a, s.b, t);
      Bits vis = visibility(p);
      cands.push_back({GuardHost{EdgeKind::kReal, e, t}, std::move(p), std::move(vis)});
    }
  }
  std::vector<Bits> current;
  for (const Guard& g : gs.guards) current.push_back(visibility(g.position));
  std::vector<int> cov(ns, 0);
  for (const Bits& b : current) {
    for (std::size_t s = 0; s < ns; ++s) cov[s] += static_cast<int>((b[s / 64] >> (s % 64)) & 1);
  }
  const int m = gs.target_m;
  (void)poly;
  for (int round = 0; round < opt.repair_rounds; ++round) {
    Bits below(words, 0), at_most(words, 0);
    bool any_below = false;
    for (std::size_t s = 0; s < ns; ++s) {
      if (cov[s] < m) {
        below[s / 64] |= std::uint64_t{1} << (s % 64);
        any_below = true;
      }
      if (cov[s] <= m) at_most[s / 64] |= std::uint64_t{1} << (s % 64);
    }
    if (!any_below) return;
    long best_gain = 0;
    int best_guard = -1, best_cand = -1;
    for (std::size_t gi = 0; gi < gs.guards.size(); ++gi) {
      if (gs.guards[gi].role == GuardRole::kHoleEdge) continue;  // fixed by construction
      const Bits& vi = current[gi];
      for (std::size_t ci = 0; ci < cands.size(); ++ci) {
        const Candidate& c = cands[ci];
        const bool taken = std::any_of(gs.guards.begin(), gs.guards.end(),
                                       [&](const Guard& g) { return g.position == c.position; });
        if (taken) continue;
        long gain = 0;
        for (std::size_t w = 0; w < words; ++w) {
          gain += std::popcount(c.vis[w] & ~vi[w] & below[w]);
          gain -= std::popcount(vi[w] & ~c.vis[w] & at_most[w]);
        }
        if (gain > best_gain) {
          best_gain = gain;
          best_guard = static_cast<int>(gi);
          best_cand = static_cast<int>(ci);
        }
      }
    }
    if (best_guard < 0) return;
    Guard& g = gs.guards[static_cast<std::size_t>(best_guard)];
    const Candidate& c = cands[static_cast<std::size_t>(best_cand)];
    trace.repairs.push_back({best_guard, g.host, c.host});
    Bits& vi = current[static_cast<std::size_t>(best_guard)];
    for (std::size_t s = 0; s < ns; ++s) {
      cov[s] += static_cast<int>((c.vis[s / 64] >> (s % 64)) & 1) - static_cast<int>((vi[s / 64] >> (s % 64)) & 1);
    }
    vi = c.vis;
    g.host = c.host;
    g.position = c.position;
  }
}

void certify(const PolygonWithHoles& poly, PlacementResult& res, const PlacementOptions& opt) {
  if (!opt.self_check) {
    res.certified = false;
    res.trace.warnings.push_back("self-check disabled: placement not certified");
    return;
  }
  const VisibilityScene scene(poly, opt.visibility);
  CoverageReport rep = coverage(poly, res.guards, opt.check_plan, 0, opt.visibility);
  if (!rep.certified() && opt.repair) {
    repair(poly, res.guards, rep, scene, opt, res.trace);
    rep = coverage(poly, res.guards, opt.check_plan, 0, opt.visibility);
  }
  res.certified = rep.certified();
  res.min_coverage = rep.min_coverage;
  for (std::size_t i = 0; i < rep.violations.size() && i < 16; ++i) res.undercovered.push_back(rep.samples[rep.violations[i]]);
}

int normalize_k(int k, std::vector<std::string>& warnings) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be at least 2, got " + std::to_string(k));
  if (k % 2 != 0) {
    warnings.push_back("odd k=" + std::to_string(k) + " treated as k=" + std::to_string(k - 1));
    return k - 1;
  }
  return k;
}

}  // namespace

PlacementResult place_guards(const PolygonWithHoles& poly, int k_in, const PlacementOptions& opt) {
  PlacementResult res;
  const int k = normalize_k(k_in, res.trace.warnings);
  const VisibilityScene scene(poly, opt.visibility);
  const FlatIndex& idx = scene.index();
  Decomposition d = decompose(poly, opt.mode);
  if (d.mode != opt.mode) res.trace.warnings.push_back("minimal decomposition needs a hole-free polygon; used fast mode");
  if (opt.merge_small) {
    const Decomposition merged = merge_small_pieces(d, k);
    for (const Diagonal& diag : d.diagonals) {
      const bool kept = std::any_of(merged.diagonals.begin(), merged.diagonals.end(),
                                    [&](const Diagonal& o) { return o.id == diag.id; });
      if (!kept) res.trace.merged_diagonals.push_back(diag.id);
    }
    d = merged;
  }
  res.trace.decomposition = d;
  res.guards.k = k;
  res.guards.target_m = k + 2;
  std::vector<Guard>& guards = res.guards.guards;

  const Traversal t = traverse(d);
  res.trace.root = t.root;
  res.trace.order = t.order;

  if (d.pieces.size() == 1) {
    TraceStep step;
    step.piece = d.pieces.front().id;
    step.note = "single convex piece";
    for (Guard& g : guard_convex_piece(d.pieces.front(), k + 2, true, d, k)) {
      step.guards.push_back(static_cast<int>(guards.size()));
      guards.push_back(std::move(g));
    }
    res.trace.steps.push_back(std::move(step));
  } else {
    for (int pid : t.order) {
      const ConvexPiece& p = d.piece(pid);
      TraceStep step;
      step.piece = pid;
      const int parent = t.parent.at(pid);
      if (parent >= 0) step.merges.push_back(t.parent_diagonal.at(pid));
      std::vector<Point> occupied;
      for (const Guard& g : guards) occupied.push_back(g.position);
      std::vector<Guard> mine;
      if (p.real_edge_count() == 0) {
        step.note = "interior piece";
        for (const Guard& g : guard_convex_piece(p, k, false, d, k)) {
          try {
            Guard moved = relocate_guard(g, d, pid, scene, opt.interval_samples, occupied);
            occupied.push_back(moved.position);
            step.relocations.push_back(static_cast<int>(guards.size() + mine.size()));
            mine.push_back(std::move(moved));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kRelocationFailed) throw;
            res.trace.warnings.push_back(e.what());
            // Closest free real-edge midpoint; the self-check decides.
            const Point at = g.position;
            std::optional<Guard> best;
            double best_d = 1e300;
            for (int e2 = 0; e2 < static_cast<int>(idx.size()); ++e2) {
              const Segment s = idx.edge(e2);
              for (const Rational& tt : parameter_sequence(4)) {
                Guard cand = make_guard(s, EdgeKind::kReal, e2, tt, k, GuardRole::kRelocated);
                if (occupied_by(occupied, cand.position)) continue;
                const double dist = std::hypot(cand.position.fx() - at.fx(), cand.position.fy() - at.fy());
                if (dist < best_d) {
                  best_d = dist;
                  best = cand;
                }
              }
            }
            occupied.push_back(best->position);
            step.relocations.push_back(static_cast<int>(guards.size() + mine.size()));
            mine.push_back(*best);
          }
        }
      } else {
        const auto kids = t.children.find(pid);
        if (kids != t.children.end() && !kids->second.empty()) {
          const auto [next, diag] = kids->second.front();
          mine = sweep_guards(d, p, d.piece(next), diag, k, scene, step);
          if (!mine.empty()) step.note = "sweep interval";
        }
        if (mine.empty() && parent >= 0) {
          // One guard inside the strong k-visibility interval of the parent.
          std::vector<EdgeInterval> ivs;
          for (int e : p.real_edges()) {
            for (const EdgeInterval& iv : strong_intervals(e, d.piece(parent).ring, k, scene, opt.interval_samples)) {
              ivs.push_back(iv);
            }
          }
          if (auto g = place_in_intervals(ivs, idx, k, GuardRole::kBase, occupied)) {
            mine.push_back(*g);
            step.note = "strong interval + midpoints";
          }
        }
        if (static_cast<int>(mine.size()) < k) {
          for (Guard& g : guard_convex_piece(p, k + 1, true, d, k)) {
            if (static_cast<int>(mine.size()) >= k) break;
            const bool dup = std::any_of(mine.begin(), mine.end(), [&](const Guard& o) { return o.position == g.position; });
            if (!dup) mine.push_back(std::move(g));
          }
          if (step.note.empty()) step.note = "midpoints";
        }
      }
      for (Guard& g : mine) {
        step.guards.push_back(static_cast<int>(guards.size()));
        guards.push_back(std::move(g));
      }
      res.trace.steps.push_back(std::move(step));
    }
  }
  shift_guards(guards, d, t, scene);
  certify(poly, res, opt);
  return res;
}

PlacementResult guard_with_holes(const PolygonWithHoles& poly, int k_in, const PlacementOptions& opt) {
  if (poly.holes.empty()) throw Error(ErrorCode::kInvalidArgument, "guard_with_holes needs at least one hole");
  PlacementOptions base_opt = opt;
  base_opt.self_check = false;
  PlacementResult res = place_guards(PolygonWithHoles{poly.outer, {}}, k_in, base_opt);
  res.trace.warnings.erase(std::remove_if(res.trace.warnings.begin(), res.trace.warnings.end(),
                                          [](const std::string& w) { return w.rfind("self-check", 0) == 0; }),
                           res.trace.warnings.end());
  const FlatIndex idx = FlatIndex::build(poly);
  TraceStep step;
  step.note = "hole edges";
  for (int e = static_cast<int>(poly.outer.size()); e < static_cast<int>(idx.size()); ++e) {
    step.guards.push_back(static_cast<int>(res.guards.guards.size()));
    res.guards.guards.push_back(make_guard(idx.edge(e), EdgeKind::kReal, e, Rational(1, 2), res.guards.k, GuardRole::kHoleEdge));
  }
  res.trace.steps.push_back(std::move(step));
  res.guards.target_m = 2;
  certify(poly, res, opt);
  return res;
}

}  // namespace kvis
