#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "gm/spaces.hpp"

namespace gm {
namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

MetricTree::MetricTree(std::size_t vertex_count, std::vector<TreeEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ == 0) throw Error(ErrorKind::invalid_tree, "tree needs at least one vertex");
  if (edges_.size() + 1 != vertex_count_) {
    throw Error(ErrorKind::invalid_tree, "a tree on " + std::to_string(vertex_count_) + " vertices has " +
                                             std::to_string(vertex_count_ - 1) + " edges, got " +
                                             std::to_string(edges_.size()));
  }
  if (edges_.empty()) throw Error(ErrorKind::invalid_tree, "a single vertex has no points to encode");
  incident_.assign(vertex_count_, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const TreeEdge& edge = edges_[e];
    if (edge.u >= vertex_count_ || edge.v >= vertex_count_ || edge.u == edge.v) {
      throw Error(ErrorKind::invalid_tree, "edge " + std::to_string(e) + " has bad endpoints");
    }
    if (!(edge.length > 0.0) || !std::isfinite(edge.length)) {
      throw Error(ErrorKind::invalid_tree, "edge " + std::to_string(e) + " needs a positive finite length");
    }
    incident_[edge.u].push_back(e);
    incident_[edge.v].push_back(e);
  }

  // Single-source traversal from every vertex fills the distance and
  // next-hop tables; a vertex left unreached means the graph is disconnected.
  const std::size_t n = vertex_count_;
  dist_.assign(n * n, std::numeric_limits<double>::infinity());
  next_hop_.assign(n * n, kNone);
  for (std::size_t src = 0; src < n; ++src) {
    std::vector<std::size_t> parent(n, kNone);
    std::queue<std::size_t> queue;
    dist_[src * n + src] = 0.0;
    queue.push(src);
    std::vector<bool> seen(n, false);
    seen[src] = true;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop();
      for (std::size_t e : incident_[cur]) {
        const std::size_t nb = edges_[e].u == cur ? edges_[e].v : edges_[e].u;
        if (seen[nb]) continue;
        seen[nb] = true;
        parent[nb] = cur;
        dist_[src * n + nb] = dist_[src * n + cur] + edges_[e].length;
        queue.push(nb);
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!seen[v]) throw Error(ErrorKind::invalid_tree, "graph is not connected");
      if (v == src) continue;
      // Walk back from v to find the first hop out of src; next_hop(v, src)
      // is simply parent[v].
      next_hop_[v * n + src] = parent[v];
    }
  }
}

std::size_t MetricTree::edge_between(std::size_t a, std::size_t b) const {
  for (std::size_t e : incident_[a]) {
    if (edges_[e].u == b || edges_[e].v == b) return e;
  }
  throw Error(ErrorKind::invalid_tree, "vertices are not adjacent");
}

Point MetricTree::vertex_point(std::size_t v) const {
  if (v >= vertex_count_) throw Error(ErrorKind::invalid_point, "vertex id out of range");
  const std::size_t e = *std::min_element(incident_[v].begin(), incident_[v].end());
  return point(e, edges_[e].u == v ? 0.0 : edges_[e].length);
}

Point MetricTree::canonical(const Point& p) const {
  const auto e = static_cast<std::size_t>(p[0]);
  const double len = edges_[e].length;
  const double s = std::clamp(p[1], 0.0, len);
  if (s == 0.0) return vertex_point(edges_[e].u);
  if (s == len) return vertex_point(edges_[e].v);
  return point(e, s);
}

std::vector<std::size_t> MetricTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (incident_[v].size() == 1) out.push_back(v);
  }
  return out;
}

std::string MetricTree::describe() const {
  std::ostringstream os;
  os << "tree(" << vertex_count_ << " vertices)";
  return os.str();
}

bool MetricTree::is_valid(const Point& p) const {
  if (p.size() != 2 || !std::isfinite(p[0]) || !std::isfinite(p[1])) return false;
  if (p[0] < 0.0 || p[0] != std::floor(p[0]) || p[0] >= static_cast<double>(edges_.size())) return false;
  const double len = edges_[static_cast<std::size_t>(p[0])].length;
  return p[1] >= 0.0 && p[1] <= len;
}

ErrorKind MetricTree::invalid_kind(const Point& p) const {
  if (p.size() != 2) return ErrorKind::invalid_point;
  if (!std::isfinite(p[0]) || p[0] < 0.0 || p[0] != std::floor(p[0]) ||
      p[0] >= static_cast<double>(edges_.size())) {
    return ErrorKind::invalid_edge_id;
  }
  return ErrorKind::offset_out_of_range;
}

std::string MetricTree::invalid_reason(const Point& p) const {
  if (p.size() != 2) return "tree points are {edge id, offset}";
  return "edge id must index an edge and offset must lie in [0, edge length]";
}

MetricTree::Route MetricTree::route(const Point& p, const Point& q) const {
  const auto ep = static_cast<std::size_t>(p[0]);
  const auto eq = static_cast<std::size_t>(q[0]);
  const TreeEdge& a = edges_[ep];
  const TreeEdge& b = edges_[eq];
  const std::pair<std::size_t, double> exits[2] = {{a.u, p[1]}, {a.v, a.length - p[1]}};
  const std::pair<std::size_t, double> entries[2] = {{b.u, q[1]}, {b.v, b.length - q[1]}};
  Route best{a.u, b.u, std::numeric_limits<double>::infinity()};
  for (const auto& [xv, xd] : exits) {
    for (const auto& [yv, yd] : entries) {
      const double len = xd + vertex_distance(xv, yv) + yd;
      if (len < best.length) best = {xv, yv, len};
    }
  }
  return best;
}

double MetricTree::do_distance(const Point& p, const Point& q) const {
  if (p[0] == q[0]) return std::abs(p[1] - q[1]);
  return route(p, q).length;
}

Point MetricTree::on_edge_from(std::size_t edge, std::size_t from_vertex, double arc) const {
  const TreeEdge& e = edges_[edge];
  const double s = e.u == from_vertex ? arc : e.length - arc;
  return canonical(point(edge, std::clamp(s, 0.0, e.length)));
}

Point MetricTree::do_geodesic(const Point& p, const Point& q, double t) const {
  if (p[0] == q[0]) return canonical(point(static_cast<std::size_t>(p[0]), (1.0 - t) * p[1] + t * q[1]));

  const Route r = route(p, q);
  double remaining = t * r.length;
  const auto ep = static_cast<std::size_t>(p[0]);
  const auto eq = static_cast<std::size_t>(q[0]);

  // Leg 1: from p along its own edge to the exit vertex.
  const double exit_len = edges_[ep].u == r.from_vertex ? p[1] : edges_[ep].length - p[1];
  if (remaining <= exit_len) {
    const double s = edges_[ep].u == r.from_vertex ? p[1] - remaining : p[1] + remaining;
    return canonical(point(ep, std::clamp(s, 0.0, edges_[ep].length)));
  }
  remaining -= exit_len;

  // Leg 2: vertex path between the exit and entry vertices.
  std::size_t cur = r.from_vertex;
  while (cur != r.to_vertex) {
    const std::size_t nxt = next_hop_[cur * vertex_count_ + r.to_vertex];
    const std::size_t e = edge_between(cur, nxt);
    if (remaining <= edges_[e].length) return on_edge_from(e, cur, remaining);
    remaining -= edges_[e].length;
    cur = nxt;
  }

  // Leg 3: from the entry vertex along q's edge.
  return on_edge_from(eq, r.to_vertex, remaining);
}

std::vector<LineBlock<Point>> MetricTree::search_blocks(const Point&) const {
  // Every edge is a geodesic segment and the edges cover the tree, so a
  // convex objective is minimized exactly by the best per-edge minimum.
  LineBlock<Point> block{{}, true};
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    block.lines.push_back({[this, e](double s) { return canonical(point(e, s)); }, 0.0, edges_[e].length});
  }
  return {std::move(block)};
}

Point MetricTree::from_unit(std::span<const double> u, double) const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.length;
  double target = u[0] * total;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (target < edges_[e].length || e + 1 == edges_.size()) {
      return canonical(point(e, u[1] * edges_[e].length));
    }
    target -= edges_[e].length;
  }
  return vertex_point(0);
}

std::optional<Point> MetricTree::point_at_distance(const Point& from, double r, std::span<const double> u) const {
  const std::vector<std::size_t> ends = leaves();
  const std::size_t pick = std::min(ends.size() - 1, static_cast<std::size_t>(u[0] * static_cast<double>(ends.size())));
  const Point target = vertex_point(ends[pick]);
  const double d = distance(from, target);
  if (d < r || d == 0.0) return std::nullopt;
  return geodesic(from, target, r / d);
}

}  // namespace gm
