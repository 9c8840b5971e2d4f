#ifndef FBR_GRAPH_HPP
#define FBR_GRAPH_HPP

// Directed edge labelings of finite graphs, the edge graph on labels, its
// distance powers and greedy proper colorings.

#include "fbr/metric.hpp"
#include "fbr/scalar.hpp"
#include "fbr/validation.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fbr {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

struct EdgeSpec {
  std::string tail;
  std::string head;
  std::string label;

  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

struct Edge {
  std::size_t tail;
  std::size_t head;
};

/// A graph whose edges each carry a distinct label and one orientation.
/// Labels form a PointSet whose index i + 1 names edge i.
class LabeledGraph {
 public:
  LabeledGraph() : labels_(PointSet::make({})) {}

  /// Validates and builds. Throws ValidationError listing every offending
  /// vertex, edge, or label.
  static LabeledGraph make(std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
                           std::optional<RawMetric<Rational>> label_metric = std::nullopt) {
    LabeledGraph g;
    ValidationReport report;
    for (auto& v : vertices) {
      if (v.empty()) {
        report.add("empty_vertex", {});
        continue;
      }
      if (!g.vertex_index_.emplace(v, g.vertices_.size()).second) {
        report.add("duplicate_vertex", {v});
        continue;
      }
      g.vertices_.push_back(std::move(v));
    }

    std::set<std::string> seen_labels;
    std::set<std::pair<std::size_t, std::size_t>> seen_pairs;
    std::vector<std::string> label_ids;
    for (auto& e : edges) {
      auto t = g.vertex_index_.find(e.tail);
      auto h = g.vertex_index_.find(e.head);
      bool bad = false;
      if (e.label.empty() || e.label == kBasepoint) {
        report.add("invalid_label", {e.label});
        bad = true;
      } else if (!seen_labels.insert(e.label).second) {
        report.add("duplicate_label", {e.label});
        bad = true;
      }
      if (t == g.vertex_index_.end()) report.add("unknown_vertex", {e.tail, e.label});
      if (h == g.vertex_index_.end()) report.add("unknown_vertex", {e.head, e.label});
      if (bad || t == g.vertex_index_.end() || h == g.vertex_index_.end()) continue;
      if (t->second == h->second) {
        report.add("self_loop", {e.tail, e.label});
        continue;
      }
      auto key = std::minmax(t->second, h->second);
      if (!seen_pairs.insert(key).second) {
        report.add("parallel_edge", {e.tail, e.head, e.label});
        continue;
      }
      g.edges_.push_back({t->second, h->second});
      g.specs_.push_back(e);
      label_ids.push_back(e.label);
    }

    if (label_metric) {
      auto sub = restrict_metric(*label_metric, label_ids, report);
      if (sub) g.base_metric_ = std::move(sub);
    }
    if (!report.ok()) throw ValidationError(report);
    g.labels_ = PointSet::make(std::move(label_ids));
    g.index_incidence();
    return g;
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::string& vertex(std::size_t i) const { return vertices_.at(i); }
  std::size_t vertex_index(std::string_view id) const {
    auto it = vertex_index_.find(std::string(id));
    if (it == vertex_index_.end()) throw StructuralError("unknown vertex '" + std::string(id) + "'");
    return it->second;
  }
  bool has_vertex(std::string_view id) const { return vertex_index_.count(std::string(id)) > 0; }

  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<EdgeSpec>& edge_specs() const { return specs_; }
  /// Label identifier of edge e.
  const std::string& label(std::size_t e) const { return labels_->id(e + 1); }
  /// Label points: basepoint at 0, edge e at e + 1.
  const PointSetPtr& labels() const { return labels_; }
  /// (neighbor, edge) pairs of vertex v, in edge order.
  const std::vector<std::pair<std::size_t, std::size_t>>& incident(std::size_t v) const {
    return incidence_.at(v);
  }
  /// Base label metric d' restricted to the edge labels in edge order.
  const std::optional<RawMetric<Rational>>& base_metric() const { return base_metric_; }

  /// Orientation lookup: the edge joining u and w and +1 if it points u -> w,
  /// -1 if w -> u.
  std::optional<std::pair<std::size_t, int>> oriented_edge(std::size_t u, std::size_t w) const {
    for (const auto& [nb, e] : incident(u))
      if (nb == w) return std::make_pair(e, edges_[e].tail == u ? 1 : -1);
    return std::nullopt;
  }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    auto metric_eq = [](const std::optional<RawMetric<Rational>>& x, const std::optional<RawMetric<Rational>>& y) {
      if (x.has_value() != y.has_value()) return false;
      return !x || (x->ids == y->ids && x->dist == y->dist);
    };
    return a.vertices_ == b.vertices_ && a.specs_ == b.specs_ && metric_eq(a.base_metric_, b.base_metric_);
  }

 private:
  static std::optional<RawMetric<Rational>> restrict_metric(const RawMetric<Rational>& m,
                                                            const std::vector<std::string>& wanted,
                                                            ValidationReport& report) {
    std::unordered_map<std::string, std::size_t> at;
    for (std::size_t i = 0; i < m.ids.size(); ++i)
      if (!at.emplace(m.ids[i], i).second) report.add("duplicate_metric_label", {m.ids[i]});
    if (m.dist.size() != m.ids.size()) {
      report.add("metric_shape", {}, 0, "matrix rows do not match label count");
      return std::nullopt;
    }
    for (const auto& row : m.dist)
      if (row.size() != m.ids.size()) {
        report.add("metric_shape", {}, 0, "matrix is not square");
        return std::nullopt;
      }
    report.merge(validate_metric(m));
    RawMetric<Rational> out;
    out.ids = wanted;
    out.dist.assign(wanted.size(), std::vector<Rational>(wanted.size()));
    bool complete = true;
    for (const auto& id : wanted)
      if (!at.count(id)) {
        report.add("metric_missing_label", {id});
        complete = false;
      }
    if (!complete) return std::nullopt;
    for (std::size_t i = 0; i < wanted.size(); ++i)
      for (std::size_t j = 0; j < wanted.size(); ++j) out.dist[i][j] = m.dist[at[wanted[i]]][at[wanted[j]]];
    return out;
  }

  void index_incidence() {
    incidence_.assign(vertices_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incidence_[edges_[e].tail].emplace_back(edges_[e].head, e);
      incidence_[edges_[e].head].emplace_back(edges_[e].tail, e);
    }
  }

  std::vector<std::string> vertices_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::vector<Edge> edges_;
  std::vector<EdgeSpec> specs_;
  PointSetPtr labels_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence_;
  std::optional<RawMetric<Rational>> base_metric_;
};

/// Undirected adjacency over edge indices 0..m-1, neighbor lists ascending.
using LabelAdjacency = std::vector<std::vector<std::size_t>>;

/// Two labels are adjacent iff their edges share an endpoint.
inline LabelAdjacency build_edge_graph(const LabeledGraph& g) {
  LabelAdjacency adj(g.edge_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incident(v);
    for (std::size_t a = 0; a < inc.size(); ++a)
      for (std::size_t b = a + 1; b < inc.size(); ++b) {
        adj[inc[a].second].push_back(inc[b].second);
        adj[inc[b].second].push_back(inc[a].second);
      }
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return adj;
}

/// BFS distances from src; kUnreachable where there is no path.
inline std::vector<std::size_t> bfs_distances(const LabelAdjacency& adj, std::size_t src,
                                              std::size_t radius = kUnreachable) {
  std::vector<std::size_t> dist(adj.size(), kUnreachable);
  std::vector<std::size_t> queue{src};
  dist[src] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t u = queue[qi];
    if (dist[u] >= radius) continue;
    for (std::size_t w : adj[u])
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

inline std::vector<std::vector<std::size_t>> all_pairs_distances(const LabelAdjacency& adj) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(adj.size());
  for (std::size_t s = 0; s < adj.size(); ++s) out.push_back(bfs_distances(adj, s));
  return out;
}

/// Largest finite distance over all components; 0 for empty or edgeless input.
inline std::size_t max_component_diameter(const std::vector<std::vector<std::size_t>>& dist) {
  std::size_t diam = 0;
  for (const auto& row : dist)
    for (std::size_t d : row)
      if (d != kUnreachable) diam = std::max(diam, d);
  return diam;
}

/// 2^n, saturating.
inline std::size_t power_radius(unsigned n) {
  return n >= std::numeric_limits<std::size_t>::digits - 1 ? kUnreachable - 1 : std::size_t{1} << n;
}

/// Joins labels at edge-graph distance at most 2^n.
inline LabelAdjacency power_graph(const LabelAdjacency& adj, unsigned n) {
  const std::size_t radius = power_radius(n);
  LabelAdjacency out(adj.size());
  for (std::size_t s = 0; s < adj.size(); ++s) {
    auto dist = bfs_distances(adj, s, radius);
    for (std::size_t t = 0; t < adj.size(); ++t)
      if (t != s && dist[t] != kUnreachable && dist[t] <= radius) out[s].push_back(t);
  }
  return out;
}

using Coloring = std::vector<std::size_t>;

/// Visits labels in order and gives each the least color missing among its
/// already-colored neighbors.
inline Coloring greedy_proper_coloring(const LabelAdjacency& adj, const std::vector<std::size_t>& order) {
  constexpr std::size_t uncolored = kUnreachable;
  Coloring color(adj.size(), uncolored);
  std::vector<char> taken;
  for (std::size_t u : order) {
    taken.assign(adj[u].size() + 1, 0);
    for (std::size_t w : adj[u])
      if (color[w] != uncolored && color[w] < taken.size()) taken[color[w]] = 1;
    std::size_t c = 0;
    while (taken[c]) ++c;
    color[u] = c;
  }
  for (std::size_t u = 0; u < adj.size(); ++u)
    if (color[u] == uncolored) throw StructuralError("coloring order does not cover every label");
  return color;
}

/// First adjacent pair sharing a color, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> find_coloring_conflict(const LabelAdjacency& adj,
                                                                                 const Coloring& color) {
  for (std::size_t u = 0; u < adj.size(); ++u)
    for (std::size_t w : adj[u])
      if (color[u] == color[w]) return std::make_pair(u, w);
  return std::nullopt;
}

/// Edge indices sorted by label identifier.
inline std::vector<std::size_t> labels_by_identifier(const LabeledGraph& g) {
  std::vector<std::size_t> order(g.edge_count());
  for (std::size_t e = 0; e < order.size(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.label(a) < g.label(b); });
  return order;
}

}  // namespace fbr

#endif  // FBR_GRAPH_HPP
