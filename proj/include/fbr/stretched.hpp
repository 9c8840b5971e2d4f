#ifndef FBR_STRETCHED_HPP
#define FBR_STRETCHED_HPP

// Stretched labelings: a label metric d with d(l1, l2) >= eps / k whenever
// l1 and l2 are k apart in the edge graph.
//
// Construction: color the n-th distance power of the edge graph (labels at
// most 2^n apart are adjacent) for n = 0..N, and set
//
//   d(l1, l2) = min(1, (d'(l1, l2) + sum{2^-n : c_n(l1) != c_n(l2)}) / 2).
//
// For l1, l2 at distance k, the least n with 2^n >= k has 2^n < 2k and the
// colors differ there, so k * d(l1, l2) > 1/4. N = ceil(log2(diameter)) is
// enough for every pair.

#include "fbr/graph.hpp"
#include "fbr/metric.hpp"

#include <cstddef>
#include <type_traits>
#include <vector>

namespace fbr {

template <class S>
struct StretchedLabeling {
  LabeledGraph graph;
  /// colorings[n][e] is the color of edge e's label in power graph n.
  std::vector<Coloring> colorings;
  /// Labels with the basepoint adjoined; shares graph.labels().
  PointedMetricSpace<S> label_space;
  S epsilon{1};

  std::size_t depth() const { return colorings.empty() ? 0 : colorings.size() - 1; }
  const S& label_distance(std::size_t e1, std::size_t e2) const { return label_space.dist(e1 + 1, e2 + 1); }
};

/// ceil(log2(diameter)), 0 for diameter <= 1.
inline unsigned coloring_depth(std::size_t diameter) {
  unsigned n = 0;
  while (power_radius(n) < diameter) ++n;
  return n;
}

namespace detail {

template <class S>
std::vector<std::vector<S>> base_label_metric(const LabeledGraph& g) {
  using T = scalar_traits<S>;
  const std::size_t m = g.edge_count();
  std::vector<std::vector<S>> d(m, std::vector<S>(m, S(1)));
  for (std::size_t i = 0; i < m; ++i) d[i][i] = S(0);
  if (!g.base_metric()) return d;

  RawMetric<Rational> raw = *g.base_metric();
  bool above_one = false;
  for (const auto& row : raw.dist)
    for (const auto& t : row) above_one = above_one || t > 1;
  if (above_one) raw = normalize_metric(raw);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if constexpr (std::is_same_v<S, Rational>)
        d[i][j] = raw.dist[i][j];
      else
        d[i][j] = T::from_double(scalar_traits<Rational>::to_double(raw.dist[i][j]));
    }
  return d;
}

}  // namespace detail

/// Largest eps with d(l1, l2) >= eps / k over label pairs at finite
/// edge-graph distance k >= 1, i.e. the minimum of k * d(l1, l2). Returns 1
/// when no pair is constrained.
template <class S>
S verify_stretched(const LabeledGraph& g, const PointedMetricSpace<S>& label_space) {
  if (!same_points(g.labels(), label_space.points()))
    throw StructuralError("label space does not match graph labels");
  const auto adj = build_edge_graph(g);
  bool any = false;
  S best(1);
  for (std::size_t a = 0; a < adj.size(); ++a) {
    const auto dist = bfs_distances(adj, a);
    for (std::size_t b = a + 1; b < adj.size(); ++b) {
      if (dist[b] == kUnreachable) continue;
      S bound = S(static_cast<long long>(dist[b])) * label_space.dist(a + 1, b + 1);
      if (!any || bound < best) best = bound;
      any = true;
    }
  }
  return any ? best : S(1);
}

template <class S>
S verify_stretched(const StretchedLabeling<S>& sl) {
  return verify_stretched(sl.graph, sl.label_space);
}

template <class S>
StretchedLabeling<S> stretch_labeling(const LabeledGraph& g) {
  StretchedLabeling<S> sl;
  sl.graph = g;
  const auto adj = build_edge_graph(g);
  const auto dist = all_pairs_distances(adj);
  const unsigned depth = coloring_depth(max_component_diameter(dist));
  const auto order = labels_by_identifier(g);

  for (unsigned n = 0; n <= depth; ++n) {
    // Power graph n straight from the distance table.
    const std::size_t radius = power_radius(n);
    LabelAdjacency power(adj.size());
    for (std::size_t a = 0; a < adj.size(); ++a)
      for (std::size_t b = 0; b < adj.size(); ++b)
        if (a != b && dist[a][b] != kUnreachable && dist[a][b] <= radius) power[a].push_back(b);
    sl.colorings.push_back(greedy_proper_coloring(power, order));
  }

  const std::size_t m = g.edge_count();
  const auto base = detail::base_label_metric<S>(g);
  DistMatrix<S> d(m + 1, std::vector<S>(m + 1, S(0)));
  for (std::size_t i = 1; i <= m; ++i) d[i][0] = d[0][i] = S(1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      S sequence(0);
      S weight(1);
      for (unsigned n = 0; n <= depth; ++n) {
        if (sl.colorings[n][a] != sl.colorings[n][b]) sequence += weight;
        weight /= S(2);
      }
      S combined = (base[a][b] + sequence) / S(2);
      if (S(1) < combined) combined = S(1);
      d[a + 1][b + 1] = d[b + 1][a + 1] = combined;
    }
  sl.label_space = PointedMetricSpace<S>(g.labels(), std::move(d));
  sl.epsilon = verify_stretched(sl);
  return sl;
}

}  // namespace fbr

#endif  // FBR_STRETCHED_HPP
