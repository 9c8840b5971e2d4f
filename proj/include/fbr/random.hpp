#ifndef FBR_RANDOM_HPP
#define FBR_RANDOM_HPP

// Seeded instance generators. Output depends only on the arguments: the
// engine is mt19937_64 (fully specified by the standard) and bounded draws
// use rejection sampling rather than the implementation-defined std
// distributions, so instances match across platforms.

#include "fbr/free_vector.hpp"
#include "fbr/graph.hpp"
#include "fbr/metric.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

namespace fbr {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  long long between(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return below(2) == 1; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::string vertex_name(std::size_t i) { return "v" + std::to_string(i); }
inline std::string label_name(std::size_t i) { return "e" + std::to_string(i); }

/// Random forest on n vertices. Each new vertex starts a fresh tree with
/// probability 1/8, or attaches to a uniformly chosen earlier vertex whose
/// degree is below max_degree (a fresh tree when none is left). Edge
/// orientations are fair coin flips.
inline LabeledGraph random_forest(std::size_t n, std::size_t max_degree, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back(vertex_name(i));
  std::vector<EdgeSpec> edges;
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    if (rng.below(8) == 0) continue;
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < i; ++j)
      if (degree[j] < max_degree) open.push_back(j);
    if (open.empty() || max_degree == 0) continue;
    const std::size_t j = open[rng.below(open.size())];
    ++degree[i];
    ++degree[j];
    const bool forward = rng.coin();
    edges.push_back({vertices[forward ? j : i], vertices[forward ? i : j], label_name(edges.size())});
  }
  return LabeledGraph::make(std::move(vertices), std::move(edges));
}

/// Random connected graph: a uniformly attached spanning tree plus up to
/// extra_edges further edges between non-adjacent pairs.
inline LabeledGraph random_connected_graph(std::size_t n, std::size_t extra_edges, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back(vertex_name(i));
  std::vector<EdgeSpec> edges;
  std::vector<std::vector<char>> joined(n, std::vector<char>(n, 0));
  auto join = [&](std::size_t a, std::size_t b) {
    joined[a][b] = joined[b][a] = 1;
    const bool forward = rng.coin();
    edges.push_back({vertices[forward ? a : b], vertices[forward ? b : a], label_name(edges.size())});
  };
  for (std::size_t i = 1; i < n; ++i) join(rng.below(i), i);
  const std::size_t max_pairs = n < 2 ? 0 : n * (n - 1) / 2;
  std::size_t added = 0;
  for (std::size_t tries = 0; tries < 50 * extra_edges && added < extra_edges && edges.size() < max_pairs; ++tries) {
    const std::size_t a = rng.below(n), b = rng.below(n);
    if (a == b || joined[a][b]) continue;
    join(a, b);
    ++added;
  }
  return LabeledGraph::make(std::move(vertices), std::move(edges));
}

/// Path v0 - v1 - ... - v_m with alternating orientations when alternate is set.
inline LabeledGraph path_graph(std::size_t edge_count, bool alternate = false) {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i <= edge_count; ++i) vertices.push_back(vertex_name(i));
  for (std::size_t i = 0; i < edge_count; ++i) {
    const bool flip = alternate && i % 2 == 1;
    edges.push_back({vertices[flip ? i + 1 : i], vertices[flip ? i : i + 1], label_name(i)});
  }
  return LabeledGraph::make(std::move(vertices), std::move(edges));
}

/// Star with center v0 and the given number of leaves, edges pointing out.
inline LabeledGraph star_graph(std::size_t leaves) {
  std::vector<std::string> vertices{vertex_name(0)};
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 1; i <= leaves; ++i) {
    vertices.push_back(vertex_name(i));
    edges.push_back({vertices[0], vertices[i], label_name(i - 1)});
  }
  return LabeledGraph::make(std::move(vertices), std::move(edges));
}

/// Complete binary tree in heap order on n vertices, edges pointing to children.
inline LabeledGraph binary_tree(std::size_t n) {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back(vertex_name(i));
  for (std::size_t i = 1; i < n; ++i) edges.push_back({vertices[(i - 1) / 2], vertices[i], label_name(i - 1)});
  return LabeledGraph::make(std::move(vertices), std::move(edges));
}

/// Random metric on k points named p0..p{k-1}: edge weights j/denominator
/// with j in [1, denominator], closed under shortest paths. All distances lie
/// in (0, 1].
template <class S>
RawMetric<S> random_raw_metric(std::size_t k, std::uint64_t seed, long long denominator = 20) {
  Rng rng(seed);
  RawMetric<S> m;
  for (std::size_t i = 0; i < k; ++i) m.ids.push_back("p" + std::to_string(i));
  m.dist.assign(k, std::vector<S>(k, S(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const long long w = rng.between(1, denominator);
      if constexpr (std::is_same_v<S, Rational>)
        m.dist[i][j] = m.dist[j][i] = Rational(w, denominator);
      else
        m.dist[i][j] = m.dist[j][i] = static_cast<double>(w) / static_cast<double>(denominator);
    }
  for (std::size_t via = 0; via < k; ++via)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (S detour = m.dist[i][via] + m.dist[via][j]; detour < m.dist[i][j]) m.dist[i][j] = detour;
  return m;
}

/// Random vector over points 1..size-1 of the set: support of 1..max_support
/// distinct points, coefficients integers in [-max_coeff, max_coeff] \ {0},
/// optionally divided by a denominator in [1, max_denominator].
template <class S>
FreeVector<S> random_vector(Rng& rng, const PointSetPtr& points, std::size_t max_support, long long max_coeff = 3,
                            long long max_denominator = 1, std::size_t min_support = 1) {
  FreeVector<S> v(points);
  const std::size_t available = points->size() - 1;
  if (available == 0) return v;
  std::vector<std::size_t> pool(available);
  for (std::size_t i = 0; i < available; ++i) pool[i] = i + 1;
  rng.shuffle(pool);
  const std::size_t lo = std::min(min_support, available);
  const std::size_t hi = std::max(lo, std::min(max_support, available));
  const std::size_t count = static_cast<std::size_t>(rng.between(static_cast<long long>(lo), static_cast<long long>(hi)));
  for (std::size_t i = 0; i < count; ++i) {
    long long num = rng.between(1, max_coeff);
    if (rng.coin()) num = -num;
    const long long den = max_denominator > 1 ? rng.between(1, max_denominator) : 1;
    if constexpr (std::is_same_v<S, Rational>)
      v.set(pool[i], Rational(num, den));
    else
      v.set(pool[i], static_cast<double>(num) / static_cast<double>(den));
  }
  return v;
}

}  // namespace fbr

#endif  // FBR_RANDOM_HPP
