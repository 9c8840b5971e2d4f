#ifndef FBR_PATH_LABELS_HPP
#define FBR_PATH_LABELS_HPP

// Forests and their path labels. A path label is the signed sum of the labels
// along a path: +1 for an edge walked tail -> head, -1 for head -> tail. In a
// forest there is exactly one from x to y for x, y in the same component,
// and p(x, z) = p(x, y) + p(y, z).

#include "fbr/free_norm.hpp"
#include "fbr/free_vector.hpp"
#include "fbr/graph.hpp"
#include "fbr/stretched.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fbr {

/// Union-find with union by size and path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// False when a and b were already connected.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Thrown by assert_forest; cycle() lists the cycle's vertices in order.
class CycleError : public std::invalid_argument {
 public:
  explicit CycleError(std::vector<std::string> cycle)
      : std::invalid_argument("graph has a cycle: " + join(cycle)), cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  static std::string join(const std::vector<std::string>& c) {
    std::string out;
    for (const auto& v : c) out += (out.empty() ? "" : " ") + v;
    return out;
  }
  std::vector<std::string> cycle_;
};

/// An acyclic LabeledGraph with its connected components.
class Forest {
 public:
  const LabeledGraph& graph() const { return graph_; }
  std::size_t component(std::size_t v) const { return component_.at(v); }
  std::size_t component_count() const { return component_count_; }
  bool connected(std::size_t x, std::size_t y) const { return component_.at(x) == component_.at(y); }
  /// Vertices of x's component, ascending.
  std::vector<std::size_t> component_vertices(std::size_t x) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < component_.size(); ++v)
      if (component_[v] == component_[x]) out.push_back(v);
    return out;
  }

 private:
  friend Forest assert_forest(const LabeledGraph& g);

  LabeledGraph graph_;
  std::vector<std::size_t> component_;
  std::size_t component_count_ = 0;
};

/// Certifies g acyclic, or throws CycleError with a witness cycle.
inline Forest assert_forest(const LabeledGraph& g) {
  const std::size_t n = g.vertex_count();
  DisjointSets sets(n);
  std::vector<std::vector<std::size_t>> accepted(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, w] = g.edge(e);
    if (sets.unite(u, w)) {
      accepted[u].push_back(w);
      accepted[w].push_back(u);
      continue;
    }
    // u and w are already joined by accepted edges; that path closes a cycle.
    std::vector<std::size_t> parent(n, kUnreachable);
    std::vector<std::size_t> queue{u};
    parent[u] = u;
    for (std::size_t qi = 0; qi < queue.size() && parent[w] == kUnreachable; ++qi)
      for (std::size_t x : accepted[queue[qi]])
        if (parent[x] == kUnreachable) {
          parent[x] = queue[qi];
          queue.push_back(x);
        }
    std::vector<std::string> cycle;
    for (std::size_t x = w; x != u; x = parent[x]) cycle.push_back(g.vertex(x));
    cycle.push_back(g.vertex(u));
    throw CycleError(std::move(cycle));
  }

  Forest f;
  f.graph_ = g;
  f.component_.assign(n, 0);
  std::unordered_map<std::size_t, std::size_t> ids;
  for (std::size_t v = 0; v < n; ++v) {
    auto [it, inserted] = ids.try_emplace(sets.find(v), ids.size());
    f.component_[v] = it->second;
  }
  f.component_count_ = ids.size();
  return f;
}

template <class S>
struct PathLabel {
  FreeVector<S> vector;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const PathLabel&, const PathLabel&) = default;
};

namespace detail {

// BFS tree from x: parent vertex and parent edge for each reached vertex.
struct BfsTree {
  std::vector<std::size_t> order;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> parent_edge;
};

inline BfsTree bfs_tree(const LabeledGraph& g, std::size_t x) {
  BfsTree t;
  t.parent.assign(g.vertex_count(), kUnreachable);
  t.parent_edge.assign(g.vertex_count(), kUnreachable);
  t.parent[x] = x;
  t.order.push_back(x);
  for (std::size_t qi = 0; qi < t.order.size(); ++qi) {
    const std::size_t u = t.order[qi];
    for (const auto& [w, e] : g.incident(u))
      if (t.parent[w] == kUnreachable) {
        t.parent[w] = u;
        t.parent_edge[w] = e;
        t.order.push_back(w);
      }
  }
  return t;
}

inline void require_vertex(const Forest& f, std::size_t v) {
  if (v >= f.graph().vertex_count()) throw StructuralError("vertex index out of range");
}

}  // namespace detail

/// The signed indicator of the unique x-y path.
template <class S>
PathLabel<S> path_label(const Forest& f, std::size_t x, std::size_t y) {
  detail::require_vertex(f, x);
  detail::require_vertex(f, y);
  if (!f.connected(x, y))
    throw std::domain_error("no path label: " + f.graph().vertex(x) + " and " + f.graph().vertex(y) +
                            " lie in different components");
  const auto& g = f.graph();
  const auto tree = detail::bfs_tree(g, x);
  PathLabel<S> p{FreeVector<S>(g.labels()), x, y};
  for (std::size_t v = y; v != x; v = tree.parent[v]) {
    const std::size_t e = tree.parent_edge[v];
    // Walking parent -> v.
    p.vector.set(e + 1, g.edge(e).tail == tree.parent[v] ? S(1) : S(-1));
  }
  return p;
}

template <class S>
PathLabel<S> path_label(const Forest& f, std::string_view x, std::string_view y) {
  return path_label<S>(f, f.graph().vertex_index(x), f.graph().vertex_index(y));
}

/// Path labels from x to every vertex of its component, indexed by vertex
/// (nullopt outside the component).
template <class S>
std::vector<std::optional<PathLabel<S>>> path_labels_from(const Forest& f, std::size_t x) {
  detail::require_vertex(f, x);
  const auto& g = f.graph();
  const auto tree = detail::bfs_tree(g, x);
  std::vector<std::optional<PathLabel<S>>> out(g.vertex_count());
  out[x] = PathLabel<S>{FreeVector<S>(g.labels()), x, x};
  for (std::size_t i = 1; i < tree.order.size(); ++i) {
    const std::size_t v = tree.order[i];
    const std::size_t u = tree.parent[v];
    const std::size_t e = tree.parent_edge[v];
    PathLabel<S> p{out[u]->vector, x, v};
    p.vector.set(e + 1, g.edge(e).tail == u ? S(1) : S(-1));
    out[v] = std::move(p);
  }
  return out;
}

/// p + q for p ending where q starts. Edges walked both ways cancel.
template <class S>
PathLabel<S> compose(const PathLabel<S>& p, const PathLabel<S>& q) {
  if (p.end != q.start) throw StructuralError("cannot compose path labels: endpoint mismatch");
  return PathLabel<S>{p.vector + q.vector, p.start, q.end};
}

/// Checks that a +-1 vector names a trail from start to end: its signed
/// edges can be ordered into a walk that uses each edge once.
template <class S>
bool is_path_label(const LabeledGraph& g, const FreeVector<S>& v, std::size_t start, std::size_t end) {
  using T = scalar_traits<S>;
  if (!same_points(v.points(), g.labels())) return false;
  // Signed edges as directed steps; a trail exists iff the directed multigraph
  // has an Euler trail from start to end.
  std::vector<long long> balance(g.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> out(g.vertex_count());
  std::vector<std::size_t> heads;
  for (const auto& [i, c] : v.coefficients()) {
    const auto& e = g.edge(i - 1);
    std::size_t from, to;
    if (T::equal(c, S(1), 0))
      from = e.tail, to = e.head;
    else if (T::equal(c, S(-1), 0))
      from = e.head, to = e.tail;
    else
      return false;
    ++balance[from];
    --balance[to];
    out[from].push_back(heads.size());
    heads.push_back(to);
  }
  if (heads.empty()) return start == end;
  for (std::size_t u = 0; u < balance.size(); ++u) {
    long long want = (start == end) ? 0 : (u == start ? 1 : (u == end ? -1 : 0));
    if (balance[u] != want) return false;
  }
  // Hierholzer from start must consume every step.
  std::vector<std::size_t> next(g.vertex_count(), 0);
  std::vector<std::size_t> stack{start};
  std::size_t used = 0;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    if (next[u] < out[u].size()) {
      stack.push_back(heads[out[u][next[u]++]]);
      ++used;
    } else {
      stack.pop_back();
    }
  }
  return used == heads.size();
}

template <class S>
using NormCache = std::unordered_map<std::string, S>;

/// Least norm of p(x, y') - p(x, y) over distinct y, y' in x's component,
/// measured in the stretched label space. nullopt for a singleton component.
template <class S>
std::optional<S> separation(const Forest& f, const StretchedLabeling<S>& sl, std::size_t x,
                            NormCache<S>* cache = nullptr) {
  if (!same_points(f.graph().labels(), sl.label_space.points()))
    throw StructuralError("stretched labeling does not label this forest");
  const auto labels = path_labels_from<S>(f, x);
  std::vector<std::size_t> members;
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (labels[v]) members.push_back(v);
  if (members.size() < 2) return std::nullopt;

  std::optional<S> least;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const auto diff = labels[members[b]]->vector - labels[members[a]]->vector;
      S value;
      if (cache) {
        auto key = diff.to_string();
        auto it = cache->find(key);
        if (it == cache->end()) it = cache->emplace(std::move(key), norm(sl.label_space, diff)).first;
        value = it->second;
      } else {
        value = norm(sl.label_space, diff);
      }
      if (!least || value < *least) least = value;
    }
  return least;
}

}  // namespace fbr

#endif  // FBR_PATH_LABELS_HPP
