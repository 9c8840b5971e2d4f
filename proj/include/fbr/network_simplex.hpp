#ifndef FBR_NETWORK_SIMPLEX_HPP
#define FBR_NETWORK_SIMPLEX_HPP

// Primal network simplex for uncapacitated transshipment on a complete
// digraph. Strongly feasible spanning trees with Cunningham's leaving-arc rule
// keep degenerate pivots from cycling, so the method terminates over any
// ordered field, including exact rationals.

#include "fbr/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fbr::detail {

template <class S>
struct FlowArc {
  std::size_t tail;
  std::size_t head;
  S flow;
};

template <class S>
struct TransshipmentSolution {
  std::vector<FlowArc<S>> arcs;  // positive flow only
  std::vector<S> potential;      // y[root] = 0 and y[i] - y[j] <= cost(i, j)
  S cost{0};
  std::size_t pivots = 0;
};

/// Minimizes sum cost(i,j) f(i,j) subject to out(i) - in(i) = supply[i] and
/// f >= 0 over all ordered pairs i != j. supply must sum to zero.
template <class S>
class CompleteTransshipment {
  using T = scalar_traits<S>;

 public:
  CompleteTransshipment(std::vector<std::vector<S>> cost, std::vector<S> supply, std::size_t root = 0)
      : cost_(std::move(cost)), supply_(std::move(supply)), root_(root), n_(supply_.size()) {
    if (cost_.size() != n_) throw std::invalid_argument("cost matrix does not match node count");
    if (n_ > 0 && root_ >= n_) throw std::invalid_argument("root out of range");
    S total(0);
    for (const auto& b : supply_) total += b;
    if (!T::is_zero(total)) throw std::invalid_argument("supplies do not balance");
    max_cost_ = 0;
    for (const auto& row : cost_) {
      if (row.size() != n_) throw std::invalid_argument("cost matrix is not square");
      for (const auto& c : row) max_cost_ = std::max(max_cost_, std::fabs(T::to_double(c)));
    }
  }

  TransshipmentSolution<S> solve() {
    TransshipmentSolution<S> sol;
    if (n_ == 0) return sol;
    init_tree();
    const std::size_t pivot_cap = 1000 * (n_ + 1) * (n_ + 1) + 1000;
    for (;;) {
      rebuild();
      std::size_t k = 0, l = 0;
      if (!price(k, l)) break;
      pivot(k, l);
      if (++sol.pivots > pivot_cap) throw std::logic_error("network simplex exceeded pivot cap");
    }
    sol.potential = y_;
    for (const auto& a : tree_) {
      if (!T::is_positive(a.flow)) continue;
      sol.arcs.push_back(a);
      sol.cost += a.flow * cost_[a.tail][a.head];
    }
    std::sort(sol.arcs.begin(), sol.arcs.end(), [](const FlowArc<S>& a, const FlowArc<S>& b) {
      return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
    });
    return sol;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  // Star through the root. Zero-supply nodes point toward the root, which
  // makes the initial tree strongly feasible.
  void init_tree() {
    tree_.clear();
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == root_) continue;
      if (T::is_negative(supply_[i]))
        tree_.push_back({root_, i, S(-supply_[i])});
      else
        tree_.push_back({i, root_, supply_[i]});
    }
  }

  // Parent pointers, depths and potentials from the current arc list.
  void rebuild() {
    std::vector<std::vector<std::size_t>> incident(n_);
    for (std::size_t a = 0; a < tree_.size(); ++a) {
      incident[tree_[a].tail].push_back(a);
      incident[tree_[a].head].push_back(a);
    }
    parent_.assign(n_, npos);
    parent_arc_.assign(n_, npos);
    depth_.assign(n_, 0);
    y_.assign(n_, S(0));
    std::vector<std::size_t> queue{root_};
    std::vector<char> seen(n_, 0);
    seen[root_] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t u = queue[qi];
      for (std::size_t a : incident[u]) {
        const auto& arc = tree_[a];
        std::size_t w = arc.tail == u ? arc.head : arc.tail;
        if (seen[w]) continue;
        seen[w] = 1;
        parent_[w] = u;
        parent_arc_[w] = a;
        depth_[w] = depth_[u] + 1;
        // Tree arcs are tight: y[tail] = y[head] + cost(tail, head).
        if (arc.tail == w)
          y_[w] = y_[u] + cost_[w][u];
        else
          y_[w] = y_[u] - cost_[u][w];
        queue.push_back(w);
      }
    }
    if (queue.size() != n_) throw std::logic_error("network simplex tree is not spanning");
  }

  // Dantzig pricing: most negative reduced cost c(k,l) - y[k] + y[l].
  bool price(std::size_t& k, std::size_t& l) const {
    S best(0);
    bool found = false;
    const double threshold = T::exact ? 0.0 : 1e-12 * (1.0 + max_cost_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        S reduced = cost_[i][j] - y_[i] + y_[j];
        bool negative = T::exact ? reduced < 0 : T::to_double(reduced) < -threshold;
        if (negative) {
          if (!found || reduced < best) {
            best = reduced;
            k = i;
            l = j;
            found = true;
          }
        }
      }
    return found;
  }

  bool tree_arc_points_up(std::size_t child) const { return tree_[parent_arc_[child]].tail == child; }

  void pivot(std::size_t k, std::size_t l) {
    // Cycle orientation follows the entering arc k -> l and returns to k
    // through the tree: l up to the apex, then down to k.
    std::vector<std::size_t> lside, kside;
    std::size_t a = l, b = k;
    while (a != b) {
      if (depth_[a] >= depth_[b]) {
        lside.push_back(a);
        a = parent_[a];
      } else {
        kside.push_back(b);
        b = parent_[b];
      }
    }

    // On the l side an arc is traversed child -> parent; on the k side
    // parent -> child. Backward arcs lose flow.
    auto backward_l = [&](std::size_t u) { return !tree_arc_points_up(u); };
    auto backward_k = [&](std::size_t u) { return tree_arc_points_up(u); };

    bool bounded = false;
    S delta(0);
    auto consider = [&](std::size_t u) {
      const S& f = tree_[parent_arc_[u]].flow;
      if (!bounded || f < delta) delta = f;
      bounded = true;
    };
    for (std::size_t u : lside)
      if (backward_l(u)) consider(u);
    for (std::size_t u : kside)
      if (backward_k(u)) consider(u);
    if (!bounded) throw std::logic_error("transshipment is unbounded (negative cycle)");

    const double tie = T::exact ? 0.0 : 1e-12 * (1.0 + std::fabs(T::to_double(delta)));
    auto blocking = [&](std::size_t u) {
      const S& f = tree_[parent_arc_[u]].flow;
      return T::exact ? f == delta : T::to_double(S(f - delta)) <= tie;
    };

    // Last blocking arc met when walking the cycle from the apex in its
    // orientation: k side (apex down to k), entering arc, l side (l up to apex).
    std::size_t leaving = npos;
    for (std::size_t u : lside)
      if (backward_l(u) && blocking(u)) leaving = u;
    if (leaving == npos)
      for (std::size_t u : kside)
        if (backward_k(u) && blocking(u)) {
          leaving = u;
          break;
        }
    if (leaving == npos) throw std::logic_error("no leaving arc found");

    for (std::size_t u : lside) {
      auto& f = tree_[parent_arc_[u]].flow;
      f = backward_l(u) ? S(f - delta) : S(f + delta);
    }
    for (std::size_t u : kside) {
      auto& f = tree_[parent_arc_[u]].flow;
      f = backward_k(u) ? S(f - delta) : S(f + delta);
    }
    tree_[parent_arc_[leaving]] = {k, l, delta};
  }

  std::vector<std::vector<S>> cost_;
  std::vector<S> supply_;
  std::size_t root_;
  std::size_t n_;
  double max_cost_ = 0;

  std::vector<FlowArc<S>> tree_;
  std::vector<std::size_t> parent_, parent_arc_, depth_;
  std::vector<S> y_;
};

}  // namespace fbr::detail

#endif  // FBR_NETWORK_SIMPLEX_HPP
