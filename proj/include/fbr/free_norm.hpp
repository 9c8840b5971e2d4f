#ifndef FBR_FREE_NORM_HPP
#define FBR_FREE_NORM_HPP

// The free-space norm of a finitely supported vector: the cheapest way to
// write v as a combination of differences x_i - y_i, where the y side may end
// at the basepoint. An optimal representation lives on supp(v) plus the
// basepoint, so the norm is the optimum of a transshipment problem on that
// complete digraph. Its LP dual yields a 1-Lipschitz potential vanishing at
// the basepoint, which certifies the value from below.

#include "fbr/free_vector.hpp"
#include "fbr/metric.hpp"
#include "fbr/network_simplex.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbr {

template <class S>
struct Move {
  std::size_t source;
  std::size_t target;
  S mass;

  friend bool operator==(const Move&, const Move&) = default;
};

/// Nonnegative flow between points of supp(v) and the basepoint whose
/// divergence (outflow - inflow) equals v at every non-basepoint point.
template <class S>
struct TransportPlan {
  std::vector<Move<S>> moves;

  S cost(const PointedMetricSpace<S>& s) const {
    S total(0);
    for (const auto& m : moves) total += m.mass * s.dist(m.source, m.target);
    return total;
  }
};

/// Values on supp(v) and the basepoint, with phi(*) = 0.
template <class S>
struct LipschitzPotential {
  std::map<std::size_t, S> phi;

  S at(std::size_t i) const {
    auto it = phi.find(i);
    return it == phi.end() ? S(0) : it->second;
  }

  S value(const FreeVector<S>& v) const {
    S total(0);
    for (const auto& [i, c] : v.coefficients()) total += c * at(i);
    return total;
  }
};

template <class S>
struct NormResult {
  S value{0};
  TransportPlan<S> plan;
  LipschitzPotential<S> potential;
  S gap{0};
  std::size_t pivots = 0;
};

/// Requested oracle instance is larger than the enumeration budget.
class OracleBudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Bound requested where its defining minimum is empty.
class UndefinedBoundError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

template <class S>
void require_over(const PointedMetricSpace<S>& s, const FreeVector<S>& v) {
  if (!same_points(s.points(), v.points()))
    throw StructuralError("vector does not live over the given metric space");
}

// Node 0 is the basepoint, followed by supp(v) ascending.
template <class S>
std::vector<std::size_t> norm_nodes(const FreeVector<S>& v) {
  std::vector<std::size_t> nodes{0};
  for (std::size_t i : v.support()) nodes.push_back(i);
  return nodes;
}

}  // namespace detail

/// Solves the transshipment problem once and returns both certificates.
template <class S>
NormResult<S> solve_norm(const PointedMetricSpace<S>& s, const FreeVector<S>& v) {
  detail::require_over(s, v);
  NormResult<S> result;
  result.potential.phi[0] = S(0);
  if (v.is_zero()) return result;

  const auto nodes = detail::norm_nodes(v);
  const std::size_t n = nodes.size();
  std::vector<std::vector<S>> cost(n, std::vector<S>(n, S(0)));
  std::vector<S> supply(n, S(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) cost[a][b] = s.dist(nodes[a], nodes[b]);
  S total(0);
  for (std::size_t a = 1; a < n; ++a) {
    supply[a] = v.coefficient(nodes[a]);
    total += supply[a];
  }
  supply[0] = -total;

  auto sol = detail::CompleteTransshipment<S>(std::move(cost), std::move(supply), 0).solve();
  for (const auto& arc : sol.arcs) result.plan.moves.push_back({nodes[arc.tail], nodes[arc.head], arc.flow});
  for (std::size_t a = 0; a < n; ++a) result.potential.phi[nodes[a]] = sol.potential[a];
  result.value = result.plan.cost(s);
  result.gap = result.value - result.potential.value(v);
  result.pivots = sol.pivots;
  return result;
}

/// Exact minimum of the transshipment program and a plan attaining it.
template <class S>
std::pair<S, TransportPlan<S>> norm_primal(const PointedMetricSpace<S>& s, const FreeVector<S>& v) {
  auto r = solve_norm(s, v);
  return {r.value, std::move(r.plan)};
}

/// Maximum of sum coeff(p) phi(p) over 1-Lipschitz phi with phi(*) = 0,
/// read off the optimal tree's node potentials.
template <class S>
std::pair<S, LipschitzPotential<S>> norm_dual(const PointedMetricSpace<S>& s, const FreeVector<S>& v) {
  auto r = solve_norm(s, v);
  S value = r.potential.value(v);
  return {value, std::move(r.potential)};
}

template <class S>
S norm(const PointedMetricSpace<S>& s, const FreeVector<S>& v) {
  return solve_norm(s, v).value;
}

inline constexpr long long kOracleMaxMass = 6;
inline constexpr std::size_t kOracleMaxSupport = 5;

/// Brute-force norm for integer vectors with sum |coeff| <= 6 and at most 5
/// support points.
///
/// Some optimal flow is integral, and an integral flow with no cycles splits
/// into unit paths from surplus to deficit nodes. The oracle enumerates every
/// simple path between every ordered node pair and every pairing of surplus
/// units with deficit units, and keeps the cheapest total. It reads only the
/// distance matrix and shares no code with the simplex.
template <class S>
S norm_bruteforce(const PointedMetricSpace<S>& s, const FreeVector<S>& v) {
  using T = scalar_traits<S>;
  detail::require_over(s, v);
  if (v.support_size() > kOracleMaxSupport)
    throw OracleBudgetError("oracle budget exceeded: support " + std::to_string(v.support_size()) + " > " +
                            std::to_string(kOracleMaxSupport));
  long long mass = 0;
  for (const auto& [i, c] : v.coefficients()) {
    if (!T::is_integer(c)) throw OracleBudgetError("oracle requires integer coefficients");
    mass += std::llabs(T::to_integer(c));
    if (mass > kOracleMaxMass)
      throw OracleBudgetError("oracle budget exceeded: sum |coeff| > " + std::to_string(kOracleMaxMass));
  }
  if (v.is_zero()) return S(0);

  std::vector<std::size_t> nodes{0};
  for (const auto& [i, c] : v.coefficients()) nodes.push_back(i);
  const std::size_t n = nodes.size();
  std::vector<long long> divergence(n, 0);
  long long total = 0;
  for (std::size_t a = 1; a < n; ++a) {
    divergence[a] = T::to_integer(v.coefficient(nodes[a]));
    total += divergence[a];
  }
  divergence[0] = -total;

  // Cheapest simple path between each ordered pair, by exhaustive DFS.
  std::vector<std::vector<S>> best(n, std::vector<S>(n));
  std::vector<std::vector<char>> reached(n, std::vector<char>(n, 0));
  std::vector<char> on_path(n, 0);
  auto dfs = [&](auto&& self, std::size_t start, std::size_t at, const S& cost) -> void {
    if (!reached[start][at] || cost < best[start][at]) {
      best[start][at] = cost;
      reached[start][at] = 1;
    }
    on_path[at] = 1;
    for (std::size_t next = 0; next < n; ++next)
      if (!on_path[next]) self(self, start, next, S(cost + s.dist(nodes[at], nodes[next])));
    on_path[at] = 0;
  };
  for (std::size_t a = 0; a < n; ++a) dfs(dfs, a, a, S(0));

  std::vector<std::size_t> sources, sinks;
  for (std::size_t a = 0; a < n; ++a) {
    for (long long u = 0; u < divergence[a]; ++u) sources.push_back(a);
    for (long long u = 0; u < -divergence[a]; ++u) sinks.push_back(a);
  }
  std::sort(sinks.begin(), sinks.end());
  bool first = true;
  S answer(0);
  do {
    S cost(0);
    for (std::size_t u = 0; u < sources.size(); ++u) cost += best[sources[u]][sinks[u]];
    if (first || cost < answer) answer = cost;
    first = false;
  } while (std::next_permutation(sinks.begin(), sinks.end()));
  return answer;
}

/// Half the coefficient mass times the least distance between two distinct
/// support points; a lower bound for the norm. Needs two support points.
template <class S>
S mass_lower_bound(const PointedMetricSpace<S>& s, const FreeVector<S>& v) {
  detail::require_over(s, v);
  if (v.support_size() < 2)
    throw UndefinedBoundError("lower bound needs at least two support points, got " +
                              std::to_string(v.support_size()));
  const auto supp = v.support();
  S least = s.dist(supp[0], supp[1]);
  for (std::size_t a = 0; a < supp.size(); ++a)
    for (std::size_t b = a + 1; b < supp.size(); ++b) least = std::min(least, s.dist(supp[a], supp[b]));
  return S(v.l1() * least) / S(2);
}

/// Re-verifies a NormResult from raw data: plan masses and divergence, plan
/// cost against the reported value, plan endpoints on supp(v) plus *, the
/// potential's Lipschitz bound and phi(*) = 0, and the duality gap.
template <class S>
ValidationReport check_certificates(const PointedMetricSpace<S>& s, const FreeVector<S>& v,
                                    const NormResult<S>& r, double tol = kDefaultTolerance) {
  using T = scalar_traits<S>;
  detail::require_over(s, v);
  ValidationReport report;
  const auto& ids = s.points()->ids();
  auto name = [&](std::size_t i) { return i < ids.size() ? ids[i] : "#" + std::to_string(i); };
  auto in_domain = [&](std::size_t i) { return i == 0 || !T::is_zero(v.coefficient(i)); };

  std::map<std::size_t, S> net;
  for (const auto& m : r.plan.moves) {
    if (m.source >= s.size() || m.target >= s.size()) {
      report.add("plan_endpoint", {name(m.source), name(m.target)}, 0, "index out of range");
      continue;
    }
    if (T::is_negative(m.mass)) report.add("plan_mass", {name(m.source), name(m.target)}, T::to_double(m.mass));
    if (!in_domain(m.source) || !in_domain(m.target))
      report.add("plan_support", {name(m.source), name(m.target)}, T::to_double(m.mass));
    net[m.source] += m.mass;
    net[m.target] -= m.mass;
  }
  S total(0);
  for (std::size_t p = 1; p < s.size(); ++p) {
    const S want = v.coefficient(p);
    total += want;
    const S got = net.count(p) ? net[p] : S(0);
    if (!T::equal(got, want, tol)) report.add("divergence", {name(p)}, T::to_double(S(got - want)));
  }
  const S at_base = net.count(0) ? net[0] : S(0);
  if (!T::equal(at_base, S(-total), tol)) report.add("divergence", {name(0)}, T::to_double(S(at_base + total)));

  const S plan_cost = r.plan.cost(s);
  if (!T::equal(plan_cost, r.value, tol))
    report.add("plan_cost", {}, T::to_double(S(plan_cost - r.value)), "reported value differs from plan cost");

  if (!T::is_zero(r.potential.at(0))) report.add("potential_base", {name(0)}, T::to_double(r.potential.at(0)));
  std::vector<std::size_t> domain;
  for (const auto& [i, value] : r.potential.phi) {
    if (i >= s.size()) {
      report.add("potential_domain", {name(i)}, 0, "index out of range");
      continue;
    }
    domain.push_back(i);
  }
  if (!r.potential.phi.count(0)) domain.insert(domain.begin(), 0);
  for (std::size_t a = 0; a < domain.size(); ++a)
    for (std::size_t b = a + 1; b < domain.size(); ++b) {
      const std::size_t p = domain[a], q = domain[b];
      const S rise = T::abs(S(r.potential.at(p) - r.potential.at(q)));
      if (!T::less_equal(rise, s.dist(p, q), tol))
        report.add("lipschitz", {name(p), name(q)}, T::to_double(S(rise - s.dist(p, q))));
    }

  const S gap = plan_cost - r.potential.value(v);
  if (!T::equal(gap, S(0), tol)) report.add("duality_gap", {}, T::to_double(gap));
  if (!T::equal(gap, r.gap, tol)) report.add("reported_gap", {}, T::to_double(S(gap - r.gap)));
  return report;
}

}  // namespace fbr

#endif  // FBR_FREE_NORM_HPP
