// Acceptance run: one PASS/FAIL line per criterion. Tolerances, case counts
// and time limits are pinned below. Where a criterion compares a library
// result against a bound, the bound or certificate is recomputed here from
// raw data rather than taken from the library.

#include "fbr/free_norm.hpp"
#include "fbr/path_labels.hpp"
#include "fbr/random.hpp"
#include "fbr/reduction.hpp"
#include "fbr/stretched.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fbr;
using R = Rational;

constexpr double kFloatTolerance = 1e-9;
constexpr double kDualityLimitSeconds = 10;
constexpr double kStretchLimitSeconds = 30;
constexpr double kReductionLimitSeconds = 60;
const R kStretchFloor(1, 4);
const R kSeparationFloor(1, 8);

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

template <class S>
S abs_of(const S& x) {
  return scalar_traits<S>::abs(x);
}

// Certificate check written against the definitions: plan masses are
// nonnegative, the plan's divergence is v, phi(*) = 0 and phi is 1-Lipschitz
// on supp(v) + *. Returns (primal, dual) computed from the raw data.
template <class S>
bool certificates_hold(const PointedMetricSpace<S>& s, const FreeVector<S>& v, const TransportPlan<S>& plan,
                       const LipschitzPotential<S>& pot, double tol, S& primal, S& dual) {
  using T = scalar_traits<S>;
  std::vector<S> divergence(s.size(), S(0));
  primal = S(0);
  for (const auto& m : plan.moves) {
    if (T::is_negative(m.mass)) return false;
    divergence[m.source] += m.mass;
    divergence[m.target] -= m.mass;
    primal += m.mass * s.dist(m.source, m.target);
  }
  for (std::size_t p = 1; p < s.size(); ++p)
    if (!T::equal(divergence[p], v.coefficient(p), tol)) return false;
  std::vector<std::size_t> domain{0};
  for (const auto& [i, c] : v.coefficients()) domain.push_back(i);
  if (!T::equal(pot.at(0), S(0), tol)) return false;
  for (std::size_t a : domain)
    for (std::size_t b : domain)
      if (!T::less_equal(S(pot.at(a) - pot.at(b)), s.dist(a, b), tol)) return false;
  dual = S(0);
  for (const auto& [i, c] : v.coefficients()) dual += c * pot.at(i);
  return true;
}

PointedMetricSpace<R> random_space(Rng& rng, std::uint64_t seed, std::size_t min_points = 2) {
  const auto k = static_cast<std::size_t>(rng.between(static_cast<long long>(min_points), 12));
  return adjoin_basepoint(random_raw_metric<R>(k, seed, rng.between(2, 20)));
}

// ------------------------------------------------------------------ 1

Outcome duality() {
  Clock clock;
  Rng rng(1001);
  std::size_t exact_ok = 0, float_ok = 0;
  double worst_gap = 0;
  const std::size_t cases = 200;
  for (std::size_t t = 0; t < cases; ++t) {
    auto s = random_space(rng, 5000 + t);
    auto v = random_vector<R>(rng, s.points(), 6, 5, 4);
    auto [primal_value, plan] = norm_primal(s, v);
    auto [dual_value, pot] = norm_dual(s, v);
    R primal, dual;
    if (certificates_hold(s, v, plan, pot, 0, primal, dual) && primal == dual && primal == primal_value &&
        dual == dual_value)
      ++exact_ok;

    auto sf = convert_space<R, double>(s);
    FreeVector<double> vf(s.points());
    for (const auto& [i, c] : v.coefficients()) vf.set(i, scalar_traits<R>::to_double(c));
    auto [fp, fplan] = norm_primal(sf, vf);
    auto [fd, fpot] = norm_dual(sf, vf);
    double p = 0, d = 0;
    const double gap = std::fabs(fp - fd);
    worst_gap = std::max(worst_gap, gap);
    if (certificates_hold(sf, vf, fplan, fpot, kFloatTolerance, p, d) && std::fabs(p - d) <= kFloatTolerance &&
        gap <= kFloatTolerance && std::fabs(fp - scalar_traits<R>::to_double(primal_value)) <= kFloatTolerance)
      ++float_ok;
  }
  const double secs = clock.seconds();
  Outcome o;
  o.pass = exact_ok == cases && float_ok == cases && secs < kDualityLimitSeconds;
  o.detail = fmt("%zu instances; exact primal == dual %zu/%zu; float gap <= %.0e %zu/%zu (worst %.2e); %.2f s (< %.0f s)",
                 cases, exact_ok, cases, kFloatTolerance, float_ok, cases, worst_gap, secs, kDualityLimitSeconds);
  return o;
}

// ------------------------------------------------------------------ 2

Outcome oracle() {
  Rng rng(2002);
  std::size_t cases = 0, agree = 0;
  for (std::uint64_t t = 0; t < 150; ++t) {
    auto s = random_space(rng, 7000 + t);
    const std::size_t available = s.size() - 1;
    const std::size_t support = std::min<std::size_t>(available, static_cast<std::size_t>(rng.between(1, kOracleMaxSupport)));
    std::vector<std::size_t> pool;
    for (std::size_t i = 1; i < s.size(); ++i) pool.push_back(i);
    rng.shuffle(pool);
    // Integer coefficients with total mass at most the oracle budget.
    long long mass_left = kOracleMaxMass;
    FreeVector<R> v(s.points());
    for (std::size_t i = 0; i < support && mass_left > 0; ++i) {
      const long long reserve = static_cast<long long>(support - i - 1);
      const long long c = rng.between(1, std::max<long long>(1, mass_left - reserve));
      v.set(pool[i], R(rng.coin() ? c : -c));
      mass_left -= c;
    }
    ++cases;
    if (norm_primal(s, v).first == norm_bruteforce(s, v)) ++agree;
  }
  Outcome o;
  o.pass = cases >= 100 && agree == cases;
  o.detail = fmt("%zu integer cases within budget (mass <= %lld, support <= %zu); exact matches %zu/%zu", cases,
                 kOracleMaxMass, kOracleMaxSupport, agree, cases);
  return o;
}

// ------------------------------------------------------------------ 3

Outcome isometry() {
  Rng rng(3003);
  std::size_t pairs = 0, ok = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto s = random_space(rng, 9000 + t);
    for (std::size_t p = 0; p < s.size(); ++p)
      for (std::size_t q = p + 1; q < s.size(); ++q) {
        auto v = FreeVector<R>::unit(s.points(), p) - FreeVector<R>::unit(s.points(), q);
        ++pairs;
        if (norm(s, v) == s.dist(p, q)) ++ok;
      }
  }
  Outcome o;
  o.pass = ok == pairs;
  o.detail = fmt("50 spaces, %zu point pairs (basepoint included); ||p - q|| == d(p, q) exactly %zu/%zu", pairs, ok, pairs);
  return o;
}

// ------------------------------------------------------------------ 4

Outcome lower_bound() {
  Rng rng(4004);
  std::size_t violations = 0, mismatches = 0;
  const std::size_t cases = 500;
  for (std::uint64_t t = 0; t < cases; ++t) {
    auto s = random_space(rng, 11000 + t, 2);
    auto v = random_vector<R>(rng, s.points(), 6, 6, 3, 2);
    const auto support = v.support();
    R least(2);
    for (std::size_t a = 0; a < support.size(); ++a)
      for (std::size_t b = a + 1; b < support.size(); ++b) least = std::min(least, s.dist(support[a], support[b]));
    const R bound = v.l1() * least / 2;
    if (bound != mass_lower_bound(s, v)) ++mismatches;
    if (norm(s, v) < bound) ++violations;
  }
  Outcome o;
  o.pass = violations == 0 && mismatches == 0;
  o.detail = fmt("%zu vectors with support >= 2; violations %zu; library bound differs from direct formula %zu", cases,
                 violations, mismatches);
  return o;
}

// ------------------------------------------------------------------ 5

Outcome norm_axioms() {
  Rng rng(5005);
  std::size_t homogeneity = 0, triangle_exact = 0, triangle_float = 0;
  const std::size_t cases = 500;
  double worst = -1;
  for (std::uint64_t t = 0; t < cases; ++t) {
    auto s = random_space(rng, 13000 + t);
    auto u = random_vector<R>(rng, s.points(), 6, 5, 3);
    auto v = random_vector<R>(rng, s.points(), 6, 5, 3);
    const R c(rng.between(-7, 7), rng.between(1, 5));
    const R nu = norm(s, u), nv = norm(s, v);
    if (norm(s, c * u) == abs_of(c) * nu) ++homogeneity;
    if (norm(s, u + v) <= nu + nv) ++triangle_exact;

    auto sf = convert_space<R, double>(s);
    auto to_f = [&](const FreeVector<R>& x) {
      FreeVector<double> y(s.points());
      for (const auto& [i, k] : x.coefficients()) y.set(i, scalar_traits<R>::to_double(k));
      return y;
    };
    const double excess = norm(sf, to_f(u) + to_f(v)) - norm(sf, to_f(u)) - norm(sf, to_f(v));
    worst = std::max(worst, excess);
    if (excess <= kFloatTolerance) ++triangle_float;
  }
  Outcome o;
  o.pass = homogeneity == cases && triangle_exact == cases && triangle_float == cases;
  o.detail = fmt("%zu pairs; homogeneity exact %zu; triangle exact %zu; triangle float within %.0e %zu (max excess %.2e)",
                 cases, homogeneity, triangle_exact, kFloatTolerance, triangle_float, worst);
  return o;
}

// ------------------------------------------------------------------ 6

// The same graph with an explicit base label metric of diameter below 1/1000:
// d'(i, j) = (m + |pos(i) - pos(j)|) / (2000 m) for shuffled distinct
// positions, so the colorings must supply nearly all of the stretch.
LabeledGraph with_small_base_metric(const LabeledGraph& g, std::uint64_t seed) {
  const std::size_t m = g.edge_count();
  if (m == 0) return g;
  Rng rng(seed);
  std::vector<long long> position(m);
  for (std::size_t i = 0; i < m; ++i) position[i] = static_cast<long long>(i);
  rng.shuffle(position);
  RawMetric<R> raw;
  for (const auto& e : g.edge_specs()) raw.ids.push_back(e.label);
  raw.dist.assign(m, std::vector<R>(m));
  const long long mm = static_cast<long long>(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) raw.dist[i][j] = R(mm + std::llabs(position[i] - position[j]), 2000 * mm);
  return LabeledGraph::make(g.vertices(), g.edge_specs(), std::move(raw));
}

// min over label pairs at finite edge-graph distance k of k * d, with the
// distances from Floyd-Warshall over the raw edge list.
R stretch_by_scan(const LabeledGraph& g, const PointedMetricSpace<R>& space) {
  const std::size_t m = g.edge_count();
  constexpr std::size_t inf = 1u << 30;
  std::vector<std::vector<std::size_t>> d(m, std::vector<std::size_t>(m, inf));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const auto& x = g.edge(a);
      const auto& y = g.edge(b);
      if (a == b)
        d[a][b] = 0;
      else if (x.tail == y.tail || x.tail == y.head || x.head == y.tail || x.head == y.head)
        d[a][b] = 1;
    }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t a = 0; a < m; ++a)
      if (d[a][k] < inf)
        for (std::size_t b = 0; b < m; ++b) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
  R best(1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (d[a][b] < inf) best = std::min(best, R(static_cast<long long>(d[a][b])) * space.dist(a + 1, b + 1));
  return best;
}

Outcome stretch() {
  Clock clock;
  std::vector<LabeledGraph> graphs;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 10 + (seed * 37) % 150;
    const std::size_t extra = std::min<std::size_t>(200 - (n - 1), (seed * 13) % 60);
    graphs.push_back(random_connected_graph(n, extra, 15000 + seed));
  }
  const std::size_t random_count = graphs.size();
  for (std::size_t len : {1, 2, 3, 5, 8, 17, 33, 64, 100, 200}) graphs.push_back(path_graph(len, len % 2 == 1));
  for (std::size_t leaves : {1, 2, 3, 10, 50, 200}) graphs.push_back(star_graph(leaves));
  for (std::size_t n : {2, 3, 7, 15, 31, 63, 127, 201}) graphs.push_back(binary_tree(n));
  const std::size_t discrete_count = graphs.size();
  for (std::size_t i = 0; i < discrete_count; ++i) graphs.push_back(with_small_base_metric(graphs[i], 16000 + i));

  std::size_t meets = 0, agrees = 0, max_edges = 0;
  R worst(1);
  for (const auto& g : graphs) {
    max_edges = std::max(max_edges, g.edge_count());
    auto sl = stretch_labeling<R>(g);
    const R eps = verify_stretched(sl);
    worst = std::min(worst, eps);
    if (eps >= kStretchFloor) ++meets;
    if (eps == stretch_by_scan(g, sl.label_space)) ++agrees;
  }
  const double secs = clock.seconds();
  Outcome o;
  o.pass = meets == graphs.size() && agrees == graphs.size() && secs < kStretchLimitSeconds;
  o.detail = fmt("%zu random connected graphs + %zu path/star/binary-tree graphs (<= %zu edges), each with discrete "
                 "and with base metric of diameter < 1/1000; eps >= 1/4 %zu/%zu; scan agrees %zu/%zu; min eps %s; %.2f s (< %.0f s)",
                 random_count, discrete_count - random_count, max_edges, meets, graphs.size(), agrees, graphs.size(),
                 worst.str().c_str(), secs, kStretchLimitSeconds);
  return o;
}

// ------------------------------------------------------------------ 7

std::vector<LabeledGraph> forest_family(std::uint64_t base_seed) {
  std::vector<LabeledGraph> out;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 20 + (i * 17) % 81;  // 20..100
    const std::size_t degree = 2 + i % 4;
    auto g = random_forest(n, degree, base_seed + i);
    out.push_back(i % 2 == 1 ? with_small_base_metric(g, base_seed + 500 + i) : g);
  }
  return out;
}

Outcome separation_floor() {
  std::size_t roots = 0, ok = 0, oracle_checked = 0, oracle_agree = 0;
  double least = 2;
  for (const auto& g : forest_family(17000)) {
    auto f = assert_forest(g);
    auto sl = stretch_labeling<double>(g);
    auto exact = stretch_labeling<R>(g);
    NormCache<double> cache;
    const double floor = std::max(sl.epsilon / 2, scalar_traits<R>::to_double(kSeparationFloor));
    for (std::size_t x = 0; x < g.vertex_count(); ++x) {
      auto sep = separation(f, sl, x, &cache);
      if (!sep) continue;
      ++roots;
      least = std::min(least, *sep);
      if (*sep >= floor - kFloatTolerance && *sep >= sl.epsilon / 2 - kFloatTolerance) ++ok;
    }
    // Cross-check a handful of the underlying norms against the oracle.
    Rng rng(g.vertex_count());
    for (int t = 0; t < 20 && g.edge_count() > 0; ++t) {
      const std::size_t x = rng.below(g.vertex_count());
      const auto members = f.component_vertices(x);
      const std::size_t y = members[rng.below(members.size())];
      auto diff = path_label<R>(f, x, y).vector;
      if (diff.is_zero() || diff.support_size() > kOracleMaxSupport) continue;
      ++oracle_checked;
      if (norm_bruteforce(exact.label_space, diff) == norm(exact.label_space, diff)) ++oracle_agree;
    }
  }
  Outcome o;
  o.pass = ok == roots && oracle_agree == oracle_checked;
  o.detail = fmt("50 forests (20-100 vertices, half with base metric of diameter < 1/1000); roots with separation >= max(eps/2, 1/8): %zu/%zu; min separation %.4f; "
                 "oracle cross-check %zu/%zu",
                 ok, roots, least, oracle_agree, oracle_checked);
  return o;
}

// ------------------------------------------------------------------ 8

Outcome cocycle() {
  std::size_t triples = 0, ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_forest(20 + seed, 2 + seed % 3, 19000 + seed);
    auto f = assert_forest(g);
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<std::optional<PathLabel<R>>>> p(n, std::vector<std::optional<PathLabel<R>>>(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (f.connected(x, y)) p[x][y] = path_label<R>(f, x, y);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!p[x][y]) continue;
        for (std::size_t z = 0; z < n; ++z) {
          if (!p[y][z]) continue;
          ++triples;
          if (p[x][y]->vector + p[y][z]->vector == p[x][z]->vector) ++ok;
        }
      }
  }
  Outcome o;
  o.pass = ok == triples;
  o.detail = fmt("20 forests (20-39 vertices), all same-component triples; p(x,z) == p(x,y) + p(y,z) exactly %zu/%zu",
                 ok, triples);
  return o;
}

// ------------------------------------------------------------------ 9

// Connectivity by BFS over the raw edge list.
std::vector<std::size_t> components_by_bfs(const LabeledGraph& g) {
  std::vector<std::size_t> comp(g.vertex_count(), kUnreachable);
  std::size_t next = 0;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != kUnreachable) continue;
    std::vector<std::size_t> queue{s};
    comp[s] = next;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto [t, h] = g.edge(e);
        const std::size_t u = queue[qi];
        const std::size_t w = t == u ? h : (h == u ? t : kUnreachable);
        if (w != kUnreachable && comp[w] == kUnreachable) {
          comp[w] = next;
          queue.push_back(w);
        }
      }
    ++next;
  }
  return comp;
}

Outcome reduction() {
  Clock clock;
  std::size_t forests = 0, verified = 0, multi = 0, pairs = 0, iff_ok = 0;
  std::size_t faults = 0, faults_caught = 0;
  ReductionCheckOptions opts;
  opts.check_separation = false;  // covered by criterion 7
  for (const auto& g : forest_family(21000)) {
    ++forests;
    auto f = assert_forest(g);
    auto sl = stretch_labeling<double>(g);
    if (f.component_count() > 1) ++multi;
    auto images = reduce_all<double>(f);
    if (verify_reduction(f, sl, images, opts).ok()) ++verified;

    const auto comp = components_by_bfs(g);
    for (std::size_t x = 0; x < g.vertex_count(); ++x)
      for (std::size_t y = 0; y < g.vertex_count(); ++y) {
        ++pairs;
        auto w = orbit_equivalent(images[x], images[y]);
        bool good = w.equivalent == (comp[x] == comp[y]);
        if (w.equivalent) good = good && translate(*w.translator, images[x]) == images[y];
        iff_ok += good;
      }

    // Fault 1: shift one coefficient of one entry.
    for (auto& img : images) {
      auto it = std::find_if(img.entries.begin(), img.entries.end(), [](const auto& e) { return !e.second.is_zero(); });
      if (it == img.entries.end()) continue;
      auto mutated = images;
      auto& vec = mutated[img.base].entries.at(it->first);
      vec.add_to(vec.coefficients().front().first, 1.0);
      ++faults;
      auto report = verify_reduction(f, sl, mutated, opts);
      faults_caught += !report.ok() && !report.violations.front().witness.empty();
      break;
    }
    // Fault 2: an image from another component.
    if (f.component_count() > 1) {
      std::size_t other = 1;
      while (f.connected(0, other)) ++other;
      auto mutated = images;
      mutated[0] = images[other];
      ++faults;
      auto report = verify_reduction(f, sl, mutated, opts);
      faults_caught += !report.ok() && !report.violations.front().witness.empty();
    }
  }
  const double secs = clock.seconds();
  Outcome o;
  o.pass = verified == forests && iff_ok == pairs && faults > 0 && faults_caught == faults && multi > 0 &&
           secs < kReductionLimitSeconds;
  o.detail = fmt("%zu forests (%zu multi-component, half with base metric of diameter < 1/1000); verify ok %zu/%zu; iff on %zu pairs %zu ok; faults caught with "
                 "witnesses %zu/%zu; %.2f s (< %.0f s)",
                 forests, multi, verified, forests, pairs, iff_ok, faults_caught, faults, secs, kReductionLimitSeconds);
  return o;
}

// ------------------------------------------------------------------ 10

// All ±1 vectors of simple paths from x to y, by DFS over the raw edge list.
void simple_paths(const LabeledGraph& g, std::size_t x, std::size_t y, std::vector<FreeVector<R>>& out) {
  std::vector<char> on_path(g.vertex_count(), 0);
  FreeVector<R> current(g.labels());
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    if (u == y) {
      out.push_back(current);
      return;
    }
    on_path[u] = 1;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto [t, h] = g.edge(e);
      if (t != u && h != u) continue;
      const std::size_t w = t == u ? h : t;
      if (on_path[w]) continue;
      current.set(e + 1, R(t == u ? 1 : -1));
      dfs(w);
      current.set(e + 1, R(0));
    }
    on_path[u] = 0;
  };
  dfs(x);
}

LabeledGraph from_parents(const std::vector<long>& parent, unsigned orientation) {
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < parent.size(); ++i) vertices.push_back(vertex_name(i));
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] < 0) continue;
    const bool flip = (orientation >> edges.size()) & 1u;
    const auto& p = vertices[static_cast<std::size_t>(parent[i])];
    edges.push_back({flip ? vertices[i] : p, flip ? p : vertices[i], label_name(edges.size())});
  }
  return LabeledGraph::make(std::move(vertices), std::move(edges));
}

Outcome uniqueness() {
  std::size_t forests = 0, pairs = 0, ok = 0;
  auto check = [&](const LabeledGraph& g) {
    ++forests;
    auto f = assert_forest(g);
    for (std::size_t x = 0; x < g.vertex_count(); ++x)
      for (std::size_t y = 0; y < g.vertex_count(); ++y) {
        std::vector<FreeVector<R>> found;
        simple_paths(g, x, y, found);
        if (!f.connected(x, y)) {
          ok += found.empty();
          ++pairs;
          continue;
        }
        ++pairs;
        ok += found.size() == 1 && found[0] == path_label<R>(f, x, y).vector;
      }
  };
  // Every parent array on n <= 6 vertices (vertex i attaches to one of
  // 0..i-1 or starts a new tree), under every orientation of its edges.
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<long> parent(n, -1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        std::size_t m = 0;
        for (long p : parent) m += p >= 0;
        for (unsigned o = 0; o < (1u << m); ++o) check(from_parents(parent, o));
        return;
      }
      for (long p = -1; p < static_cast<long>(i); ++p) {
        parent[i] = p;
        rec(i + 1);
      }
      parent[i] = -1;
    };
    rec(1);
  }
  // n = 7..12: paths, stars, caterpillars and heap-ordered binary trees,
  // each under 16 seeded orientations, plus seeded random forests.
  Rng rng(23000);
  for (std::size_t n = 7; n <= 12; ++n) {
    std::vector<std::vector<long>> shapes(4, std::vector<long>(n, -1));
    for (std::size_t i = 1; i < n; ++i) {
      shapes[0][i] = static_cast<long>(i - 1);
      shapes[1][i] = 0;
      shapes[2][i] = i % 2 == 1 ? static_cast<long>(i - 1) : static_cast<long>(i >= 2 ? i - 2 : 0);
      shapes[3][i] = static_cast<long>((i - 1) / 2);
    }
    for (const auto& shape : shapes)
      for (int t = 0; t < 16; ++t) check(from_parents(shape, static_cast<unsigned>(rng.below(1u << (n - 1)))));
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) check(random_forest(7 + seed % 6, 3, 24000 + seed));
  Outcome o;
  o.pass = ok == pairs;
  o.detail = fmt("%zu forests (all parent arrays n <= 6 with all orientations; structured and random n = 7-12); "
                 "ordered pairs with exactly the expected path set %zu/%zu",
                 forests, ok, pairs);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"duality", duality},          {"oracle", oracle},
      {"isometry", isometry},        {"lower bound", lower_bound},
      {"norm axioms", norm_axioms},  {"stretch constant", stretch},
      {"separation", separation_floor}, {"cocycle", cocycle},
      {"reduction", reduction},      {"path-label uniqueness", uniqueness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
