#ifndef FBR_CLI_HPP
#define FBR_CLI_HPP

// Command-line driver. run_command parses argv, runs one subcommand and
// writes a RunReport to out. Exit status: 0 when every suite passes, 1 when
// a check fails, 2 on usage or input errors.

#include "fbr/free_norm.hpp"
#include "fbr/instance.hpp"
#include "fbr/path_labels.hpp"
#include "fbr/random.hpp"
#include "fbr/reduction.hpp"
#include "fbr/report.hpp"
#include "fbr/stretched.hpp"
#include "fbr/vector_text.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace fbr {

struct CliOptions {
  std::string command;
  std::string input;
  std::string space;
  std::string vector;
  std::string vertex;
  std::string from;
  std::string to;
  std::string output;
  std::string format = "text";
  std::string inject_fault;
  bool exact = false;
  std::uint64_t seed = 0;
  std::size_t size = 20;
  std::size_t max_degree = 3;
  double tolerance = kDefaultTolerance;
};

/// Bad flags, unreadable files, malformed input: exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli {

/// Triples checked exhaustively up to this vertex count, sampled above it.
inline constexpr std::size_t kExhaustiveCocycleVertices = 40;
inline constexpr std::size_t kSampledTriples = 5000;
/// Vectors drawn by verify for the norm suites.
inline constexpr std::size_t kVerifyVectors = 64;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class S>
Json scalar_json(const S& x) {
  if constexpr (std::is_same_v<S, Rational>)
    return detail::rational_to_json(x);
  else
    return x;
}

template <class S>
double as_double(const S& x) {
  return scalar_traits<S>::to_double(x);
}

struct Loaded {
  Instance instance;
  std::string digest;
};

inline Loaded load_instance(const CliOptions& o) {
  if (o.input.empty()) throw UsageError("--input is required for '" + o.command + "'");
  Loaded l;
  l.instance = parse_instance(read_file(o.input));
  l.digest = fnv1a_hex(serialize_instance(l.instance));
  return l;
}

inline SuiteResult cycle_suite(const CycleError& e) {
  ValidationReport r;
  r.add("acyclic", e.cycle(), 0, "cycle of length " + std::to_string(e.cycle().size()));
  return SuiteResult::from("forest", r);
}

inline SuiteResult forest_suite(const Forest& f) {
  return SuiteResult::from("forest", {},
                           {{"vertices", f.graph().vertex_count()},
                            {"edges", f.graph().edge_count()},
                            {"components", f.component_count()}});
}

// Cocycle and path-shape checks over all same-component triples, or over a
// seeded sample of them on large forests.
template <class S>
SuiteResult cocycle_suite(const Forest& f, std::uint64_t seed) {
  const auto& g = f.graph();
  const std::size_t n = g.vertex_count();
  ValidationReport r;
  std::size_t checked = 0;
  std::size_t shown = 0;
  auto fail = [&](const std::string& axiom, std::vector<std::string> w) {
    if (shown++ < 50) r.add(axiom, std::move(w));
  };
  std::vector<std::vector<std::optional<PathLabel<S>>>> table(n);
  auto labels_from = [&](std::size_t x) -> const std::vector<std::optional<PathLabel<S>>>& {
    if (table[x].empty()) table[x] = path_labels_from<S>(f, x);
    return table[x];
  };
  auto check = [&](std::size_t x, std::size_t y, std::size_t z) {
    const auto& pxy = *labels_from(x)[y];
    const auto& pyz = *labels_from(y)[z];
    const auto& pxz = *labels_from(x)[z];
    ++checked;
    if (!(compose(pxy, pyz) == pxz)) fail("cocycle", {g.vertex(x), g.vertex(y), g.vertex(z)});
  };
  const bool exhaustive = n <= kExhaustiveCocycleVertices;
  if (exhaustive) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!f.connected(x, y)) continue;
        const auto& pxy = *labels_from(x)[y];
        if (!is_path_label(g, pxy.vector, x, y)) fail("path_shape", {g.vertex(x), g.vertex(y)});
        if (!(pxy.vector == -labels_from(y)[x]->vector)) fail("anti_symmetry", {g.vertex(x), g.vertex(y)});
        for (std::size_t z = 0; z < n; ++z)
          if (f.connected(y, z)) check(x, y, z);
      }
  } else if (n > 0) {
    Rng rng(seed);
    for (std::size_t t = 0; t < kSampledTriples; ++t) {
      const std::size_t x = rng.below(n);
      const auto members = f.component_vertices(x);
      const std::size_t y = members[rng.below(members.size())];
      const std::size_t z = members[rng.below(members.size())];
      const auto& pxy = *labels_from(x)[y];
      if (!is_path_label(g, pxy.vector, x, y)) fail("path_shape", {g.vertex(x), g.vertex(y)});
      check(x, y, z);
      // Bound the memoized table on large inputs.
      if (t % 64 == 63) std::fill(table.begin(), table.end(), std::vector<std::optional<PathLabel<S>>>{});
    }
  }
  Json details{{"triples", checked}, {"mode", exhaustive ? "exhaustive" : "sampled"}};
  if (!exhaustive) details["seed"] = seed;
  if (shown > 50) r.add("cocycle", {}, static_cast<double>(shown - 50), "further witnesses omitted");
  return SuiteResult::from("cocycle", r, std::move(details));
}

// ---------------------------------------------------------------- validate

inline RunReport run_validate(const CliOptions& o) {
  RunReport rep;
  if (!o.space.empty()) {
    const auto bytes = read_file(o.space);
    auto raw = parse_space(bytes);
    rep.instance_digest = fnv1a_hex(serialize_space(raw));
    auto points = PointSet::make(raw.ids);
    const std::size_t k = raw.ids.size();
    if (raw.dist.size() != k) throw UsageError("matrix has " + std::to_string(raw.dist.size()) + " rows for " +
                                               std::to_string(k) + " points");
    DistMatrix<Rational> d(k + 1, std::vector<Rational>(k + 1, Rational(0)));
    for (std::size_t i = 1; i <= k; ++i) d[0][i] = d[i][0] = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (raw.dist[i].size() != k) throw UsageError("matrix row " + std::to_string(i) + " has the wrong length");
      for (std::size_t j = 0; j < k; ++j) d[i + 1][j + 1] = raw.dist[i][j];
    }
    PointedMetricSpace<Rational> s(points, std::move(d));
    rep.suites.push_back(SuiteResult::from("metric", validate_space(s), {{"points", k}}));
    return rep;
  }
  Loaded l;
  try {
    l = load_instance(o);
  } catch (const ValidationError& e) {
    rep.instance_digest = fnv1a_hex(read_file(o.input));
    rep.suites.push_back(SuiteResult::from("graph", e.report()));
    return rep;
  }
  rep.instance_digest = l.digest;
  const auto& g = l.instance.graph;
  rep.suites.push_back(SuiteResult::from("graph", {},
                                         {{"vertices", g.vertex_count()},
                                          {"edges", g.edge_count()},
                                          {"label_metric", g.base_metric() ? "explicit" : "discrete"}}));
  try {
    auto f = assert_forest(g);
    rep.payload["acyclic"] = true;
    rep.payload["components"] = f.component_count();
  } catch (const CycleError& e) {
    rep.payload["acyclic"] = false;
    rep.payload["cycle"] = e.cycle();
  }
  return rep;
}

// -------------------------------------------------------------------- norm

template <class S>
PointedMetricSpace<S> load_norm_space(const CliOptions& o, RunReport& rep) {
  if (!o.space.empty()) {
    auto raw = parse_space(read_file(o.space));
    rep.instance_digest = fnv1a_hex(serialize_space(raw));
    return convert_space<Rational, S>(adjoin_basepoint(raw));
  }
  if (!o.input.empty()) {
    auto l = load_instance(o);
    rep.instance_digest = l.digest;
    return stretch_labeling<S>(l.instance.graph).label_space;
  }
  throw UsageError("norm needs --space or --input");
}

template <class S>
RunReport run_norm(const CliOptions& o, std::ostream& err) {
  using T = scalar_traits<S>;
  RunReport rep;
  if (o.vector.empty()) throw UsageError("norm needs --vector");
  auto s = load_norm_space<S>(o, rep);
  std::size_t dropped = 0;
  auto v = parse_vector<S>(o.vector, s.points(), &dropped);
  if (dropped) err << "warning: dropped " << dropped << " term(s) on the basepoint\n";

  auto r = solve_norm(s, v);
  if (o.inject_fault == "plan" && !r.plan.moves.empty()) r.plan.moves.front().mass *= S(2);
  rep.suites.push_back(SuiteResult::from("certificates", check_certificates(s, v, r, o.tolerance)));

  ValidationReport oracle;
  Json oracle_details;
  try {
    const S brute = norm_bruteforce(s, v);
    oracle_details["value"] = scalar_json(brute);
    if (!T::equal(brute, r.value, o.tolerance))
      oracle.add("oracle_mismatch", v.support_ids(), as_double(S(brute - r.value)));
  } catch (const OracleBudgetError& e) {
    oracle_details["skipped"] = e.what();
  }
  rep.suites.push_back(SuiteResult::from("oracle", oracle, oracle_details));

  if (v.support_size() >= 2) {
    ValidationReport lb;
    const S bound = mass_lower_bound(s, v);
    if (!T::less_equal(bound, r.value, o.tolerance)) lb.add("lower_bound", v.support_ids(), as_double(S(bound - r.value)));
    rep.suites.push_back(SuiteResult::from("lower_bound", lb, {{"bound", scalar_json(bound)}}));
  }

  const auto& ids = s.points()->ids();
  Json plan = Json::array();
  for (const auto& m : r.plan.moves)
    plan.push_back({{"source", ids[m.source]}, {"target", ids[m.target]}, {"mass", scalar_json(m.mass)}});
  Json potential = Json::object();
  for (const auto& [i, value] : r.potential.phi) potential[ids[i]] = scalar_json(value);
  rep.payload = {{"vector", v.to_string()},
                 {"value", scalar_json(r.value)},
                 {"plan", std::move(plan)},
                 {"potential", std::move(potential)},
                 {"gap", scalar_json(r.gap)},
                 {"pivots", r.pivots},
                 {"backend", T::name}};
  if (dropped) rep.payload["dropped_basepoint_terms"] = dropped;
  rep.metrics.duality_gap = as_double(r.gap);
  return rep;
}

// ------------------------------------------------------------------- label

template <class S>
Json label_space_json(const StretchedLabeling<S>& sl) {
  Json matrix = Json::array();
  for (std::size_t i = 0; i < sl.label_space.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < sl.label_space.size(); ++j) row.push_back(scalar_json(sl.label_space.dist(i, j)));
    matrix.push_back(std::move(row));
  }
  return matrix;
}

template <class S>
SuiteResult stretch_suite(const StretchedLabeling<S>& sl, double tol) {
  using T = scalar_traits<S>;
  ValidationReport r;
  const S achieved = verify_stretched(sl);
  const S floor = S(1) / S(4);
  if (!T::less_equal(floor, achieved, tol))
    r.add("stretch", {}, as_double(S(floor - achieved)), "epsilon " + T::to_string(achieved) + " < 1/4");
  if (!T::equal(achieved, sl.epsilon, tol))
    r.add("epsilon_recomputed", {}, as_double(S(achieved - sl.epsilon)), "recomputed " + T::to_string(achieved));
  return SuiteResult::from("stretch", r, {{"epsilon", scalar_json(achieved)}, {"depth", sl.depth()}});
}

template <class S>
RunReport run_label(const CliOptions& o) {
  RunReport rep;
  auto l = load_instance(o);
  rep.instance_digest = l.digest;
  auto sl = stretch_labeling<S>(l.instance.graph);
  rep.suites.push_back(SuiteResult::from("label_metric", validate_space(sl.label_space, o.tolerance)));
  rep.suites.push_back(stretch_suite(sl, o.tolerance));
  rep.payload = {{"labels", sl.label_space.points()->ids()},
                 {"depth", sl.depth()},
                 {"colorings", sl.colorings},
                 {"metric", label_space_json(sl)},
                 {"epsilon", scalar_json(sl.epsilon)},
                 {"backend", scalar_traits<S>::name}};
  rep.metrics.epsilon = as_double(sl.epsilon);
  return rep;
}

// ------------------------------------------------------------------- paths

template <class S>
RunReport run_paths(const CliOptions& o) {
  RunReport rep;
  auto l = load_instance(o);
  rep.instance_digest = l.digest;
  const auto& g = l.instance.graph;
  Forest f;
  try {
    f = assert_forest(g);
  } catch (const CycleError& e) {
    rep.suites.push_back(cycle_suite(e));
    return rep;
  }
  rep.suites.push_back(forest_suite(f));
  if (o.from.empty() != o.to.empty()) throw UsageError("--from and --to go together");
  if (!o.from.empty()) {
    if (!g.has_vertex(o.from) || !g.has_vertex(o.to)) throw UsageError("unknown vertex in --from/--to");
    const auto x = g.vertex_index(o.from), y = g.vertex_index(o.to);
    Json q{{"from", o.from}, {"to", o.to}};
    if (f.connected(x, y)) {
      q["label"] = path_label<S>(f, x, y).vector.to_string();
    } else {
      q["label"] = nullptr;
      q["reason"] = "different components";
    }
    rep.payload["query"] = std::move(q);
  }
  rep.suites.push_back(cocycle_suite<S>(f, o.seed));
  return rep;
}

// ------------------------------------------------------------------ reduce

template <class S>
Json image_json(const LabeledGraph& g, const ReductionPoint<S>& c) {
  Json entries = Json::array();
  for (const auto& [v, h] : c.entries) entries.push_back({{"vertex", g.vertex(v)}, {"label", h.to_string()}});
  return {{"base", g.vertex(c.base)}, {"entries", std::move(entries)}};
}

template <class S>
RunReport run_reduce(const CliOptions& o) {
  RunReport rep;
  auto l = load_instance(o);
  rep.instance_digest = l.digest;
  const auto& g = l.instance.graph;
  Forest f;
  try {
    f = assert_forest(g);
  } catch (const CycleError& e) {
    rep.suites.push_back(cycle_suite(e));
    return rep;
  }
  rep.suites.push_back(forest_suite(f));
  std::vector<std::size_t> roots;
  if (!o.vertex.empty()) {
    if (!g.has_vertex(o.vertex)) throw UsageError("unknown vertex '" + o.vertex + "'");
    roots.push_back(g.vertex_index(o.vertex));
  } else {
    for (std::size_t x = 0; x < g.vertex_count(); ++x) roots.push_back(x);
  }
  ValidationReport shape;
  Json images = Json::array();
  for (std::size_t x : roots) {
    auto c = reduce_point<S>(f, x);
    const auto members = f.component_vertices(x);
    if (c.entries.size() != members.size()) shape.add("image_vertices", {g.vertex(x)});
    for (const auto& [y, h] : c.entries)
      if (!is_path_label(g, h, x, y)) shape.add("image_entry", {g.vertex(x), g.vertex(y)});
    images.push_back(image_json(g, c));
  }
  rep.suites.push_back(SuiteResult::from("image", shape, {{"images", roots.size()}}));
  rep.payload["images"] = std::move(images);
  return rep;
}

// ------------------------------------------------------------------ verify

// Norm test vectors: path-label differences from random roots, plus small
// integer vectors over the labels. All are within reach of the oracle unless
// their support exceeds its budget.
template <class S>
std::vector<FreeVector<S>> verify_vectors(const Forest& f, Rng& rng) {
  const auto& g = f.graph();
  std::vector<FreeVector<S>> out;
  if (g.edge_count() == 0) return out;
  for (std::size_t t = 0; t < kVerifyVectors / 2; ++t) {
    const std::size_t x = rng.below(g.vertex_count());
    const auto members = f.component_vertices(x);
    const std::size_t y = members[rng.below(members.size())];
    const std::size_t z = members[rng.below(members.size())];
    auto from_x = path_labels_from<S>(f, x);
    out.push_back(from_x[z]->vector - from_x[y]->vector);
  }
  while (out.size() < kVerifyVectors) out.push_back(random_vector<S>(rng, g.labels(), 4, 1));
  return out;
}

template <class S>
RunReport run_verify(const CliOptions& o) {
  using T = scalar_traits<S>;
  RunReport rep;
  auto l = load_instance(o);
  rep.instance_digest = l.digest;
  const auto& g = l.instance.graph;
  rep.payload["seed"] = o.seed;
  rep.payload["backend"] = T::name;
  if (!o.inject_fault.empty()) rep.payload["injected_fault"] = o.inject_fault;

  Forest f;
  try {
    f = assert_forest(g);
  } catch (const CycleError& e) {
    rep.suites.push_back(cycle_suite(e));
    return rep;
  }
  rep.suites.push_back(forest_suite(f));

  auto sl = stretch_labeling<S>(g);
  if (o.inject_fault == "label-metric") {
    // Shrink every label distance; stays a metric but loses the stretch.
    auto d = sl.label_space.matrix();
    for (std::size_t i = 1; i < d.size(); ++i)
      for (std::size_t j = 1; j < d.size(); ++j) d[i][j] /= S(64);
    sl.label_space = PointedMetricSpace<S>(g.labels(), std::move(d));
  }
  rep.suites.push_back(SuiteResult::from("label_metric", validate_space(sl.label_space, o.tolerance)));
  rep.suites.push_back(stretch_suite(sl, o.tolerance));
  rep.metrics.epsilon = as_double(sl.epsilon);

  // Norm suites on sampled vectors.
  Rng rng(o.seed);
  const auto vectors = verify_vectors<S>(f, rng);
  ValidationReport duality, oracle, lower;
  std::size_t oracle_checked = 0, lower_checked = 0;
  double max_gap = 0;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const auto& v = vectors[k];
    auto r = solve_norm(sl.label_space, v);
    if (o.inject_fault == "plan" && k == 0 && !r.plan.moves.empty()) r.plan.moves.front().mass *= S(2);
    for (auto& viol : check_certificates(sl.label_space, v, r, o.tolerance).violations) {
      viol.detail = "vector " + v.to_string() + (viol.detail.empty() ? "" : "; " + viol.detail);
      duality.violations.push_back(std::move(viol));
    }
    max_gap = std::max(max_gap, std::fabs(as_double(r.gap)));
    try {
      const S brute = norm_bruteforce(sl.label_space, v);
      ++oracle_checked;
      if (!T::equal(brute, r.value, o.tolerance))
        oracle.add("oracle_mismatch", v.support_ids(), as_double(S(brute - r.value)), "vector " + v.to_string());
    } catch (const OracleBudgetError&) {
    }
    if (v.support_size() >= 2) {
      ++lower_checked;
      const S bound = mass_lower_bound(sl.label_space, v);
      if (!T::less_equal(bound, r.value, o.tolerance))
        lower.add("lower_bound", v.support_ids(), as_double(S(bound - r.value)), "vector " + v.to_string());
    }
  }
  rep.suites.push_back(SuiteResult::from("duality", duality, {{"vectors", vectors.size()}}));
  rep.suites.push_back(SuiteResult::from("oracle", oracle, {{"vectors", oracle_checked}}));
  rep.suites.push_back(SuiteResult::from("lower_bound", lower, {{"vectors", lower_checked}}));
  rep.metrics.duality_gap = max_gap;

  // Separation at every root.
  {
    ValidationReport r;
    NormCache<S> cache;
    const S floor = sl.epsilon / S(2);
    std::optional<S> least;
    for (std::size_t x = 0; x < g.vertex_count(); ++x) {
      auto sep = separation(f, sl, x, &cache);
      if (!sep) continue;
      if (!least || *sep < *least) least = sep;
      if (!T::less_equal(floor, *sep, o.tolerance) && r.violations.size() < 50)
        r.add("separation", {g.vertex(x)}, as_double(S(floor - *sep)), "separation " + T::to_string(*sep));
    }
    Json details{{"floor", scalar_json(floor)}};
    if (least) {
      details["minimum"] = scalar_json(*least);
      rep.metrics.separation = as_double(*least);
    }
    rep.suites.push_back(SuiteResult::from("separation", r, std::move(details)));
  }

  // Reduction: homomorphism and x ~ y iff f(x), f(y) orbit equivalent.
  {
    auto images = reduce_all<S>(f);
    if (o.inject_fault == "image") {
      bool done = false;
      for (auto& img : images) {
        for (auto& [y, h] : img.entries)
          if (!h.is_zero()) {
            h.add_to(h.coefficients().front().first, S(1));
            done = true;
            break;
          }
        if (done) break;
      }
      if (!done) throw UsageError("fault 'image' needs at least one edge");
    }
    ReductionCheckOptions opts;
    opts.check_separation = false;
    const std::size_t n = g.vertex_count();
    rep.suites.push_back(SuiteResult::from("reduction", verify_reduction(f, sl, images, opts), {{"pairs", n * n}}));
  }

  rep.suites.push_back(cocycle_suite<S>(f, o.seed));
  return rep;
}

// --------------------------------------------------------------------- gen

inline int run_gen(const CliOptions& o, std::ostream& out) {
  Instance inst;
  inst.graph = random_forest(o.size, o.max_degree, o.seed);
  inst.seed = o.seed;
  inst.generator = {{"kind", "random_forest"}, {"size", o.size}, {"max_degree", o.max_degree}};
  const std::string text = serialize_instance(inst);
  if (o.output.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("cannot write '" + o.output + "'");
  RunReport rep;
  rep.command = "gen";
  rep.instance_digest = fnv1a_hex(text);
  rep.payload = {{"output", o.output}, {"vertices", inst.graph.vertex_count()}, {"edges", inst.graph.edge_count()}};
  out << (o.format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text());
  return 0;
}

inline RunReport dispatch(const CliOptions& o, std::ostream& err) {
  const std::vector<std::string> faults{"", "image", "label-metric", "plan"};
  if (std::find(faults.begin(), faults.end(), o.inject_fault) == faults.end())
    throw UsageError("unknown fault '" + o.inject_fault + "' (image, label-metric, plan)");
  auto typed = [&]<class S>() -> RunReport {
    if (o.command == "norm") return run_norm<S>(o, err);
    if (o.command == "label") return run_label<S>(o);
    if (o.command == "paths") return run_paths<S>(o);
    if (o.command == "reduce") return run_reduce<S>(o);
    return run_verify<S>(o);
  };
  if (o.command == "validate") return run_validate(o);
  return o.exact ? typed.template operator()<Rational>() : typed.template operator()<double>();
}

}  // namespace cli

inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliOptions o;
  CLI::App app{"Free-norm reduction toolkit: norms, stretched labelings, path labels and reductions.", "fbr_cli"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--tolerance", o.tolerance, "Absolute tolerance for float checks")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "Seed for sampled checks (FBR_SEED overrides)");
  };
  auto input = [&](CLI::App* sub) { return sub->add_option("--input", o.input, "Instance JSON file"); };
  auto exact = [&](CLI::App* sub) { sub->add_flag("--exact", o.exact, "Use exact rational arithmetic"); };

  auto* validate = app.add_subcommand("validate", "Check graph, label-metric or metric-space axioms");
  common(validate);
  input(validate);
  validate->add_option("--space", o.space, "Metric space JSON file");

  auto* norm = app.add_subcommand("norm", "Free norm of a vector with transport and potential certificates");
  common(norm);
  exact(norm);
  input(norm);
  norm->add_option("--space", o.space, "Metric space JSON file (takes precedence over --input)");
  norm->add_option("--vector", o.vector, "Vector text, e.g. \"1*a-1*b\"")->required();
  norm->add_option("--inject-fault", o.inject_fault, "Corrupt a certificate: plan");

  auto* label = app.add_subcommand("label", "Build the stretched labeling and report epsilon");
  common(label);
  exact(label);
  input(label)->required();

  auto* paths = app.add_subcommand("paths", "Path-label queries and cocycle checks");
  common(paths);
  exact(paths);
  input(paths)->required();
  paths->add_option("--from", o.from, "Start vertex");
  paths->add_option("--to", o.to, "End vertex");

  auto* reduce = app.add_subcommand("reduce", "Emit reduction images f(x)");
  common(reduce);
  exact(reduce);
  input(reduce)->required();
  reduce->add_option("--vertex", o.vertex, "Only this vertex");

  auto* verify = app.add_subcommand("verify", "Run every check suite on a forest instance");
  common(verify);
  exact(verify);
  input(verify)->required();
  verify->add_option("--inject-fault", o.inject_fault, "Corrupt one stage: image, label-metric, plan");

  auto* gen = app.add_subcommand("gen", "Write a seeded random forest instance");
  common(gen);
  gen->add_option("--size", o.size, "Vertex count");
  gen->add_option("--max-degree", o.max_degree, "Maximum vertex degree");
  gen->add_option("--output", o.output, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  for (auto* sub : app.get_subcommands()) o.command = sub->get_name();

  if (const char* env = std::getenv("FBR_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      o.seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      err << "error: FBR_SEED must be an unsigned integer\n";
      return 2;
    }
  }

  try {
    if (o.command == "gen") return cli::run_gen(o, out);
    const auto start = std::chrono::steady_clock::now();
    RunReport rep;
    try {
      rep = cli::dispatch(o, err);
    } catch (const ValidationError& e) {
      // Semantic input errors are check failures; digest the raw bytes.
      const std::string& path = o.space.empty() ? o.input : o.space;
      if (!path.empty()) rep.instance_digest = fnv1a_hex(cli::read_file(path));
      rep.suites.push_back(SuiteResult::from("input", e.report()));
    }
    rep.command = o.command;
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << (o.format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text());
    return rep.ok() ? 0 : 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const VectorParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace fbr

#endif  // FBR_CLI_HPP
