#ifndef FBR_INSTANCE_HPP
#define FBR_INSTANCE_HPP

// JSON instance files.
//
//   {"vertices": ["a", "b"],
//    "edges": [{"tail": "a", "head": "b", "label": "e"}],
//    "label_metric": {"type": "explicit", "labels": ["e"], "matrix": [[0]]},
//    "seed": 7, "generator": {...}}
//
// label_metric is optional and defaults to {"type": "discrete"}. Matrix
// entries are JSON numbers or strings "p/q". Numbers are read through their
// shortest decimal form, so 0.3 means 3/10 exactly. On output an entry is
// written as a number when that number reads back to the same rational, and
// as "p/q" otherwise.

#include "fbr/graph.hpp"
#include "fbr/metric.hpp"
#include "fbr/scalar.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fbr {

using Json = nlohmann::json;

/// Syntax or schema error. location() is a byte offset description for
/// syntax errors and a JSON pointer for schema errors.
class InstanceError : public std::runtime_error {
 public:
  InstanceError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

struct Instance {
  LabeledGraph graph;
  std::optional<std::uint64_t> seed;
  /// Generator parameters, null when absent.
  Json generator;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.graph == b.graph && a.seed == b.seed && a.generator == b.generator;
  }
};

namespace detail {

inline Json parse_json(std::string_view bytes) {
  try {
    return Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::parse_error& e) {
    throw InstanceError("byte " + std::to_string(e.byte), e.what());
  }
}

inline const Json& require_key(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InstanceError(path, "missing key '" + key + "'");
  return *it;
}

inline void require_type(bool ok, const std::string& path, const char* expected) {
  if (!ok) throw InstanceError(path, std::string("expected ") + expected);
}

inline void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw InstanceError(path + "/" + key, "unknown key");
}

inline std::string require_string(const Json& j, const std::string& path) {
  require_type(j.is_string(), path, "string");
  return j.get<std::string>();
}

inline Rational json_to_rational(const Json& j, const std::string& path) {
  using T = scalar_traits<Rational>;
  if (j.is_number_unsigned()) return T::parse(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return T::from_double(j.get<double>());
  if (j.is_string()) {
    try {
      return T::parse(j.get<std::string>());
    } catch (const ScalarParseError& e) {
      throw InstanceError(path, e.what());
    }
  }
  throw InstanceError(path, "expected number or \"p/q\" string");
}

inline Json rational_to_json(const Rational& r) {
  using T = scalar_traits<Rational>;
  constexpr long long limit = 1LL << 53;
  if (T::is_integer(r) && numerator(r) < limit && numerator(r) > -limit) return T::to_integer(r);
  const double x = T::to_double(r);
  if (T::from_double(x) == r) return x;
  return T::to_string(r);
}

inline std::vector<std::string> string_array(const Json& j, const std::string& path) {
  require_type(j.is_array(), path, "array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(require_string(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline DistMatrix<Rational> matrix_from_json(const Json& j, const std::string& path) {
  require_type(j.is_array(), path, "array of rows");
  DistMatrix<Rational> m;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string row_path = path + "/" + std::to_string(i);
    require_type(j[i].is_array(), row_path, "array");
    auto& row = m.emplace_back();
    for (std::size_t k = 0; k < j[i].size(); ++k)
      row.push_back(json_to_rational(j[i][k], row_path + "/" + std::to_string(k)));
  }
  return m;
}

inline Json matrix_to_json(const DistMatrix<Rational>& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(rational_to_json(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace detail

/// Parses and validates an instance. Throws InstanceError on malformed JSON
/// or schema violations and ValidationError on semantic ones (duplicate
/// labels, unknown vertices, non-metric label matrices).
inline Instance parse_instance(std::string_view bytes) {
  using namespace detail;
  const Json root = parse_json(bytes);
  require_type(root.is_object(), "", "object at top level");
  reject_unknown_keys(root, {"vertices", "edges", "label_metric", "seed", "generator"}, "");

  Instance inst;
  auto vertices = string_array(require_key(root, "vertices", ""), "/vertices");

  const Json& edges_json = require_key(root, "edges", "");
  require_type(edges_json.is_array(), "/edges", "array");
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < edges_json.size(); ++i) {
    const std::string path = "/edges/" + std::to_string(i);
    const Json& e = edges_json[i];
    require_type(e.is_object(), path, "object");
    reject_unknown_keys(e, {"tail", "head", "label"}, path);
    edges.push_back({require_string(require_key(e, "tail", path), path + "/tail"),
                     require_string(require_key(e, "head", path), path + "/head"),
                     require_string(require_key(e, "label", path), path + "/label")});
  }

  std::optional<RawMetric<Rational>> metric;
  if (auto it = root.find("label_metric"); it != root.end()) {
    const std::string path = "/label_metric";
    require_type(it->is_object(), path, "object");
    const std::string type = require_string(require_key(*it, "type", path), path + "/type");
    if (type == "discrete") {
      reject_unknown_keys(*it, {"type"}, path);
    } else if (type == "explicit") {
      reject_unknown_keys(*it, {"type", "labels", "matrix"}, path);
      metric = RawMetric<Rational>{string_array(require_key(*it, "labels", path), path + "/labels"),
                                   matrix_from_json(require_key(*it, "matrix", path), path + "/matrix")};
    } else {
      throw InstanceError(path + "/type", "expected \"discrete\" or \"explicit\"");
    }
  }

  if (auto it = root.find("seed"); it != root.end()) {
    require_type(it->is_number_unsigned() || (it->is_number_integer() && it->get<long long>() >= 0), "/seed",
                 "unsigned integer");
    inst.seed = it->get<std::uint64_t>();
  }
  if (auto it = root.find("generator"); it != root.end()) inst.generator = *it;

  inst.graph = LabeledGraph::make(std::move(vertices), std::move(edges), std::move(metric));
  return inst;
}

inline Json instance_to_json(const Instance& inst) {
  const auto& g = inst.graph;
  Json root;
  root["vertices"] = g.vertices();
  Json edges = Json::array();
  for (const auto& e : g.edge_specs()) edges.push_back({{"tail", e.tail}, {"head", e.head}, {"label", e.label}});
  root["edges"] = std::move(edges);
  if (g.base_metric())
    root["label_metric"] = {{"type", "explicit"},
                            {"labels", g.base_metric()->ids},
                            {"matrix", detail::matrix_to_json(g.base_metric()->dist)}};
  else
    root["label_metric"] = {{"type", "discrete"}};
  if (inst.seed) root["seed"] = *inst.seed;
  if (!inst.generator.is_null()) root["generator"] = inst.generator;
  return root;
}

/// Canonical text: keys sorted, two-space indent, trailing newline.
inline std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

/// Metric space files: {"points": [...], "matrix": [[...]]} with the same
/// scalar encoding as label metrics.
inline RawMetric<Rational> parse_space(std::string_view bytes) {
  using namespace detail;
  const Json root = parse_json(bytes);
  require_type(root.is_object(), "", "object at top level");
  reject_unknown_keys(root, {"points", "matrix"}, "");
  return {string_array(require_key(root, "points", ""), "/points"),
          matrix_from_json(require_key(root, "matrix", ""), "/matrix")};
}

inline std::string serialize_space(const RawMetric<Rational>& m) {
  Json root{{"points", m.ids}, {"matrix", detail::matrix_to_json(m.dist)}};
  return root.dump(2) + "\n";
}

}  // namespace fbr

#endif  // FBR_INSTANCE_HPP
