#ifndef FBR_REPORT_HPP
#define FBR_REPORT_HPP

// Run reports emitted by the command-line driver.

#include "fbr/instance.hpp"
#include "fbr/validation.hpp"

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace fbr {

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct SuiteResult {
  std::string name;
  bool ok = true;
  std::vector<Violation> witnesses;
  /// Suite-specific counters (items checked, seeds).
  Json details = Json::object();

  static SuiteResult from(std::string name, const ValidationReport& r, Json details = Json::object()) {
    return {std::move(name), r.ok(), r.violations, std::move(details)};
  }
};

struct RunMetrics {
  std::optional<double> epsilon;
  std::optional<double> separation;
  std::optional<double> duality_gap;
};

struct RunReport {
  std::string command;
  std::string instance_digest;
  std::vector<SuiteResult> suites;
  RunMetrics metrics;
  double elapsed_ms = 0;
  /// Command output (norm values, labels, images).
  Json payload = Json::object();

  bool ok() const {
    for (const auto& s : suites)
      if (!s.ok) return false;
    return true;
  }

  Json to_json() const {
    auto opt = [](const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); };
    Json suites_json = Json::array();
    for (const auto& s : suites) {
      Json w = Json::array();
      for (const auto& v : s.witnesses)
        w.push_back({{"axiom", v.axiom}, {"witness", v.witness}, {"magnitude", v.magnitude}, {"detail", v.detail}});
      suites_json.push_back({{"name", s.name}, {"ok", s.ok}, {"witnesses", std::move(w)}, {"details", s.details}});
    }
    return {{"command", command},
            {"instance_digest", instance_digest},
            {"ok", ok()},
            {"suites", std::move(suites_json)},
            {"metrics",
             {{"epsilon", opt(metrics.epsilon)},
              {"separation", opt(metrics.separation)},
              {"duality_gap", opt(metrics.duality_gap)}}},
            {"elapsed_ms", elapsed_ms},
            {"payload", payload}};
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    if (!instance_digest.empty()) out << "instance: " << instance_digest << "\n";
    for (const auto& [key, value] : payload.items()) out << key << ": " << render(value) << "\n";
    for (const auto& s : suites) {
      out << (s.ok ? "ok    " : "FAIL  ") << s.name;
      if (!s.details.empty()) out << "  " << s.details.dump();
      out << "\n";
      for (const auto& v : s.witnesses) {
        out << "      " << v.axiom << " [";
        for (std::size_t i = 0; i < v.witness.size(); ++i) out << (i ? ", " : "") << v.witness[i];
        out << "]";
        if (v.magnitude != 0) out << " magnitude " << v.magnitude;
        if (!v.detail.empty()) out << " " << v.detail;
        out << "\n";
      }
    }
    auto metric = [&](const char* name, const std::optional<double>& x) {
      if (x) out << name << ": " << *x << "\n";
    };
    metric("epsilon", metrics.epsilon);
    metric("separation", metrics.separation);
    metric("duality_gap", metrics.duality_gap);
    out << "elapsed_ms: " << elapsed_ms << "\n";
    out << (ok() ? "PASS" : "FAIL") << "\n";
    return out.str();
  }

 private:
  static std::string render(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }
};

}  // namespace fbr

#endif  // FBR_REPORT_HPP
