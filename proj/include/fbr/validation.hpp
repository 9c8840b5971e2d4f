#ifndef FBR_VALIDATION_HPP
#define FBR_VALIDATION_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fbr {

/// One failed axiom or check, with the points that witness it.
struct Violation {
  std::string axiom;
  std::vector<std::string> witness;
  double magnitude = 0.0;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  void add(std::string axiom, std::vector<std::string> witness, double magnitude = 0.0,
           std::string detail = {}) {
    violations.push_back({std::move(axiom), std::move(witness), magnitude, std::move(detail)});
  }

  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }

  std::string summary() const {
    if (ok()) return "ok";
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += v.axiom + "(";
      for (std::size_t i = 0; i < v.witness.size(); ++i) {
        if (i) out += ",";
        out += v.witness[i];
      }
      out += ")";
      if (!v.detail.empty()) out += " " + v.detail;
    }
    return out;
  }
};

/// Malformed input: wrong shapes, unknown identifiers, mixed ambient spaces.
/// Distinct from an axiom violation, which is reported in a ValidationReport.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input failed semantic validation; carries the full report.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report)
      : std::runtime_error("validation failed: " + report.summary()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace fbr

#endif  // FBR_VALIDATION_HPP
