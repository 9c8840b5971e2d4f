#ifndef FBR_METRIC_HPP
#define FBR_METRIC_HPP

// Finite pointed metric spaces (X with a basepoint * at distance 1 from every
// point, all distances at most 1) and their validation.

#include "fbr/scalar.hpp"
#include "fbr/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <vector>

namespace fbr {

inline constexpr std::string_view kBasepoint = "*";

/// Immutable ordered set of point identifiers. Index 0 is always the basepoint;
/// the remaining points keep their input order.
class PointSet {
 public:
  static std::shared_ptr<const PointSet> make(std::vector<std::string> ids) {
    auto ps = std::shared_ptr<PointSet>(new PointSet);
    ps->ids_.reserve(ids.size() + 1);
    ps->ids_.emplace_back(kBasepoint);
    ps->index_.emplace(std::string(kBasepoint), 0);
    for (auto& id : ids) {
      if (id.empty()) throw StructuralError("empty point identifier");
      if (!ps->index_.emplace(id, ps->ids_.size()).second)
        throw StructuralError("duplicate point identifier '" + id + "'");
      ps->ids_.push_back(std::move(id));
    }
    return ps;
  }

  /// Number of points including the basepoint.
  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const { return ids_; }

  std::optional<std::size_t> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw StructuralError("unknown point '" + std::string(id) + "'");
  }

 private:
  PointSet() = default;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

using PointSetPtr = std::shared_ptr<const PointSet>;

inline bool same_points(const PointSetPtr& a, const PointSetPtr& b) {
  return a == b || (a && b && a->ids() == b->ids());
}

template <class S>
using DistMatrix = std::vector<std::vector<S>>;

/// A metric on named points without a basepoint, e.g. a label metric d'.
template <class S>
struct RawMetric {
  std::vector<std::string> ids;
  DistMatrix<S> dist;
};

template <class S>
class PointedMetricSpace {
 public:
  PointedMetricSpace() : points_(PointSet::make({})), dist_(1, std::vector<S>(1, S(0))) {}

  /// No axiom checks here; run validate_space for those. Shapes are checked.
  PointedMetricSpace(PointSetPtr points, DistMatrix<S> dist)
      : points_(std::move(points)), dist_(std::move(dist)) {
    if (!points_) throw StructuralError("null point set");
    if (dist_.size() != points_->size())
      throw StructuralError("distance matrix has " + std::to_string(dist_.size()) + " rows for " +
                            std::to_string(points_->size()) + " points");
    for (const auto& row : dist_)
      if (row.size() != points_->size()) throw StructuralError("distance matrix is not square");
  }

  const PointSetPtr& points() const { return points_; }
  std::size_t size() const { return points_->size(); }
  const S& dist(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  const S& dist(std::string_view a, std::string_view b) const {
    return dist_[points_->index(a)][points_->index(b)];
  }
  const DistMatrix<S>& matrix() const { return dist_; }

 private:
  PointSetPtr points_;
  DistMatrix<S> dist_;
};

namespace detail {

template <class S>
void check_metric_axioms(std::span<const std::string> ids, const DistMatrix<S>& d, double tol,
                         ValidationReport& report) {
  using T = scalar_traits<S>;
  const std::size_t n = ids.size();
  if (d.size() != n) throw StructuralError("distance matrix row count does not match point count");
  for (const auto& row : d)
    if (row.size() != n) throw StructuralError("distance matrix is not square");

  for (std::size_t p = 0; p < n; ++p) {
    if (!T::is_zero(d[p][p]))
      report.add("zero_diagonal", {ids[p]}, T::to_double(T::abs(d[p][p])));
    for (std::size_t q = p + 1; q < n; ++q) {
      if (!T::equal(d[p][q], d[q][p], tol))
        report.add("symmetry", {ids[p], ids[q]}, T::to_double(T::abs(S(d[p][q] - d[q][p]))));
      if (!T::is_positive(d[p][q]) || !T::is_positive(d[q][p]))
        report.add("positivity", {ids[p], ids[q]}, T::to_double(std::min(d[p][q], d[q][p])));
    }
  }
  // Witness (p, q, r) means d(p, r) > d(p, q) + d(q, r); mirrored triples are
  // reported once (p < r).
  //
  // For exact scalars a triple whose double-precision slack exceeds the
  // rounding error bound is accepted without exact arithmetic; every other
  // triple goes through the exact comparison.
  std::vector<std::vector<double>> approx;
  if constexpr (T::exact) {
    approx.assign(n, std::vector<double>(n));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) approx[p][q] = T::to_double(d[p][q]);
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t r = p + 1; r < n; ++r)
      for (std::size_t q = 0; q < n; ++q) {
        if (q == p || q == r) continue;
        if constexpr (T::exact) {
          const double a = approx[p][q], b = approx[q][r], c = approx[p][r];
          if (a + b - c > 1e-12 * (std::fabs(a) + std::fabs(b) + std::fabs(c))) continue;
        }
        S detour = d[p][q] + d[q][r];
        if (!T::less_equal(d[p][r], detour, tol))
          report.add("triangle", {ids[p], ids[q], ids[r]}, T::to_double(S(d[p][r] - detour)));
      }
}

}  // namespace detail

/// Checks a basepoint-free metric: zero diagonal, positivity, symmetry and
/// the triangle inequality.
template <class S>
ValidationReport validate_metric(const RawMetric<S>& raw, double tol = kDefaultTolerance) {
  ValidationReport report;
  detail::check_metric_axioms<S>(raw.ids, raw.dist, tol, report);
  return report;
}

/// Checks every pointed-space axiom and reports each violation with a witness.
/// Shape mismatches throw StructuralError instead.
template <class S>
ValidationReport validate_space(const PointedMetricSpace<S>& s, double tol = kDefaultTolerance) {
  using T = scalar_traits<S>;
  ValidationReport report;
  const auto& ids = s.points()->ids();
  detail::check_metric_axioms<S>(ids, s.matrix(), tol, report);
  for (std::size_t p = 1; p < s.size(); ++p)
    if (!T::equal(s.dist(p, 0), S(1), tol))
      report.add("basepoint_distance", {ids[p], ids[0]},
                 T::to_double(T::abs(S(s.dist(p, 0) - S(1)))));
  for (std::size_t p = 0; p < s.size(); ++p)
    for (std::size_t q = p + 1; q < s.size(); ++q)
      if (!T::less_equal(s.dist(p, q), S(1), tol))
        report.add("bound", {ids[p], ids[q]}, T::to_double(S(s.dist(p, q) - S(1))));
  return report;
}

/// Entry-wise t -> t / (t + 1). The result is a metric bounded by 1 with the
/// same ordering of distances.
template <class S>
RawMetric<S> normalize_metric(const RawMetric<S>& raw, double tol = kDefaultTolerance) {
  if (auto report = validate_metric(raw, tol); !report.ok()) throw ValidationError(report);
  RawMetric<S> out{raw.ids, raw.dist};
  for (auto& row : out.dist)
    for (auto& t : row) t = t / (t + S(1));
  return out;
}

/// Adds the basepoint at distance 1 from every point.
template <class S>
PointedMetricSpace<S> adjoin_basepoint(const RawMetric<S>& raw, double tol = kDefaultTolerance) {
  using T = scalar_traits<S>;
  auto report = validate_metric(raw, tol);
  for (std::size_t p = 0; p < raw.ids.size(); ++p)
    for (std::size_t q = p + 1; q < raw.ids.size(); ++q)
      if (!T::less_equal(raw.dist[p][q], S(1), tol))
        report.add("bound", {raw.ids[p], raw.ids[q]}, T::to_double(S(raw.dist[p][q] - S(1))));
  if (!report.ok()) throw ValidationError(report);

  auto points = PointSet::make(raw.ids);
  const std::size_t n = points->size();
  DistMatrix<S> d(n, std::vector<S>(n, S(0)));
  for (std::size_t i = 1; i < n; ++i) {
    d[i][0] = d[0][i] = S(1);
    for (std::size_t j = 1; j < n; ++j) d[i][j] = raw.dist[i - 1][j - 1];
  }
  return PointedMetricSpace<S>(std::move(points), std::move(d));
}

/// Same as adjoin_basepoint but reuses an existing point set whose
/// non-basepoint ids match raw.ids in order.
template <class S>
PointedMetricSpace<S> adjoin_basepoint(const RawMetric<S>& raw, PointSetPtr points,
                                       double tol = kDefaultTolerance) {
  auto space = adjoin_basepoint(raw, tol);
  if (!points || points->size() != space.size() ||
      !std::equal(raw.ids.begin(), raw.ids.end(), points->ids().begin() + 1))
    throw StructuralError("point set does not match metric labels");
  return PointedMetricSpace<S>(std::move(points), space.matrix());
}

template <class S, class T>
PointedMetricSpace<T> convert_space(const PointedMetricSpace<S>& s) {
  DistMatrix<T> d(s.size(), std::vector<T>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if constexpr (std::is_same_v<S, T>)
        d[i][j] = s.dist(i, j);
      else
        d[i][j] = scalar_traits<T>::from_double(scalar_traits<S>::to_double(s.dist(i, j)));
    }
  return PointedMetricSpace<T>(s.points(), std::move(d));
}

}  // namespace fbr

#endif  // FBR_METRIC_HPP
