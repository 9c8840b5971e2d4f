#ifndef FBR_FREE_VECTOR_HPP
#define FBR_FREE_VECTOR_HPP

// Finitely supported signed combinations of points, modulo the basepoint.

#include "fbr/metric.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace fbr {

/// Sparse vector over the non-basepoint points of a PointSet. Zero
/// coefficients are never stored, and the basepoint never carries one.
/// Terms are kept sorted by point index.
template <class S>
class FreeVector {
 public:
  using Coefficients = std::vector<std::pair<std::size_t, S>>;

  FreeVector() : points_(PointSet::make({})) {}
  explicit FreeVector(PointSetPtr points) : points_(std::move(points)) {
    if (!points_) throw StructuralError("null point set");
  }

  /// Single point with coefficient c.
  static FreeVector unit(PointSetPtr points, std::size_t index, S c = S(1)) {
    FreeVector v(std::move(points));
    v.set(index, std::move(c));
    return v;
  }

  /// Builds a vector from (identifier, coefficient) terms. Repeated
  /// identifiers accumulate. Terms on the basepoint are dropped and their
  /// count is written to dropped_basepoint when non-null.
  static FreeVector from_terms(PointSetPtr points, const std::vector<std::pair<std::string, S>>& terms,
                               std::size_t* dropped_basepoint = nullptr) {
    FreeVector v(std::move(points));
    std::size_t dropped = 0;
    for (const auto& [id, c] : terms) {
      std::size_t i = v.points_->index(id);
      if (i == 0) {
        ++dropped;
        continue;
      }
      v.add_to(i, c);
    }
    if (dropped_basepoint) *dropped_basepoint = dropped;
    return v;
  }

  const PointSetPtr& points() const { return points_; }
  const Coefficients& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }

  S coefficient(std::size_t index) const {
    auto it = locate(index);
    return it == coeffs_.end() || it->first != index ? S(0) : it->second;
  }

  /// Point indices with nonzero coefficient, ascending.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    out.reserve(coeffs_.size());
    for (const auto& [i, c] : coeffs_) out.push_back(i);
    return out;
  }

  std::vector<std::string> support_ids() const {
    std::vector<std::string> out;
    for (const auto& [i, c] : coeffs_) out.push_back(points_->id(i));
    return out;
  }

  void set(std::size_t index, S c) {
    check_index(index);
    if (index == 0) return;
    auto it = locate(index);
    const bool present = it != coeffs_.end() && it->first == index;
    if (scalar_traits<S>::is_zero(c)) {
      if (present) coeffs_.erase(it);
    } else if (present) {
      it->second = std::move(c);
    } else {
      coeffs_.emplace(it, index, std::move(c));
    }
  }

  void add_to(std::size_t index, const S& c) {
    check_index(index);
    if (index == 0) return;
    auto it = locate(index);
    if (it == coeffs_.end() || it->first != index) {
      if (!scalar_traits<S>::is_zero(c)) coeffs_.emplace(it, index, c);
      return;
    }
    it->second += c;
    if (scalar_traits<S>::is_zero(it->second)) coeffs_.erase(it);
  }

  /// Sum of absolute coefficients.
  S l1() const {
    S total(0);
    for (const auto& [i, c] : coeffs_) total += scalar_traits<S>::abs(c);
    return total;
  }

  FreeVector& operator+=(const FreeVector& other) {
    merge(other, false);
    return *this;
  }

  FreeVector& operator-=(const FreeVector& other) {
    merge(other, true);
    return *this;
  }

  FreeVector& operator*=(const S& c) {
    if (scalar_traits<S>::is_zero(c)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& term : coeffs_) term.second *= c;
    std::erase_if(coeffs_, [](const auto& term) { return scalar_traits<S>::is_zero(term.second); });
    return *this;
  }

  friend FreeVector operator+(FreeVector u, const FreeVector& v) { return u += v; }
  friend FreeVector operator-(FreeVector u, const FreeVector& v) { return u -= v; }
  friend FreeVector operator*(const S& c, FreeVector v) { return v *= c; }
  friend FreeVector operator-(FreeVector v) { return v *= S(-1); }

  /// Formal coefficient-wise equality over the same point set.
  friend bool operator==(const FreeVector& u, const FreeVector& v) {
    return same_points(u.points_, v.points_) && u.coeffs_ == v.coeffs_;
  }

  /// Coefficient-wise comparison within tol (exact for rationals).
  bool approx_equal(const FreeVector& other, double tol = kDefaultTolerance) const {
    require_same(other);
    auto diff = *this - other;
    for (const auto& [i, c] : diff.coeffs_)
      if (!scalar_traits<S>::equal(c, S(0), tol)) return false;
    return true;
  }

  /// "1*a-1*b" style rendering; "0" for the zero vector.
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [i, c] : coeffs_) {
      std::string num = scalar_traits<S>::to_string(c);
      if (!out.empty() && num.front() != '-') out += '+';
      out += num + "*" + points_->id(i);
    }
    return out;
  }

  void require_same(const FreeVector& other) const {
    if (!same_points(points_, other.points_))
      throw StructuralError("free vectors live over different point sets");
  }

 private:
  typename Coefficients::iterator locate(std::size_t index) {
    return std::lower_bound(coeffs_.begin(), coeffs_.end(), index,
                            [](const auto& term, std::size_t i) { return term.first < i; });
  }
  typename Coefficients::const_iterator locate(std::size_t index) const {
    return std::lower_bound(coeffs_.begin(), coeffs_.end(), index,
                            [](const auto& term, std::size_t i) { return term.first < i; });
  }

  void merge(const FreeVector& other, bool negate) {
    require_same(other);
    if (other.coeffs_.empty()) return;
    Coefficients out;
    out.reserve(coeffs_.size() + other.coeffs_.size());
    auto a = coeffs_.begin();
    auto b = other.coeffs_.begin();
    while (a != coeffs_.end() || b != other.coeffs_.end()) {
      if (b == other.coeffs_.end() || (a != coeffs_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == coeffs_.end() || b->first < a->first) {
        out.emplace_back(b->first, negate ? S(-b->second) : b->second);
        ++b;
      } else {
        S sum = negate ? S(a->second - b->second) : S(a->second + b->second);
        if (!scalar_traits<S>::is_zero(sum)) out.emplace_back(a->first, std::move(sum));
        ++a;
        ++b;
      }
    }
    coeffs_ = std::move(out);
  }

  void check_index(std::size_t index) const {
    if (index >= points_->size()) throw StructuralError("point index out of range");
  }

  PointSetPtr points_;
  Coefficients coeffs_;
};

template <class S>
FreeVector<S> vec_add(const FreeVector<S>& u, const FreeVector<S>& v) { return u + v; }
template <class S>
FreeVector<S> vec_scale(const S& c, const FreeVector<S>& v) { return c * v; }
template <class S>
FreeVector<S> vec_neg(const FreeVector<S>& v) { return -v; }
template <class S>
std::vector<std::size_t> vec_support(const FreeVector<S>& v) { return v.support(); }

}  // namespace fbr

#endif  // FBR_FREE_VECTOR_HPP
