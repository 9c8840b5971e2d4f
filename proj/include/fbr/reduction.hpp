#ifndef FBR_REDUCTION_HPP
#define FBR_REDUCTION_HPP

// The map x -> f(x) = {(p(x, y), y) : y in the component of x} and the
// translation action g . C = {(g + h, y) : (h, y) in C}. On a forest, x and
// y are connected iff f(x) and f(y) differ by a translation, and then the
// translation is p(y, x).

#include "fbr/path_labels.hpp"
#include "fbr/stretched.hpp"
#include "fbr/validation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fbr {

template <class S>
struct ReductionPoint {
  /// vertex -> path label vector; one entry per vertex of the component.
  std::map<std::size_t, FreeVector<S>> entries;
  /// Vertex the point was computed from. Not part of equality.
  std::size_t base = 0;

  friend bool operator==(const ReductionPoint& a, const ReductionPoint& b) { return a.entries == b.entries; }
};

template <class S>
struct OrbitWitness {
  bool equivalent = false;
  std::optional<FreeVector<S>> translator;
};

template <class S>
ReductionPoint<S> reduce_point(const Forest& f, std::size_t x) {
  ReductionPoint<S> point;
  point.base = x;
  auto labels = path_labels_from<S>(f, x);
  for (std::size_t y = 0; y < labels.size(); ++y)
    if (labels[y]) point.entries.emplace(y, std::move(labels[y]->vector));
  return point;
}

template <class S>
ReductionPoint<S> translate(const FreeVector<S>& g, const ReductionPoint<S>& c) {
  ReductionPoint<S> out;
  out.base = c.base;
  for (const auto& [v, h] : c.entries) out.entries.emplace(v, g + h);
  return out;
}

namespace detail {

// g + h1 == h2 coefficient-wise, without materializing the sum.
template <class S>
bool translates_to(const FreeVector<S>& g, const FreeVector<S>& h1, const FreeVector<S>& h2) {
  const auto& a = g.coefficients();
  const auto& b = h1.coefficients();
  const auto& c = h2.coefficients();
  auto ia = a.begin(), ib = b.begin(), ic = c.begin();
  for (;;) {
    std::size_t key = kUnreachable;
    if (ia != a.end()) key = std::min(key, ia->first);
    if (ib != b.end()) key = std::min(key, ib->first);
    if (ic != c.end()) key = std::min(key, ic->first);
    if (key == kUnreachable) return true;
    S lhs(0), rhs(0);
    if (ia != a.end() && ia->first == key) lhs += (ia++)->second;
    if (ib != b.end() && ib->first == key) lhs += (ib++)->second;
    if (ic != c.end() && ic->first == key) rhs = (ic++)->second;
    if (!(lhs == rhs) && !(scalar_traits<S>::is_zero(lhs) && scalar_traits<S>::is_zero(rhs))) return false;
  }
}

}  // namespace detail

/// Decides whether c2 = g . c1 for some g. Each vertex appears once in a
/// point, so the only candidate is h2 - h1 at any shared vertex.
template <class S>
OrbitWitness<S> orbit_equivalent(const ReductionPoint<S>& c1, const ReductionPoint<S>& c2) {
  OrbitWitness<S> w;
  if (c1.entries.size() != c2.entries.size() || c1.entries.empty()) return w;
  for (auto i1 = c1.entries.begin(), i2 = c2.entries.begin(); i1 != c1.entries.end(); ++i1, ++i2)
    if (i1->first != i2->first) return w;
  const auto& [v, h1] = *c1.entries.begin();
  FreeVector<S> g = c2.entries.at(v) - h1;
  for (auto i1 = c1.entries.begin(), i2 = c2.entries.begin(); i1 != c1.entries.end(); ++i1, ++i2)
    if (!detail::translates_to(g, i1->second, i2->second)) return w;
  w.equivalent = true;
  w.translator = std::move(g);
  return w;
}

/// Images of every vertex, indexed by vertex.
template <class S>
std::vector<ReductionPoint<S>> reduce_all(const Forest& f) {
  std::vector<ReductionPoint<S>> out;
  out.reserve(f.graph().vertex_count());
  for (std::size_t x = 0; x < f.graph().vertex_count(); ++x) out.push_back(reduce_point<S>(f, x));
  return out;
}

struct ReductionCheckOptions {
  bool check_separation = true;
  /// Witnesses kept per axiom; the rest are counted in a final summary entry.
  std::size_t max_witnesses = 50;
};

/// Checks the given images against the forest: image shape, the
/// homomorphism law p(y, x) . f(x) = f(y), x ~ y iff f(x) and f(y) are orbit
/// equivalent, soundness of every returned translator, and separation >=
/// epsilon / 2 at every vertex.
template <class S>
ValidationReport verify_reduction(const Forest& f, const StretchedLabeling<S>& sl,
                                  const std::vector<ReductionPoint<S>>& images,
                                  ReductionCheckOptions options = {}) {
  using T = scalar_traits<S>;
  const auto& g = f.graph();
  const std::size_t n = g.vertex_count();
  if (images.size() != n) throw StructuralError("one image per vertex required");
  ValidationReport report;
  std::map<std::string, std::size_t> dropped;
  auto add = [&](const std::string& axiom, std::vector<std::string> witness, double magnitude = 0,
                 std::string detail = {}) {
    std::size_t count = 0;
    for (const auto& v : report.violations) count += v.axiom == axiom;
    if (count < options.max_witnesses)
      report.add(axiom, std::move(witness), magnitude, std::move(detail));
    else
      ++dropped[axiom];
  };

  for (std::size_t x = 0; x < n; ++x) {
    const auto& img = images[x];
    const auto members = f.component_vertices(x);
    bool shape_ok = img.entries.size() == members.size();
    for (std::size_t y : members) shape_ok = shape_ok && img.entries.count(y);
    if (!shape_ok) add("image_vertices", {g.vertex(x)}, 0, "image vertices differ from component");
    auto self = img.entries.find(x);
    if (self == img.entries.end() || !self->second.is_zero())
      add("image_base", {g.vertex(x)}, 0, "base entry is not the zero label");
  }

  std::vector<std::vector<std::optional<PathLabel<S>>>> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = path_labels_from<S>(f, x);

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const bool related = f.connected(x, y);
      const auto w = orbit_equivalent(images[x], images[y]);
      if (related != w.equivalent)
        add("reduction_iff", {g.vertex(x), g.vertex(y)}, 0,
            related ? "connected but images not orbit equivalent" : "images equivalent across components");
      if (w.equivalent && translate(*w.translator, images[x]) != images[y])
        add("translator_soundness", {g.vertex(x), g.vertex(y)});
      if (related && translate(labels[y][x]->vector, images[x]) != images[y])
        add("homomorphism", {g.vertex(x), g.vertex(y)}, 0, "p(y,x) + f(x) != f(y)");
    }

  if (options.check_separation) {
    NormCache<S> cache;
    const S floor = sl.epsilon / S(2);
    for (std::size_t x = 0; x < n; ++x) {
      auto sep = separation(f, sl, x, &cache);
      if (sep && !T::less_equal(floor, *sep))
        add("separation", {g.vertex(x)}, T::to_double(S(floor - *sep)),
            "separation " + T::to_string(*sep) + " < epsilon/2");
    }
  }

  for (const auto& [axiom, count] : dropped)
    report.add(axiom, {}, static_cast<double>(count), std::to_string(count) + " further witnesses omitted");
  return report;
}

template <class S>
ValidationReport verify_reduction(const Forest& f, const StretchedLabeling<S>& sl,
                                  ReductionCheckOptions options = {}) {
  return verify_reduction(f, sl, reduce_all<S>(f), options);
}

}  // namespace fbr

#endif  // FBR_REDUCTION_HPP
