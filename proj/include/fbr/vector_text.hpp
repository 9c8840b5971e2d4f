#ifndef FBR_VECTOR_TEXT_HPP
#define FBR_VECTOR_TEXT_HPP

// Text form of free vectors: signed terms "c*id" or bare "id", e.g.
// "1*a-1*b", "3/2*a + b", "-0.5*c". "0" is the zero vector.

#include "fbr/free_vector.hpp"
#include "fbr/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fbr {

class VectorParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// True when s so far reads as a decimal mantissa ending in an exponent
// marker, so a following sign belongs to the number.
inline bool open_exponent(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || (s.back() != 'e' && s.back() != 'E')) return false;
  for (char c : s.substr(0, s.size() - 1))
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return false;
  return true;
}

}  // namespace detail

/// Splits text into (identifier, coefficient) terms, in order.
inline std::vector<std::pair<std::string, Rational>> parse_vector_terms(std::string_view text) {
  std::vector<std::pair<std::string, Rational>> terms;
  if (detail::trim(text) == "0") return terms;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
      negative = text[i] == '-';
      ++i;
    } else if (!terms.empty()) {
      throw VectorParseError("expected '+' or '-' at offset " + std::to_string(i));
    }
    const std::size_t start = i;
    bool seen_star = false;
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '*') seen_star = true;
      if ((c == '+' || c == '-') && (seen_star || !detail::open_exponent(text.substr(start, i - start)))) break;
    }
    const std::string_view body = detail::trim(text.substr(start, i - start));
    if (body.empty()) throw VectorParseError("empty term at offset " + std::to_string(start));
    Rational coeff(1);
    std::string_view id = body;
    if (auto star = body.find('*'); star != std::string_view::npos && body != kBasepoint) {
      try {
        coeff = detail::parse_rational(body.substr(0, star));
      } catch (const ScalarParseError&) {
        throw VectorParseError("bad coefficient '" + std::string(body.substr(0, star)) + "'");
      }
      id = detail::trim(body.substr(star + 1));
    }
    const bool bad_char = std::any_of(id.begin(), id.end(), [](char c) {
      return c == '*' || std::isspace(static_cast<unsigned char>(c));
    });
    if (id.empty() || (bad_char && id != kBasepoint))
      throw VectorParseError("bad point identifier in '" + std::string(body) + "'");
    terms.emplace_back(std::string(id), negative ? Rational(-coeff) : coeff);
  }
  if (terms.empty()) throw VectorParseError("empty vector text");
  return terms;
}

/// Builds a vector over points. Terms on the basepoint are dropped and
/// counted in dropped_basepoint; unknown identifiers are StructuralErrors.
template <class S>
FreeVector<S> parse_vector(std::string_view text, const PointSetPtr& points, std::size_t* dropped_basepoint = nullptr) {
  std::vector<std::pair<std::string, S>> terms;
  for (auto& [id, c] : parse_vector_terms(text)) {
    if constexpr (std::is_same_v<S, Rational>)
      terms.emplace_back(std::move(id), std::move(c));
    else
      terms.emplace_back(std::move(id), scalar_traits<Rational>::to_double(c));
  }
  return FreeVector<S>::from_terms(points, terms, dropped_basepoint);
}

}  // namespace fbr

#endif  // FBR_VECTOR_TEXT_HPP
