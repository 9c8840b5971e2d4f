#ifndef FBR_SCALAR_HPP
#define FBR_SCALAR_HPP

// Scalar backends: exact rationals and binary floating point.
//
// Every numeric algorithm in fbr is a template over a scalar type S for which
// scalar_traits<S> is specialized. The rational backend compares exactly; the
// floating backend prunes values within zero_eps of zero and leaves
// certificate tolerances to the caller.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace fbr {

using Rational = boost::multiprecision::cpp_rational;

/// Default absolute tolerance for floating-point certificate checks.
inline constexpr double kDefaultTolerance = 1e-9;

class ScalarParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Parses an optionally signed decimal literal ("-12.5e-3") into an exact
// rational. Returns false on malformed input.
inline bool parse_decimal(std::string_view s, Rational& out) {
  using boost::multiprecision::cpp_int;
  s = trim(s);
  if (s.empty()) return false;
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  cpp_int mantissa = 0;
  long long exponent = 0;
  bool any_digit = false;
  bool seen_dot = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      any_digit = true;
      if (seen_dot) --exponent;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) return false;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') return false;
    long long e = 0;
    auto tail = s.substr(i + 1);
    if (!tail.empty() && tail.front() == '+') tail.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), e);
    if (ec != std::errc{} || ptr != tail.data() + tail.size() || tail.empty()) return false;
    if (e > 4096 || e < -4096) return false;
    exponent += e;
  }
  cpp_int scale = 1;
  for (long long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) scale *= 10;
  Rational value = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  out = neg ? Rational(-value) : value;
  return true;
}

// "a", "a/b", decimal literals.
inline Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  Rational num;
  if (slash == std::string_view::npos) {
    if (!parse_decimal(s, num)) throw ScalarParseError("malformed number '" + std::string(text) + "'");
    return num;
  }
  Rational den;
  if (!parse_decimal(s.substr(0, slash), num) || !parse_decimal(s.substr(slash + 1), den))
    throw ScalarParseError("malformed fraction '" + std::string(text) + "'");
  if (den == 0) throw ScalarParseError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

inline std::string shortest_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace detail

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";

  static bool is_zero(const Rational& x) { return x == 0; }
  static bool is_negative(const Rational& x) { return x < 0; }
  static bool is_positive(const Rational& x) { return x > 0; }
  static bool equal(const Rational& a, const Rational& b, double /*tol*/ = 0) { return a == b; }
  static bool less_equal(const Rational& a, const Rational& b, double /*tol*/ = 0) { return a <= b; }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational parse(std::string_view s) { return detail::parse_rational(s); }
  // Shortest round-trip decimal of x, read back exactly: 0.3 becomes 3/10.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw ScalarParseError("non-finite value");
    return detail::parse_rational(detail::shortest_double(x));
  }
  static std::string to_string(const Rational& x) { return x.str(); }
  static bool is_integer(const Rational& x) { return denominator(x) == 1; }
  static long long to_integer(const Rational& x) { return numerator(x).convert_to<long long>(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static constexpr double zero_eps = 1e-12;

  static bool is_zero(double x) { return std::fabs(x) <= zero_eps; }
  static bool is_negative(double x) { return x < -zero_eps; }
  static bool is_positive(double x) { return x > zero_eps; }
  static bool equal(double a, double b, double tol = kDefaultTolerance) { return std::fabs(a - b) <= tol; }
  static bool less_equal(double a, double b, double tol = kDefaultTolerance) { return a <= b + tol; }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double parse(std::string_view s) {
    return scalar_traits<Rational>::to_double(detail::parse_rational(s));
  }
  static double from_double(double x) { return x; }
  static std::string to_string(double x) { return detail::shortest_double(x); }
  static bool is_integer(double x) { return std::fabs(x - std::round(x)) <= zero_eps; }
  static long long to_integer(double x) { return static_cast<long long>(std::llround(x)); }
};

template <class S>
concept Scalar = requires { scalar_traits<S>::exact; };

}  // namespace fbr

#endif  // FBR_SCALAR_HPP
