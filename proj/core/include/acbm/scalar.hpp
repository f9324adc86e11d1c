#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace acbm {

// Expression templates are disabled so that `auto` never captures a
// reference to a temporary.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Absolute tolerance used by the float backend. The rational backend
/// ignores it: every comparison there is exact.
struct Tolerance {
  double eps = 1e-9;
};

/// Reads ACBM_EPS from the environment, falling back to 1e-9.
Tolerance default_tolerance();

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
  static double to_double(double v) { return v; }
  static bool is_zero(double v, Tolerance tol) { return std::abs(v) <= tol.eps; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static bool is_zero(const Rational& v, Tolerance) { return v.is_zero(); }
};

template <class S>
double to_double(const S& v) {
  return ScalarTraits<S>::to_double(v);
}

template <class S>
S from_rational(const Rational& q) {
  return ScalarTraits<S>::from_rational(q);
}

template <class S>
bool is_zero(const S& v, Tolerance tol) {
  return ScalarTraits<S>::is_zero(v, tol);
}

template <class S>
S abs_value(const S& v) {
  if constexpr (std::is_same_v<S, double>) {
    return std::abs(v);
  } else {
    return boost::multiprecision::abs(v);
  }
}

/// Parses "p/q", an integer, or a decimal literal such as "-1.25" or
/// "3e-2" into an exact rational. Throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
std::string format_rational(const Rational& q);

}  // namespace acbm
