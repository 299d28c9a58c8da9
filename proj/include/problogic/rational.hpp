#ifndef PROBLOGIC_RATIONAL_HPP
#define PROBLOGIC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace problogic {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator. This is the only number type in the core.
using Rational = boost::multiprecision::cpp_rational;

/// Renders "a/b", or just "a" when the denominator is 1.
std::string to_string(const Rational& r);

/// Parses "a/b" or "a". Unreduced forms are re-normalized; a zero
/// denominator yields nullopt.
std::optional<Rational> parse_rational(std::string_view text);

inline bool in_unit_range(const Rational& r) { return r >= 0 && r <= 1; }

}  // namespace problogic

#endif
