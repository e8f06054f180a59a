#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace paw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "N/D" or "N" (optional leading sign). Throws Error{MalformedRational}.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

Rational make_rational(std::int64_t num, std::int64_t den);

/// Checked narrowing; throws Error{InvalidArgument} when the value does not fit.
std::int64_t to_int64(const BigInt& value);

double to_double(const Rational& value);

}  // namespace paw
