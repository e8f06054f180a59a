#include "paw/rational.hpp"

#include <cctype>
#include <limits>

#include "paw/error.hpp"

namespace paw {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedRational: return "MalformedRational";
    case ErrorCode::NoOddOverEvenForm: return "NoOddOverEvenForm";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::UnsupportedIndex: return "UnsupportedIndex";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::DegenerateTheta: return "DegenerateTheta";
    case ErrorCode::EOutOfRange: return "EOutOfRange";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw Error(ErrorCode::MalformedRational,
                "malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const unsigned char ch = static_cast<unsigned char>(text[pos]);
    if (!std::isdigit(ch)) {
      throw Error(ErrorCode::MalformedRational,
                  "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '+' || den_text.front() == '-')) {
    throw Error(ErrorCode::MalformedRational,
                "malformed rational '" + std::string(text) + "'");
  }
  const BigInt den = parse_integer(den_text, text);
  if (den == 0) {
    throw Error(ErrorCode::MalformedRational,
                "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::MalformedRational, "zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::InvalidArgument,
                "integer " + value.str() + " does not fit in 64 bits");
  }
  return value.convert_to<std::int64_t>();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace paw
