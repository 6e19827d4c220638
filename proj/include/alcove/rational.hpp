#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace alcove {

// Exact arithmetic everywhere: wall-membership decisions must never go
// through floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy.  ParseError / UsageError / PreconditionError /
// UnsupportedError map to CLI exit code 2; verification failures are
// reported through return values, not exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct UsageError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct UnsupportedError : Error {
  using Error::Error;
};

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int rat_floor(const Rat& x) { return floor_div(numerator(x), denominator(x)); }
inline Int rat_ceil(const Rat& x) { return -rat_floor(-x); }
inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

inline long long to_ll(const Int& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw Error("integer out of machine range: " + v.str());
  return v.convert_to<long long>();
}

inline long long rat_to_ll(const Rat& x) {
  if (!is_integer(x)) throw Error("expected an integer, got " + x.str());
  return to_ll(numerator(x));
}

inline std::string rat_str(const Rat& x) {
  if (is_integer(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

// Accepts "p" and "p/q" with optional leading sign.
inline Rat parse_rat(std::string_view s) {
  auto bad = [&]() -> ParseError { return ParseError("malformed rational '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  auto parse_int = [&](std::string_view t) -> Int {
    if (t.empty()) throw bad();
    bool neg = (t[0] == '-');
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) throw bad();
    for (std::size_t k = i; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') throw bad();
    Int v(std::string(t.substr(i)));
    return neg ? -v : v;
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw bad();
  return Rat(num, den);
}

}  // namespace alcove
