#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace ttc {

/// Exact arbitrary-precision rational. Positions on edges, chart
/// breakpoints, and bust intervals are all held in this type so the
/// piecewise-linear dynamics never round.
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat &r) { return r.template convert_to<double>(); }

inline bool is_integer(const Rat &r) { return denominator(r) == 1; }

/// Floor of a rational, as a big integer.
inline BigInt rat_floor(const Rat &r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r))
    --q;
  return q;
}

inline std::string rat_str(const Rat &r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1)
    s += "/" + denominator(r).str();
  return s;
}

/// Parses "p/q" or "p". Returns nullopt on malformed input or q == 0.
inline std::optional<Rat> rat_parse(const std::string &text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      BigInt n(text);
      return Rat(n);
    }
    BigInt n(text.substr(0, slash));
    BigInt d(text.substr(slash + 1));
    if (d == 0)
      return std::nullopt;
    return Rat(n) / Rat(d);
  } catch (const std::exception &) {
    return std::nullopt;
  }
}

} // namespace ttc
