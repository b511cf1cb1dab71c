#ifndef CUSP_RATIONAL_HPP
#define CUSP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "cusp/errors.hpp"

namespace cusp {

/// Exact rational scalar. All coordinates, eigenvalues and tolerances in the
/// library are rationals; nothing is ever rounded.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Rat rat(std::int64_t n, std::int64_t d = 1) {
  if (d == 0) fail(Errc::ParseError, "zero denominator");
  return Rat(n, d);
}

/// Canonical text form: "k" for integers, "a/b" in lowest terms otherwise.
std::string rat_to_string(const Rat& x);

/// Parses "k" or "a/b". Rejects zero denominators and garbage.
Rat rat_from_string(const std::string& s);

/// Smallest n >= 0 with x * 2^n integral, if x is dyadic.
std::optional<int> dyadic_depth(const Rat& x);

/// floor(x) as a bignum integer.
Int rat_floor(const Rat& x);

/// Largest integer i with i <= x, as int64 (values in this library are tiny).
std::int64_t rat_floor_i64(const Rat& x);

}  // namespace cusp

#endif
