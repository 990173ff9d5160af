#pragma once

// Exact arithmetic layer: arbitrary-precision integers and rationals,
// with the "p/q" string format used by all JSON interfaces.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace thetalat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& i) { return i.convert_to<double>(); }

// Exact conversion: every finite double is a binary rational.
Rat rat_from_double(double x);

// Parses "p", "-p", "p/q" (q > 0 after normalization). Throws std::invalid_argument.
Rat parse_rat(const std::string& s);

std::string rat_to_string(const Rat& r);

// gcd over Q: the largest rational g such that every input is an integer
// multiple of g. Zero inputs are ignored; returns 0 if all inputs are zero.
Rat rat_gcd(const Rat& a, const Rat& b);

}  // namespace thetalat
