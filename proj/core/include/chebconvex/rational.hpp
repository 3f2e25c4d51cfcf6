#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace chebconvex {

/// Exact scalar used by the rational oracle paths.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p/q", "p", or a finite decimal such as "-0.25".
/// Throws Error(BadSpec) on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" (or "p" when the denominator is one).
std::string to_fraction_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace chebconvex
