#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace sphereiso {

/// Exact arbitrary-precision integer used for all coefficients and lattice
/// arithmetic.
using Int = boost::multiprecision::cpp_int;

/// Exact rational, used for track time coordinates. Always kept in lowest
/// terms by the backend.
using Rational = boost::multiprecision::cpp_rational;

/// Appends a self-delimiting byte encoding of `v` to `out`:
/// one header byte (sign bit | magnitude byte count) followed by the
/// magnitude bytes, big-endian. Injective, so concatenations of encodings
/// compare deterministically.
void append_encoded_int(std::string& out, const Int& v);

std::string encoded_int(const Int& v);

/// Length-lexicographic order on byte strings: shorter first, then bytewise.
bool length_lex_less(const std::string& a, const std::string& b);

/// Parses "n/d", a plain integer "n", or a finite decimal like "0.25".
/// Throws sphereiso::SchemaError on anything else or on d == 0.
Rational rational_from_string(std::string_view text);

/// Prints as "n/d", or "n" when the denominator is one.
std::string rational_to_string(const Rational& r);

Int int_from_string(std::string_view text);

}  // namespace sphereiso
