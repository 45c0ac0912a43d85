#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ddim {

using Integer = mpz_class;
using Rational = mpq_class;

/// Integer grid point (arguments r of counting functions, interpolation nodes).
using IntVec = std::vector<std::int64_t>;
/// Exponent multi-index in the binomial or monomial basis.
using MultiIndex = std::vector<int>;

/// Value of the polynomial C(x, k) = x(x-1)...(x-k+1)/k! at an arbitrary integer x.
/// C(x, 0) = 1 and C(x, k) = 0 for k < 0.
Integer binomial_poly(const Integer& x, int k);

/// Parses "p", "-p", "p/q" into a canonical rational. Throws ArgumentError.
Rational parse_rational(const std::string& text);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);
std::string to_string(const IntVec& v);
std::string to_string(const MultiIndex& v);

}  // namespace ddim
