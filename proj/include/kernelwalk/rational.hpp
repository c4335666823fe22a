#ifndef KERNELWALK_RATIONAL_HPP
#define KERNELWALK_RATIONAL_HPP

#include <complex>
#include <string>

#include <gmpxx.h>

namespace kw {

// Exact arithmetic lives on GMP rationals; floating work uses the x87
// extended format (64 fractional bits).
using Rational = mpq_class;
using Integer = mpz_class;
using Real = long double;
using Complex = std::complex<Real>;

// Parses "p/q" or "p" with optional sign; throws input_error on anything else
// (including q == 0). The result is canonicalized.
Rational parse_rational(const std::string& text);

// "p/q" when q != 1, otherwise "p".
std::string to_string(const Rational& q);

// Correct to ~1.5 ulp even when numerator/denominator exceed 2^53.
Real to_real(const Integer& z);
Real to_real(const Rational& q);

// Exact rational value of a finite long double.
Rational rational_from_real(Real x);

inline int sign(const Rational& q) { return sgn(q); }

} // namespace kw

#endif
