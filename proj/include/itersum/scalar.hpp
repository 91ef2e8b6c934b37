#ifndef ITERSUM_SCALAR_HPP
#define ITERSUM_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace itersum {

// Exact rational scalar. mpq_class keeps the canonical form invariant
// (denominator > 0, gcd(|num|, den) = 1) for all arithmetic results.
using Scalar = mpq_class;

// Parses `p`, `-p`, or `p/q` with q > 0 after canonicalization.
Scalar parse_scalar(std::string_view text);

// Canonical rendering: integers without `/1`, otherwise `p/q`.
std::string render_scalar(const Scalar& s);

// floor/ceil as integers.
mpz_class floor_scalar(const Scalar& s);
mpz_class ceil_scalar(const Scalar& s);

inline int sign(const Scalar& s) { return sgn(s); }

}  // namespace itersum

#endif
