#ifndef BLOCKCALC_RATIONAL_HPP
#define BLOCKCALC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>

namespace blockcalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Parses "p/q" or "p"; denominator must be nonzero.
Rat parse_rat(const std::string& s);

// "p/q" with q > 0, or just "p" when q == 1.
std::string format_rat(const Rat& r);

// Trial-division factorization of |n|, n != 0.  Fine at desk scale.
std::map<Int, int> factor(Int n);

// p-adic valuation of r at prime p, r != 0.
int valuation(const Rat& r, const Int& p);

// r with the p-part removed: r / p^valuation.
Rat prime_to_part(const Rat& r, const Int& p);

bool is_prime(const Int& n);

Int pow_mod(Int base, Int exp, const Int& mod);

}  // namespace blockcalc

#endif
