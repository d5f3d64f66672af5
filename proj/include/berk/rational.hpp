#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "errors.hpp"

namespace berk {

using Rat = mpq_class;
using Int = mpz_class;

// "num/den" in lowest terms, "num" when den == 1.
std::string rat_to_string(const Rat& q);

// Accepts "num", "num/den", "-num/den". Throws validation_error on bad syntax
// or zero denominator.
Rat rat_from_string(const std::string& s);

// p-adic valuation of a nonzero rational. Throws domain_error on zero.
Rat vp(const Rat& x, const Int& p);

// x^e for rational base and integer exponent; throws domain_error on 0^negative.
Rat rat_pow(const Rat& x, long e);

// Integer p^k for k >= 0.
Int int_pow(const Int& p, unsigned long k);

} // namespace berk
