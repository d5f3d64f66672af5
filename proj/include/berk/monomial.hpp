#pragma once

#include <optional>

#include "radius.hpp"

namespace berk {

// A monomial radius function t -> coeff * t^deg on the value group. The
// zero function is coeff = 0 (deg is then irrelevant and normalized to 0).
struct Monomial {
    Radius coeff = Radius::one();
    Rat deg = Rat(0);

    static Monomial constant(const Radius& c) { return {c, Rat(0)}; }
    static Monomial identity() { return {Radius::one(), Rat(1)}; }

    bool is_zero() const { return coeff.is_zero(); }
    bool is_constant() const { return is_zero() || deg == 0; }

    Radius eval(const Radius& t) const;

    Monomial scaled(const Radius& c) const { return {coeff * c, deg}; }
    Monomial powed(const Rat& g) const;
    friend Monomial operator*(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const {
        if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
        return coeff == o.coeff && deg == o.deg;
    }

    std::string str() const;
};

// The unique finite positive t where the two graphs cross, when the
// monomials are distinct, nonzero, finite-coefficient and of different
// degree; nullopt otherwise.
std::optional<Radius> crossing(const Monomial& a, const Monomial& b);

} // namespace berk
