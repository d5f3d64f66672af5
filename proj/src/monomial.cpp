#include "berk/monomial.hpp"

namespace berk {

Radius Monomial::eval(const Radius& t) const {
    if (is_zero()) return Radius::zero();
    if (deg == 0) return coeff;
    return coeff * t.pow(deg);
}

Monomial Monomial::powed(const Rat& g) const {
    if (is_zero()) {
        if (g < 0) throw domain_error("zero monomial to a negative power");
        if (g == 0) return constant(Radius::one());
        return *this;
    }
    return {coeff.pow(g), deg * g};
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.is_zero() || b.is_zero()) return Monomial::constant(Radius::zero());
    return {a.coeff * b.coeff, a.deg + b.deg};
}

std::string Monomial::str() const {
    if (is_zero()) return "0";
    if (deg == 0) return coeff.str();
    std::string t = deg == 1 ? "t" : "t^" + rat_to_string(deg);
    if (coeff == Radius::one()) return t;
    return coeff.str() + "*" + t;
}

std::optional<Radius> crossing(const Monomial& a, const Monomial& b) {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    if (!a.coeff.is_finite() || !b.coeff.is_finite()) return std::nullopt;
    if (a.deg == b.deg) return std::nullopt;
    // coeff_a * t^da = coeff_b * t^db  =>  t = (cb/ca)^(1/(da-db)).
    Rat e = (b.coeff.exponent() - a.coeff.exponent()) / (a.deg - b.deg);
    return Radius::exp(e);
}

} // namespace berk
