#include "berk/radius.hpp"

namespace berk {

const Rat& Radius::exponent() const {
    if (kind_ != Kind::Exp) throw domain_error("exponent of a non-finite radius");
    return exp_;
}

bool operator==(const Radius& a, const Radius& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ != Radius::Kind::Exp) return true;
    return a.exp_ == b.exp_;
}

bool operator<(const Radius& a, const Radius& b) {
    if (a.kind_ == b.kind_)
        return a.kind_ == Radius::Kind::Exp && a.exp_ < b.exp_;
    if (a.kind_ == Radius::Kind::Zero) return true;
    if (a.kind_ == Radius::Kind::Inf) return false;
    return b.kind_ == Radius::Kind::Inf;
}

Radius operator*(const Radius& a, const Radius& b) {
    using K = Radius::Kind;
    if ((a.kind_ == K::Zero && b.kind_ == K::Inf) ||
        (a.kind_ == K::Inf && b.kind_ == K::Zero))
        throw domain_error("0 * inf is undefined");
    if (a.kind_ == K::Zero || b.kind_ == K::Zero) return Radius::zero();
    if (a.kind_ == K::Inf || b.kind_ == K::Inf) return Radius::inf();
    return Radius::exp(a.exp_ + b.exp_);
}

Radius Radius::pow(const Rat& g) const {
    if (g == 0) return Radius::one();
    switch (kind_) {
    case Kind::Exp:
        return Radius::exp(exp_ * g);
    case Kind::Zero:
        if (g < 0) throw domain_error("0 to a negative power");
        return Radius::zero();
    case Kind::Inf:
        if (g < 0) throw domain_error("inf to a negative power");
        return Radius::inf();
    }
    throw domain_error("unreachable");
}

Radius Radius::inverse() const {
    switch (kind_) {
    case Kind::Exp: return Radius::exp(-exp_);
    case Kind::Zero: return Radius::inf();
    case Kind::Inf: return Radius::zero();
    }
    throw domain_error("unreachable");
}

std::string Radius::str() const {
    switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Inf: return "inf";
    case Kind::Exp:
        if (exp_ == 0) return "1";
        return "p^" + rat_to_string(exp_);
    }
    return "?";
}

} // namespace berk
