#pragma once

#include <compare>
#include <string>

#include "rational.hpp"

namespace berk {

// An element of the value group closure {0} ∪ p^Q ∪ {∞}. Exp(q) stands for
// p^q, so the order on finite values is the order of the exponents.
class Radius {
public:
    enum class Kind { Zero, Exp, Inf };

    Radius() : kind_(Kind::Zero), exp_(0) {}

    static Radius zero() { return Radius(Kind::Zero, Rat(0)); }
    static Radius exp(Rat q) {
        q.canonicalize();
        return Radius(Kind::Exp, std::move(q));
    }
    static Radius one() { return Radius(Kind::Exp, Rat(0)); }
    static Radius inf() { return Radius(Kind::Inf, Rat(0)); }

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_finite() const { return kind_ == Kind::Exp; }
    bool is_inf() const { return kind_ == Kind::Inf; }

    // Valid only for finite values.
    const Rat& exponent() const;

    friend bool operator==(const Radius& a, const Radius& b);
    friend bool operator!=(const Radius& a, const Radius& b) { return !(a == b); }
    friend bool operator<(const Radius& a, const Radius& b);
    friend bool operator<=(const Radius& a, const Radius& b) { return !(b < a); }
    friend bool operator>(const Radius& a, const Radius& b) { return b < a; }
    friend bool operator>=(const Radius& a, const Radius& b) { return !(a < b); }

    // Multiplication; 0·∞ is a domain error.
    friend Radius operator*(const Radius& a, const Radius& b);

    // r^g for rational g. Zero and Infinity accept g > 0 (fixed) and g == 0
    // (gives 1); a negative exponent on them is a domain error.
    Radius pow(const Rat& g) const;

    // Inverse: 1/r. Zero <-> Infinity.
    Radius inverse() const;

    std::string str() const; // "0", "p^q", "inf"

private:
    Radius(Kind k, Rat q) : kind_(k), exp_(std::move(q)) {}
    Kind kind_;
    Rat exp_;
};

inline Radius rmax(const Radius& a, const Radius& b) { return a < b ? b : a; }
inline Radius rmin(const Radius& a, const Radius& b) { return b < a ? b : a; }

} // namespace berk
