#pragma once

#include "bpoint.hpp"
#include "monomial.hpp"

#include <optional>

namespace berk {

// Dense polynomial over the rationals, coefficients in ascending degree.
struct Polynomial {
    std::vector<Rat> coeffs; // trailing coefficient nonzero unless zero poly

    static Polynomial of(std::vector<Rat> cs); // trims trailing zeros
    static Polynomial zero() { return {}; }

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    bool is_constant() const { return coeffs.size() <= 1; }
    Rat coeff(long i) const {
        return (i >= 0 && i < static_cast<long>(coeffs.size())) ? coeffs[i] : Rat(0);
    }

    Rat eval(const Rat& x) const;
    Polynomial recentered(const Rat& a) const; // coefficients of h(a + u) in u

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial compose(const Polynomial& inner) const; // this ∘ inner
    Polynomial derivative() const;

    bool operator==(const Polynomial& o) const { return coeffs == o.coeffs; }
    std::string str() const;
};

// Lower convex hull of {(i, v_p(c_i)) : c_i != 0}.
struct NewtonPolygon {
    struct Vertex {
        long index;
        Rat valuation;
    };
    std::vector<Vertex> vertices; // strictly increasing indices and slopes
};

struct RootValuations {
    NewtonPolygon polygon;
    std::vector<std::pair<Rat, long>> finite; // (valuation, multiplicity), increasing
    long infinite = 0;                        // roots at 0, counted with multiplicity

    long total() const;
};

RootValuations polygon_roots(const Field& F, const Polynomial& h);

// h(D(a,r)) = D(b,s); returns eta(b,s).
BPoint disc_image(const Field& F, const Polynomial& h, const Rat& a, const Radius& r);

// Weierstrass degree of h on D(a,r) (largest dominating index); at a type-1
// point, the vanishing order of h(a+u) - h(a).
long local_degree(const Field& F, const Polynomial& h, const BPoint& x);

// Piecewise monomial description of t -> radius of h(eta(a,t)) on (s1, s2).
struct SkeletonPiece {
    Radius lo, hi;    // open subinterval bounds
    Rat image_center; // h(a)
    Monomial m;       // image radius as a function of t on the subinterval
    long degree;      // dominating index = local degree on the band
};

std::vector<SkeletonPiece> skeleton_monomial(const Field& F, const Polynomial& h,
                                             const Rat& a, const Radius& s1,
                                             const Radius& s2);

} // namespace berk
