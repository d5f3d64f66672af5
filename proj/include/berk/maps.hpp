#pragma once

#include "brick.hpp"
#include "newton.hpp"

namespace berk {

// Rational self-map of P^1, num/den coprime over Q.
struct RationalMap {
    Polynomial num, den;

    static RationalMap of(Polynomial num, Polynomial den); // reduces by the gcd
    static RationalMap poly(Polynomial h) { return of(std::move(h), Polynomial::of({Rat(1)})); }
    static RationalMap moebius(Rat a, Rat b, Rat c, Rat d); // (aT + b) / (cT + d)
    static RationalMap identity() { return poly(Polynomial::of({Rat(0), Rat(1)})); }

    long degree() const { return std::max(num.degree(), den.degree()); }
    bool is_polynomial() const { return den.is_constant(); }
    bool is_moebius() const { return degree() == 1; }
    Polynomial as_polynomial() const; // den constant only

    std::string str() const;
};

// A point of P^1_Berk with rational data: either a BPoint of the T chart or
// the point at infinity.
struct ProjPoint {
    bool at_infinity = false;
    BPoint point{0, Radius::zero()};

    static ProjPoint of(BPoint x) { return {false, std::move(x)}; }
    static ProjPoint infinity() { return {true, {0, Radius::zero()}}; }
    std::string str() const;
};

ProjPoint pushforward(const Field& F, const RationalMap& h, const BPoint& x);

// The locus N_{h,d} = {x : deg_x(h) = d} over a brick region.
struct LocusReport {
    long d;
    RadialSet locus;
    Brick region;
    bool residual; // true when the critical tree is not rational: locus not certified
};

LocusReport multiplicity_locus(const Field& F, const RationalMap& h, long d,
                               const Brick& region);

struct Fiber {
    long count;
    std::vector<BPoint> points;
};

// The fiber h^{-1}(y); preimage centers are found by the rational-root
// finder, augmented by the supplied oracle centers.
Fiber fiber_count(const Field& F, const RationalMap& h, const BPoint& y,
                  const std::vector<Rat>& root_oracle = {});

// Rational roots of h with multiplicity; complete is false when factoring
// stops before reaching a constant (irrational or out-of-range roots remain).
struct RationalRoots {
    std::vector<std::pair<Rat, long>> roots;
    bool complete;
};

RationalRoots rational_roots(const Polynomial& h);

} // namespace berk
