#pragma once

#include <functional>
#include <vector>

#include "bpoint.hpp"
#include "monomial.hpp"

namespace berk {

// One basic radial piece (R0-R7). Fields are shared across variants:
//   R0 Point               a, s
//   R1 BranchSegment       a, s1 < s2 (s2 may be inf)
//   R2 AnnulusCylGraph     a, s1, s2 (may be inf), m1 = rho1 * t^g1
//   R3 AnnulusCylBand      a, s1, s2, m1, m2
//   R4 ClosedDiscCylLevel  a, s, holes (|a-b| <= s), s1
//   R5 ClosedDiscCylBand   a, s, holes, s1 < s2 <= s
//   R6 OpenDiscCylLevel    a, s (may be inf), s1
//   R7 OpenDiscCylBand     a, s (may be inf), s1 < s2 <= s
// Degenerate parameter combinations denote the empty set; they are not errors.
struct BasicRadial {
    enum class Kind { R0, R1, R2, R3, R4, R5, R6, R7 };

    Kind kind;
    Rat a;
    Radius s = Radius::zero();
    Radius s1 = Radius::zero();
    Radius s2 = Radius::zero();
    Monomial m1 = Monomial::constant(Radius::zero());
    Monomial m2 = Monomial::constant(Radius::zero());
    std::vector<Rat> holes;

    static BasicRadial point(Rat a, Radius s);
    static BasicRadial branch_segment(Rat a, Radius s1, Radius s2);
    static BasicRadial annulus_graph(Rat a, Radius s1, Radius s2, Monomial m1);
    static BasicRadial annulus_band(Rat a, Radius s1, Radius s2, Monomial m1, Monomial m2);
    static BasicRadial closed_cyl_level(Rat a, Radius s, std::vector<Rat> holes, Radius s1);
    static BasicRadial closed_cyl_band(Rat a, Radius s, std::vector<Rat> holes,
                                       Radius s1, Radius s2);
    static BasicRadial open_cyl_level(Rat a, Radius s, Radius s1);
    static BasicRadial open_cyl_band(Rat a, Radius s, Radius s1, Radius s2);

    std::string str() const;
};

// Distance oracle: |x - c| for the (possibly virtual) point under test.
using DistFn = std::function<Radius(const Rat&)>;

// Membership of the class eta_{x,r} where dist reports |x - c| and r is the
// class radius. All piece conditions depend only on these data.
bool member_core(const BasicRadial& p, const DistFn& dist, const Radius& r);

bool member(const Field& F, const BPoint& x, const BasicRadial& p);

struct RadialSet {
    std::vector<BasicRadial> pieces; // pairwise disjoint

    bool empty() const { return pieces.empty(); }
};

bool member(const Field& F, const BPoint& x, const RadialSet& s);

// Boolean expression tree over basic pieces.
struct SetExpr {
    enum class Op { Leaf, Union, Inter, Diff, Compl };

    Op op = Op::Leaf;
    BasicRadial leaf = BasicRadial::point(Rat(0), Radius::zero());
    std::vector<SetExpr> args;

    static SetExpr of(BasicRadial p);
    static SetExpr of(const RadialSet& s); // union of the pieces
    static SetExpr unite(std::vector<SetExpr> xs);
    static SetExpr intersect(std::vector<SetExpr> xs);
    static SetExpr diff(SetExpr x, SetExpr y);
    static SetExpr complement(SetExpr x);
};

bool member(const Field& F, const BPoint& x, const SetExpr& e);
bool member_core(const SetExpr& e, const DistFn& dist, const Radius& r);

} // namespace berk
