#pragma once

#include "facade.hpp"

namespace berk {

// One piece of a radial subset of a triangulated domain: either a cylinder
// of normalized radii over a vertex tube, or a band between two monomial
// radius bounds over a t-subinterval of a skeleton edge. rho is the radius
// of a point in its attachment chart, 1 exactly on the skeleton.
struct CurvePiece {
    enum class Kind { Vertex, Edge };

    Kind kind;
    int vertex = -1;
    Radius lo = Radius::zero(); // vertex: lo ~ rho ~ hi
    Radius hi = Radius::one();
    bool lo_in = true, hi_in = true;

    int edge = -1;
    Radius tlo = Radius::zero(); // edge: position interval, singletons allowed
    Radius thi = Radius::zero();
    bool tlo_in = false, thi_in = false;
    Monomial f1 = Monomial::constant(Radius::zero()); // f1(t) ~ rho ~ f2(t)
    Monomial f2 = Monomial::constant(Radius::one());
    bool f1_in = true, f2_in = true;

    static CurvePiece vertex_cyl(int v, Radius lo, bool lo_in, Radius hi,
                                 bool hi_in);
    // the band over the full open edge
    static CurvePiece edge_band(const SkeletonGraph& g, int e, Monomial f1,
                                bool f1_in, Monomial f2, bool f2_in);
    static CurvePiece edge_band_on(int e, Radius tlo, bool tlo_in, Radius thi,
                                   bool thi_in, Monomial f1, bool f1_in,
                                   Monomial f2, bool f2_in);

    std::string str() const;
};

struct CurveRadialSet {
    std::vector<CurvePiece> pieces; // pairwise disjoint
};

// Boolean expression tree over curve pieces.
struct CurveExpr {
    enum class Op { Leaf, Union, Inter, Diff, Compl };

    Op op = Op::Leaf;
    CurvePiece leaf = CurvePiece::vertex_cyl(-1, Radius::zero(), true,
                                             Radius::zero(), true);
    std::vector<CurveExpr> args;

    static CurveExpr of(CurvePiece p);
    static CurveExpr of(const CurveRadialSet& s);
    static CurveExpr unite(std::vector<CurveExpr> xs);
    static CurveExpr intersect(std::vector<CurveExpr> xs);
    static CurveExpr diff(CurveExpr x, CurveExpr y);
    static CurveExpr complement(CurveExpr x);
};

// Where a point sits relative to the skeleton: the retraction target (a
// vertex or a position t on an edge) and the normalized radius rho.
struct RhoValue {
    int vertex = -1;
    int edge = -1;
    Radius t = Radius::zero();
    Radius rho = Radius::one();
};

RhoValue rho_point(const Facade& fa, const BPoint& y);

bool curve_member(const Facade& fa, const BPoint& y, const CurvePiece& p);
bool curve_member(const Facade& fa, const BPoint& y, const CurveRadialSet& s);
bool curve_member(const Facade& fa, const BPoint& y, const CurveExpr& e);

// The definable side of delta_k: cylinders on the tube sets Z_x and radial
// pieces in the standard-annulus charts of the edges.
struct ZCylinder {
    int vertex;
    Radius lo, hi;
    bool lo_in, hi_in;
    std::vector<Int> exceptions; // excluded residue fibers
};

struct EdgeDefinable {
    int edge;
    RadialSet chart;
};

struct DefinableCurve {
    std::vector<ZCylinder> cylinders;
    std::vector<EdgeDefinable> edges;
};

DefinableCurve delta(const Facade& fa, const CurveRadialSet& A);
CurveRadialSet delta_inverse(const Facade& fa, const DefinableCurve& D);

bool encoded_member(const Facade& fa, const EncodedPoint& e,
                    const DefinableCurve& D);

// Disjoint normal form of a boolean combination, complements taken within
// the domain of the facade.
CurveRadialSet normalize_curve(const Facade& fa, const CurveExpr& expr);

} // namespace berk
