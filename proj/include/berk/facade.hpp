#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brick.hpp"
#include "maps.hpp"

namespace berk {

// A connected subdomain of P^1 given by one brick in the affine chart,
// optionally completed by the point at infinity (only meaningful when the
// brick is unbounded). The supported shapes are open discs (B1, radius
// infinity giving A^1) and tubes (B3, closed discs and their hole variants).
struct Domain {
    Brick brick = Brick::open_disc(0, Radius::inf());
    bool has_infinity = false;

    static Domain closed_disc(const Field& F, Rat a, Radius s) {
        return {Brick::tube(F, std::move(a), std::move(s), {}), false};
    }
    static Domain open_disc(Rat a, Radius s) {
        return {Brick::open_disc(std::move(a), std::move(s)), false};
    }
    static Domain line() { return {Brick::open_disc(0, Radius::inf()), false}; }
    static Domain projective_line() {
        return {Brick::open_disc(0, Radius::inf()), true};
    }

    std::string str() const;
};

bool domain_member(const Field& F, const BPoint& y, const Domain& dom);
bool domain_eq(const Field& F, const Domain& a, const Domain& b);

// A finite set of type-1/2 points of the domain subject to the two
// triangulation axioms; points are kept sorted by (center, radius).
struct Triangulation {
    Domain domain;
    std::vector<BPoint> points;
};

// One annular segment of the skeleton: the points eta(c, t) for t in
// (lo, hi), between vertex `child` and vertex `parent`. The outgoing ray of
// an unbounded domain has parent = -1 and hi = the outer radius.
struct SkeletonEdge {
    int child;
    int parent;
    Rat c;
    Radius lo;
    Radius hi;
};

struct SkeletonGraph {
    std::vector<BPoint> vertices;
    std::vector<SkeletonEdge> edges;

    bool on_skeleton(const Field& F, const BPoint& y) const;
    std::string to_dot() const;
};

// Checks the axioms and returns the points sorted and deduplicated.
// Throws validation_error naming the offending component.
Triangulation triangulate(const Field& F, const Domain& dom,
                          std::vector<BPoint> points);

// Adds the extra points and revalidates.
Triangulation refine(const Field& F, const Triangulation& tri,
                     const std::vector<BPoint>& extra);

// Removes points outside `protect` of skeleton arity <= 2, one at a time,
// as long as the result stays a triangulation.
Triangulation prune(const Field& F, const Triangulation& tri,
                    const std::vector<BPoint>& protect);

struct Retraction {
    SkeletonGraph graph;

    // tau(y): the first skeleton point on the upward path from y; for P^1
    // domains the component at infinity retracts onto its boundary vertex.
    BPoint tau(const Field& F, const Domain& dom, const BPoint& y) const;

    // nu(t, y) for t in [0, 1]: the retraction flow, y at t = 0 and tau(y)
    // at t = 1, moving along the segment from y to tau(y).
    BPoint nu(const Field& F, const Domain& dom, const Radius& t,
              const BPoint& y) const;
};

Retraction skeleton_retract(const Field& F, const Triangulation& tri);

// A point of the encoded set X^S. Vtx1 is a type-1 vertex itself, Vtx2 the
// eta_{0,1} copy of a type-2 vertex, Edge a point of an edge annulus in its
// chart, Tube a point of W_x as (residue, chart point) with red(eta) =
// alpha, Disc a point of a retained disc in its unit-disc chart.
struct EncodedPoint {
    enum class Kind { Vtx1, Vtx2, Edge, Tube, Disc };
    Kind kind;
    int vertex = -1;                    // Vtx1/Vtx2/Tube/Disc
    int edge = -1;                      // Edge
    int disc = -1;                      // Disc: index into retained discs
    Int alpha = 0;                      // Tube
    std::optional<BPoint> eta;          // Edge/Tube/Disc

    static EncodedPoint vtx1(int v) { return {Kind::Vtx1, v}; }
    static EncodedPoint vtx2(int v) { return {Kind::Vtx2, v}; }
    static EncodedPoint on_edge(int e, BPoint eta);
    static EncodedPoint in_tube(int v, Int alpha, BPoint eta);
    static EncodedPoint in_disc(int v, int i, BPoint eta);

    std::string str() const;
};

bool encoded_eq(const Field& F, const EncodedPoint& a, const EncodedPoint& b);

// The chart data at a type-2 vertex: f_x = (T - c)/u with |u| = radius,
// the residues excluded from U_x, and the retained open discs V_{x,i}.
struct VertexChart {
    Rat c;
    Rat u;
    std::vector<Int> excluded;          // residue directions not in U_x
    std::vector<RationalMap> discs;     // f_{x,i}, each onto the unit disc
};

struct Facade {
    Field field;
    Domain dom;
    std::vector<BPoint> S;
    Retraction retract;
    std::vector<std::optional<VertexChart>> charts; // per vertex, type-2 only

    const SkeletonGraph& graph() const { return retract.graph; }
};

// Builds the Moebius charts over a valid triangulation. Vertex radii must
// be integer powers of p for the charts to have rational scalings.
Facade build_facade(const Field& F, const Triangulation& tri);

EncodedPoint encode(const Facade& F, const BPoint& y);
BPoint decode(const Facade& F, const EncodedPoint& e);

// encode_{F2} after decode_{F1}, for F2 refining F1 (same domain, S1 a
// subset of S2). Throws validation_error otherwise.
EncodedPoint transport_id(const Facade& F1, const Facade& F2,
                          const EncodedPoint& e);

// Checks h-compatibility of the pair (S1, S2): h maps S1 onto S2 and the
// S2-fibers inside the source domain lie in S1. Throws validation_error
// naming the violating point.
void check_compatible(const RationalMap& h, const Facade& F1, const Facade& F2);

// encode_{F2} of the pushforward of decode_{F1}(e).
EncodedPoint map_transport(const RationalMap& h, const Facade& F1,
                           const Facade& F2, const EncodedPoint& e);

// The piecewise normal form of h between facades: a monomial skeleton map
// per edge piece of F1 and a residue polynomial per type-2 vertex.
struct CompiledEdgePiece {
    int edge;
    Radius lo;
    Radius hi;
    Monomial m;
    long degree;
};

struct CompiledTube {
    int vertex;
    int image_vertex;
    std::vector<Int> residue_coeffs;    // ascending, mod p
};

struct CompiledMap {
    std::vector<CompiledEdgePiece> edges;
    std::vector<CompiledTube> tubes;
};

CompiledMap compile_map(const RationalMap& h, const Facade& F1, const Facade& F2);

} // namespace berk
