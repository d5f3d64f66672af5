#pragma once

#include <string>
#include <vector>

#include "field.hpp"

namespace berk {

// A type-1/2 point of the Berkovich affine line: the closed disc D(a, r).
// Radius Infinity is excluded; equality is the disc relation, not structural.
struct BPoint {
    Rat a;
    Radius r;

    BPoint(Rat center, Radius radius) : a(std::move(center)), r(std::move(radius)) {
        if (r.is_inf()) throw validation_error("point radius must be finite");
    }

    int type() const { return r.is_zero() ? 1 : 2; }
    std::string str() const { return "eta(" + rat_to_string(a) + "," + r.str() + ")"; }
};

inline bool point_eq(const Field& F, const BPoint& x, const BPoint& y) {
    return x.r == y.r && F.dist(x.a, y.a) <= x.r;
}

enum class DiscRelation { Equal, XInsideY, YInsideX, Disjoint };

struct DiscRel {
    BPoint join;
    DiscRelation relation;
    bool strict; // containment lands in the open disc of the larger one
};

DiscRel disc_rel(const Field& F, const BPoint& x, const BPoint& y);

inline BPoint disc_join(const Field& F, const BPoint& x, const BPoint& y) {
    return {x.a, rmax(rmax(x.r, y.r), F.dist(x.a, y.a))};
}

// An element of the residue field F_p, or the generic point of the residue line.
struct Residue {
    bool generic = false;
    Int value = 0;

    static Residue of(Int v) { return {false, std::move(v)}; }
    static Residue generic_point() { return {true, 0}; }

    bool operator==(const Residue& o) const {
        return generic == o.generic && (generic || value == o.value);
    }
    std::string str() const { return generic ? "generic" : value.get_str(); }
};

// Reduction map on the unit disc minus the Gauss point.
Residue red(const Field& F, const BPoint& x);

// Finite join-closed family of discs with parent links by disc inclusion.
struct DiscTree {
    std::vector<BPoint> nodes;   // sorted by (center, radius)
    std::vector<int> parent;     // index of minimal strict superset, -1 at root

    int root() const;
    std::vector<int> children(int i) const;
    std::string to_dot() const;
};

DiscTree span_tree(const Field& F, const std::vector<BPoint>& pts);

} // namespace berk
