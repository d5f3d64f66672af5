#include "berk/brick.hpp"

#include <sstream>

namespace berk {

Brick Brick::rational_point(Rat a) {
    return {Kind::B0, std::move(a)};
}

Brick Brick::open_disc(Rat a, Radius s) {
    if (s.is_zero()) throw validation_error("open disc radius must be nonzero");
    Brick b{Kind::B1, std::move(a)};
    b.s = std::move(s);
    return b;
}

Brick Brick::open_annulus(Rat a, Radius s1, Radius s2) {
    if (s1.is_inf()) throw validation_error("annulus inner radius must be finite");
    Brick b{Kind::B2, std::move(a)};
    b.s1 = std::move(s1);
    b.s2 = std::move(s2);
    return b;
}

Brick Brick::tube(const Field& F, Rat a, Radius s, std::vector<Rat> holes) {
    if (!s.is_finite() || s.is_zero())
        throw validation_error("tube level must be finite and nonzero");
    for (const auto& b : holes)
        if (F.dist(a, b) > s)
            throw validation_error("tube hole center outside the tube level");
    Brick b{Kind::B3, std::move(a)};
    b.s = std::move(s);
    b.holes = std::move(holes);
    return b;
}

std::string Brick::str() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::B0: os << "B0{" << rat_to_string(a) << "}"; break;
    case Kind::B1: os << "B1{a=" << rat_to_string(a) << ", s=" << s.str() << "}"; break;
    case Kind::B2:
        os << "B2{a=" << rat_to_string(a) << ", s1=" << s1.str() << ", s2=" << s2.str()
           << "}";
        break;
    case Kind::B3:
        os << "B3{a=" << rat_to_string(a) << ", s=" << s.str() << ", holes={";
        for (size_t i = 0; i < holes.size(); ++i)
            os << (i ? "," : "") << rat_to_string(holes[i]);
        os << "}}";
        break;
    }
    return os.str();
}

BrickOps brick_ops(const Brick& b) {
    BrickOps ops;
    const Radius z = Radius::zero();
    switch (b.kind) {
    case Brick::Kind::B0:
        ops.minus_skeleton.pieces.push_back(BasicRadial::point(b.a, z));
        break;
    case Brick::Kind::B1:
        ops.minus_skeleton.pieces.push_back(BasicRadial::open_cyl_level(b.a, b.s, z));
        ops.minus_skeleton.pieces.push_back(BasicRadial::open_cyl_band(b.a, b.s, z, b.s));
        break;
    case Brick::Kind::B2:
        ops.skeleton.pieces.push_back(BasicRadial::branch_segment(b.a, b.s1, b.s2));
        ops.minus_skeleton.pieces.push_back(BasicRadial::annulus_graph(
            b.a, b.s1, b.s2, Monomial::constant(z)));
        ops.minus_skeleton.pieces.push_back(BasicRadial::annulus_band(
            b.a, b.s1, b.s2, Monomial::constant(z), Monomial::identity()));
        break;
    case Brick::Kind::B3:
        ops.skeleton.pieces.push_back(BasicRadial::point(b.a, b.s));
        ops.minus_skeleton.pieces.push_back(
            BasicRadial::closed_cyl_level(b.a, b.s, b.holes, z));
        ops.minus_skeleton.pieces.push_back(
            BasicRadial::closed_cyl_band(b.a, b.s, b.holes, z, b.s));
        break;
    }
    ops.as_radial.pieces.insert(ops.as_radial.pieces.end(),
                                ops.skeleton.pieces.begin(), ops.skeleton.pieces.end());
    ops.as_radial.pieces.insert(ops.as_radial.pieces.end(),
                                ops.minus_skeleton.pieces.begin(),
                                ops.minus_skeleton.pieces.end());
    return ops;
}

bool member(const Field& F, const BPoint& x, const Brick& b) {
    Radius d = F.dist(x.a, b.a);
    switch (b.kind) {
    case Brick::Kind::B0:
        return x.r.is_zero() && d.is_zero();
    case Brick::Kind::B1:
        return b.s.is_inf() || rmax(d, x.r) < b.s;
    case Brick::Kind::B2:
        return (b.s2.is_inf() || rmax(d, x.r) < b.s2) && !(rmax(d, x.r) <= b.s1);
    case Brick::Kind::B3: {
        if (!(rmax(d, x.r) <= b.s)) return false;
        for (const auto& h : b.holes)
            if (rmax(F.dist(x.a, h), x.r) < b.s) return false;
        return true;
    }
    }
    return false;
}

std::string KDisc::str() const {
    return std::string(closed ? "D(" : "D-(") + rat_to_string(a) + "," + r.str() + ")";
}

namespace {

// The Berkovich points of a ground-field disc, as an expression.
SetExpr disc_bset(const KDisc& x) {
    const Radius z = Radius::zero();
    if (x.closed) {
        if (x.r.is_inf()) throw validation_error("closed disc of infinite radius");
        if (x.r.is_zero()) return SetExpr::of(BasicRadial::point(x.a, z));
        return SetExpr::unite({SetExpr::of(BasicRadial::point(x.a, x.r)),
                               SetExpr::of(BasicRadial::closed_cyl_level(x.a, x.r, {}, z)),
                               SetExpr::of(BasicRadial::closed_cyl_band(x.a, x.r, {}, z, x.r))});
    }
    if (x.r.is_zero()) throw validation_error("open disc of zero radius");
    return SetExpr::unite({SetExpr::of(BasicRadial::open_cyl_level(x.a, x.r, z)),
                           SetExpr::of(BasicRadial::open_cyl_band(x.a, x.r, z, x.r))});
}

// hole strictly inside outer, as ground-field discs
bool proper_subdisc(const Field& F, const KDisc& hole, const KDisc& outer) {
    Radius d = F.dist(hole.a, outer.a);
    if (hole.closed) {
        if (hole.r.is_inf()) return false;
        Radius m = rmax(d, hole.r);
        return outer.closed ? m <= outer.r : (outer.r.is_inf() || m < outer.r);
    }
    if (outer.closed) return hole.r <= outer.r && d <= outer.r;
    if (outer.r.is_inf()) return hole.r.is_inf() ? false : true;
    // open in open: contained iff d < s and t <= s; equality iff t == s
    if (!(hole.r <= outer.r && d < outer.r)) return false;
    return hole.r < outer.r; // reject equality (not proper)
}

bool discs_disjoint(const Field& F, const KDisc& x, const KDisc& y) {
    Radius d = F.dist(x.a, y.a);
    bool x_misses_y = y.closed ? d > y.r : (y.r.is_inf() ? false : d >= y.r);
    bool y_misses_x = x.closed ? d > x.r : (x.r.is_inf() ? false : d >= x.r);
    return x_misses_y && y_misses_x;
}

struct Decomposer {
    const Field& F;
    std::vector<Brick>& out;

    // outermost radius of the hole as seen from a
    Radius reach(const Rat& a, const KDisc& h) const {
        return rmax(F.dist(a, h.a), h.r);
    }

    void closed_region(const Rat& a, const Radius& s, const std::vector<KDisc>& holes) {
        if (holes.empty()) {
            if (s.is_zero()) out.push_back(Brick::rational_point(a));
            else out.push_back(Brick::tube(F, a, s, {}));
            return;
        }
        for (const auto& h : holes)
            if (h.closed && h.r == s && F.dist(a, h.a) <= s)
                return; // hole is the whole region
        // group holes by residue disc at level s
        std::vector<std::vector<KDisc>> groups;
        std::vector<Rat> reps;
        for (const auto& h : holes) {
            bool placed = false;
            for (size_t g = 0; g < reps.size(); ++g)
                if (F.dist(reps[g], h.a) < s) {
                    groups[g].push_back(h);
                    placed = true;
                }
            if (!placed) {
                reps.push_back(h.a);
                groups.push_back({h});
            }
        }
        out.push_back(Brick::tube(F, a, s, reps));
        for (size_t g = 0; g < groups.size(); ++g) {
            // residue disc removed entirely by an open hole of full radius
            if (groups[g].size() == 1 && !groups[g][0].closed && groups[g][0].r == s)
                continue;
            open_region(reps[g], s, groups[g]);
        }
    }

    void open_region(const Rat& a, const Radius& s, const std::vector<KDisc>& holes) {
        if (holes.empty()) {
            out.push_back(Brick::open_disc(a, s));
            return;
        }
        for (const auto& h : holes)
            if (!h.closed && h.r == s) return; // hole fills the region
        Radius v = Radius::zero();
        for (const auto& h : holes) v = rmax(v, reach(a, h));
        if (v < s) out.push_back(Brick::open_annulus(a, v, s));
        closed_region(a, v, holes);
    }
};

} // namespace

RadialSet cheese_lift(const Field& F, const SwissCheese& x) {
    SetExpr e = disc_bset(x.outer);
    for (const auto& h : x.holes) e = SetExpr::diff(e, disc_bset(h));
    return bool_normalize(F, e);
}

CheesePartition cheese_to_bricks(const Field& F, const std::vector<SwissCheese>& xs) {
    if (xs.empty()) throw validation_error("no cheeses given");
    for (const auto& x : xs) {
        for (const auto& h : x.holes)
            if (!proper_subdisc(F, h, x.outer))
                throw validation_error("hole " + h.str() +
                                       " is not properly inside " + x.outer.str());
        for (size_t i = 0; i < x.holes.size(); ++i)
            for (size_t j = i + 1; j < x.holes.size(); ++j)
                if (!discs_disjoint(F, x.holes[i], x.holes[j]))
                    throw validation_error("holes " + x.holes[i].str() + " and " +
                                           x.holes[j].str() + " overlap");
    }
    CheesePartition part;
    for (const auto& x : xs) part.lift.push_back(cheese_lift(F, x));
    if (xs.size() > 1) {
        for (size_t i = 0; i < xs.size(); ++i)
            for (size_t j = i + 1; j < xs.size(); ++j)
                if (!is_empty(F, SetExpr::intersect({SetExpr::of(part.lift[i]),
                                                     SetExpr::of(part.lift[j])})))
                    throw validation_error("cheeses " + std::to_string(i) + " and " +
                                           std::to_string(j) + " overlap");
        std::vector<SetExpr> all;
        for (const auto& l : part.lift) all.push_back(SetExpr::of(l));
        if (!is_empty(F, SetExpr::complement(SetExpr::unite(std::move(all)))))
            throw validation_error("cheeses do not cover the line");
    }
    for (size_t i = 0; i < xs.size(); ++i) {
        size_t before = part.bricks.size();
        Decomposer dec{F, part.bricks};
        const auto& x = xs[i];
        if (x.outer.closed) dec.closed_region(x.outer.a, x.outer.r, x.holes);
        else dec.open_region(x.outer.a, x.outer.r, x.holes);
        for (size_t b = before; b < part.bricks.size(); ++b)
            part.brick_cheese.push_back(static_cast<int>(i));
    }
    return part;
}

} // namespace berk
