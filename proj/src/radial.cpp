#include "berk/radial.hpp"

#include <sstream>

namespace berk {

BasicRadial BasicRadial::point(Rat a, Radius s) {
    if (s.is_inf()) throw validation_error("R0 radius must be finite");
    BasicRadial p{Kind::R0, std::move(a)};
    p.s = std::move(s);
    return p;
}

BasicRadial BasicRadial::branch_segment(Rat a, Radius s1, Radius s2) {
    if (s1.is_inf()) throw validation_error("R1 lower bound must be finite");
    BasicRadial p{Kind::R1, std::move(a)};
    p.s1 = std::move(s1);
    p.s2 = std::move(s2);
    return p;
}

BasicRadial BasicRadial::annulus_graph(Rat a, Radius s1, Radius s2, Monomial m1) {
    if (s1.is_inf()) throw validation_error("R2 inner radius must be finite");
    if (m1.coeff.is_inf()) throw validation_error("R2 coefficient must be finite");
    BasicRadial p{Kind::R2, std::move(a)};
    p.s1 = std::move(s1);
    p.s2 = std::move(s2);
    p.m1 = std::move(m1);
    return p;
}

BasicRadial BasicRadial::annulus_band(Rat a, Radius s1, Radius s2, Monomial m1, Monomial m2) {
    if (s1.is_inf()) throw validation_error("R3 inner radius must be finite");
    if (m1.coeff.is_inf() || m2.coeff.is_inf())
        throw validation_error("R3 coefficients must be finite");
    BasicRadial p{Kind::R3, std::move(a)};
    p.s1 = std::move(s1);
    p.s2 = std::move(s2);
    p.m1 = std::move(m1);
    p.m2 = std::move(m2);
    return p;
}

BasicRadial BasicRadial::closed_cyl_level(Rat a, Radius s, std::vector<Rat> holes, Radius s1) {
    if (!s.is_finite()) throw validation_error("R4 outer radius must be finite nonzero");
    if (s1.is_inf()) throw validation_error("R4 level must be finite");
    BasicRadial p{Kind::R4, std::move(a)};
    p.s = std::move(s);
    p.s1 = std::move(s1);
    p.holes = std::move(holes);
    return p;
}

BasicRadial BasicRadial::closed_cyl_band(Rat a, Radius s, std::vector<Rat> holes,
                                         Radius s1, Radius s2) {
    if (!s.is_finite()) throw validation_error("R5 outer radius must be finite nonzero");
    if (s1.is_inf() || s2.is_inf()) throw validation_error("R5 band must be finite");
    BasicRadial p{Kind::R5, std::move(a)};
    p.s = std::move(s);
    p.s1 = std::move(s1);
    p.s2 = std::move(s2);
    p.holes = std::move(holes);
    return p;
}

BasicRadial BasicRadial::open_cyl_level(Rat a, Radius s, Radius s1) {
    if (s.is_zero()) throw validation_error("R6 outer radius must be nonzero");
    if (s1.is_inf()) throw validation_error("R6 level must be finite");
    BasicRadial p{Kind::R6, std::move(a)};
    p.s = std::move(s);
    p.s1 = std::move(s1);
    return p;
}

BasicRadial BasicRadial::open_cyl_band(Rat a, Radius s, Radius s1, Radius s2) {
    if (s.is_zero()) throw validation_error("R7 outer radius must be nonzero");
    if (s1.is_inf()) throw validation_error("R7 lower bound must be finite");
    BasicRadial p{Kind::R7, std::move(a)};
    p.s = std::move(s);
    p.s1 = std::move(s1);
    p.s2 = std::move(s2);
    return p;
}

std::string BasicRadial::str() const {
    static const char* names[] = {"R0", "R1", "R2", "R3", "R4", "R5", "R6", "R7"};
    std::ostringstream os;
    os << names[static_cast<int>(kind)] << "{a=" << rat_to_string(a);
    switch (kind) {
    case Kind::R0: os << ", s=" << s.str(); break;
    case Kind::R1: os << ", s1=" << s1.str() << ", s2=" << s2.str(); break;
    case Kind::R2:
        os << ", s1=" << s1.str() << ", s2=" << s2.str() << ", m=" << m1.str();
        break;
    case Kind::R3:
        os << ", s1=" << s1.str() << ", s2=" << s2.str() << ", m1=" << m1.str()
           << ", m2=" << m2.str();
        break;
    case Kind::R4:
    case Kind::R5:
        os << ", s=" << s.str();
        os << ", holes={";
        for (size_t i = 0; i < holes.size(); ++i)
            os << (i ? "," : "") << rat_to_string(holes[i]);
        os << "}, s1=" << s1.str();
        if (kind == Kind::R5) os << ", s2=" << s2.str();
        break;
    case Kind::R6: os << ", s=" << s.str() << ", s1=" << s1.str(); break;
    case Kind::R7:
        os << ", s=" << s.str() << ", s1=" << s1.str() << ", s2=" << s2.str();
        break;
    }
    os << "}";
    return os.str();
}

namespace {

// D(x,r) is inside the closed disc D(a,s): max(|x-a|, r) <= s.
bool in_closed(const Radius& d, const Radius& r, const Radius& s) {
    return rmax(d, r) <= s;
}

// D(x,r) is inside the open disc D^-(a,s); s = inf means the whole line.
bool in_open(const Radius& d, const Radius& r, const Radius& s) {
    return s.is_inf() || rmax(d, r) < s;
}

// D(x,r) misses the closed disc D(a,s): the discs are disjoint exactly when
// neither center lies in the other disc.
bool avoids_closed(const Radius& d, const Radius& r, const Radius& s) {
    return d > s && d > r;
}

// D(x,r) misses the open disc D^-(b,s).
bool avoids_open(const Radius& d, const Radius& r, const Radius& s) {
    return d >= s && d > r;
}

} // namespace

bool member_core(const BasicRadial& p, const DistFn& dist, const Radius& r) {
    using K = BasicRadial::Kind;
    Radius d = dist(p.a);
    switch (p.kind) {
    case K::R0:
        return r == p.s && d <= p.s;
    case K::R1:
        return d <= r && p.s1 < r && r < p.s2;
    case K::R2:
    case K::R3: {
        bool dom = in_open(d, r, p.s2) && avoids_closed(d, r, p.s1);
        if (!dom) return false;
        // Here d > r, so |x - a| = d for every representative of the class.
        if (p.kind == K::R2) return p.m1.eval(d) == r && r < d;
        Radius hi = p.m2.eval(d);
        return p.m1.eval(d) < r && r < hi && hi <= d;
    }
    case K::R4:
    case K::R5: {
        if (!in_closed(d, r, p.s)) return false;
        for (const auto& b : p.holes)
            if (!avoids_open(dist(b), r, p.s)) return false;
        if (p.kind == K::R4) return r == p.s1;
        return p.s1 < r && r < p.s2;
    }
    case K::R6:
        return in_open(d, r, p.s) && r == p.s1;
    case K::R7:
        return in_open(d, r, p.s) && p.s1 < r && r < p.s2;
    }
    return false;
}

bool member(const Field& F, const BPoint& x, const BasicRadial& p) {
    return member_core(p, [&](const Rat& c) { return F.dist(x.a, c); }, x.r);
}

bool member(const Field& F, const BPoint& x, const RadialSet& s) {
    for (const auto& p : s.pieces)
        if (member(F, x, p)) return true;
    return false;
}

SetExpr SetExpr::of(BasicRadial p) {
    SetExpr e;
    e.op = Op::Leaf;
    e.leaf = std::move(p);
    return e;
}

SetExpr SetExpr::of(const RadialSet& s) {
    std::vector<SetExpr> xs;
    for (const auto& p : s.pieces) xs.push_back(of(p));
    return unite(std::move(xs));
}

SetExpr SetExpr::unite(std::vector<SetExpr> xs) {
    SetExpr e;
    e.op = Op::Union;
    e.args = std::move(xs);
    return e;
}

SetExpr SetExpr::intersect(std::vector<SetExpr> xs) {
    SetExpr e;
    e.op = Op::Inter;
    e.args = std::move(xs);
    return e;
}

SetExpr SetExpr::diff(SetExpr x, SetExpr y) {
    SetExpr e;
    e.op = Op::Diff;
    e.args.push_back(std::move(x));
    e.args.push_back(std::move(y));
    return e;
}

SetExpr SetExpr::complement(SetExpr x) {
    SetExpr e;
    e.op = Op::Compl;
    e.args.push_back(std::move(x));
    return e;
}

bool member_core(const SetExpr& e, const DistFn& dist, const Radius& r) {
    switch (e.op) {
    case SetExpr::Op::Leaf:
        return member_core(e.leaf, dist, r);
    case SetExpr::Op::Union:
        for (const auto& x : e.args)
            if (member_core(x, dist, r)) return true;
        return false;
    case SetExpr::Op::Inter:
        for (const auto& x : e.args)
            if (!member_core(x, dist, r)) return false;
        return !e.args.empty();
    case SetExpr::Op::Diff:
        if (e.args.size() != 2) throw validation_error("diff takes two arguments");
        return member_core(e.args[0], dist, r) && !member_core(e.args[1], dist, r);
    case SetExpr::Op::Compl:
        if (e.args.size() != 1) throw validation_error("compl takes one argument");
        return !member_core(e.args[0], dist, r);
    }
    return false;
}

bool member(const Field& F, const BPoint& x, const SetExpr& e) {
    return member_core(e, [&](const Rat& c) { return F.dist(x.a, c); }, x.r);
}

} // namespace berk
