#include "berk/facade.hpp"

#include <algorithm>

namespace berk {

std::string Domain::str() const {
    std::string s = brick.str();
    if (has_infinity) s += " + inf";
    return s;
}

bool domain_member(const Field& F, const BPoint& y, const Domain& dom) {
    return member(F, y, dom.brick);
}

bool domain_eq(const Field& F, const Domain& a, const Domain& b) {
    if (a.has_infinity != b.has_infinity) return false;
    if (a.brick.kind != b.brick.kind) return false;
    const Brick& x = a.brick;
    const Brick& y = b.brick;
    switch (x.kind) {
    case Brick::Kind::B0:
        return x.a == y.a;
    case Brick::Kind::B1:
        return x.s == y.s && (x.s.is_inf() || F.dist(x.a, y.a) < x.s);
    case Brick::Kind::B2:
        return x.s1 == y.s1 && x.s2 == y.s2 &&
               rmax(F.dist(x.a, y.a), x.s1) < x.s2;
    case Brick::Kind::B3: {
        if (x.s != y.s || F.dist(x.a, y.a) > x.s) return false;
        if (x.holes.size() != y.holes.size()) return false;
        for (const auto& h : x.holes) {
            bool found = false;
            for (const auto& g : y.holes)
                if (F.dist(h, g) < x.s) found = true;
            if (!found) return false;
        }
        return true;
    }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Triangulations

static void check_supported(const Domain& dom) {
    auto k = dom.brick.kind;
    if (k != Brick::Kind::B1 && k != Brick::Kind::B3)
        throw unsupported_error(
            "triangulation domains must be open discs or tubes, got " +
            dom.brick.str());
    if (dom.has_infinity &&
        !(k == Brick::Kind::B1 && dom.brick.s.is_inf()))
        throw unsupported_error(
            "the point at infinity requires the full-line domain");
}

Triangulation triangulate(const Field& F, const Domain& dom,
                          std::vector<BPoint> points) {
    check_supported(dom);
    // drop duplicates under the disc relation
    std::vector<BPoint> pts;
    for (const auto& y : points) {
        bool dup = false;
        for (const auto& z : pts)
            if (point_eq(F, y, z)) dup = true;
        if (!dup) pts.push_back(y);
    }
    if (pts.empty())
        throw validation_error(
            "triangulation: the point set misses the component " + dom.str());
    for (const auto& y : pts)
        if (!domain_member(F, y, dom))
            throw validation_error("triangulation: point " + y.str() +
                                   " lies outside the domain " + dom.str());
    DiscTree tree = span_tree(F, pts);
    for (const auto& n : tree.nodes) {
        bool present = false;
        for (const auto& y : pts)
            if (point_eq(F, n, y)) present = true;
        if (!present)
            throw validation_error(
                "triangulation: the component at the join " + n.str() +
                " is neither an open disc nor an open annulus");
    }
    const BPoint& root = tree.nodes[tree.root()];
    if (dom.brick.kind == Brick::Kind::B3) {
        BPoint boundary{dom.brick.a, dom.brick.s};
        if (!point_eq(F, root, boundary))
            throw validation_error(
                "triangulation: the component at the boundary point " +
                boundary.str() + " is not an open disc or annulus");
    }
    if (dom.has_infinity && root.type() != 2)
        throw validation_error(
            "triangulation: the component at infinity requires a type-2 "
            "point, the nearest point is " +
            root.str());
    return {dom, tree.nodes};
}

Triangulation refine(const Field& F, const Triangulation& tri,
                     const std::vector<BPoint>& extra) {
    std::vector<BPoint> pts = tri.points;
    pts.insert(pts.end(), extra.begin(), extra.end());
    return triangulate(F, tri.domain, pts);
}

// ---------------------------------------------------------------------------
// Skeleton and retraction

bool SkeletonGraph::on_skeleton(const Field& F, const BPoint& y) const {
    for (const auto& v : vertices)
        if (point_eq(F, y, v)) return true;
    for (const auto& e : edges)
        if (e.lo < y.r && y.r < e.hi && F.dist(y.a, e.c) <= y.r) return true;
    return false;
}

std::string SkeletonGraph::to_dot() const {
    std::string out = "graph skeleton {\n";
    for (size_t i = 0; i < vertices.size(); ++i)
        out += "  v" + std::to_string(i) + " [label=\"" + vertices[i].str() +
               "\"];\n";
    int ray = 0;
    for (const auto& e : edges) {
        std::string from = "v" + std::to_string(e.child);
        std::string to = e.parent >= 0 ? "v" + std::to_string(e.parent)
                                       : "r" + std::to_string(ray++);
        if (e.parent < 0) out += "  " + to + " [shape=point];\n";
        out += "  " + from + " -- " + to + " [label=\"(" + e.lo.str() + "," +
               e.hi.str() + ")\"];\n";
    }
    out += "}\n";
    return out;
}

Retraction skeleton_retract(const Field& F, const Triangulation& tri) {
    Triangulation checked = triangulate(F, tri.domain, tri.points);
    SkeletonGraph g;
    g.vertices = checked.points;
    DiscTree tree = span_tree(F, g.vertices);
    for (size_t i = 0; i < tree.nodes.size(); ++i)
        if (tree.parent[i] >= 0)
            g.edges.push_back({(int)i, tree.parent[i], tree.nodes[i].a,
                               tree.nodes[i].r, tree.nodes[tree.parent[i]].r});
    if (tri.domain.brick.kind == Brick::Kind::B1 && !tri.domain.has_infinity) {
        int r = tree.root();
        g.edges.push_back({r, -1, tree.nodes[r].a, tree.nodes[r].r,
                           tri.domain.brick.s});
    }
    return {std::move(g)};
}

// The nearest skeleton point above y in the affine chart, or nullopt when y
// sits in the component at infinity.
static std::optional<BPoint> affine_tau(const Field& F, const SkeletonGraph& g,
                                        const BPoint& y) {
    std::optional<BPoint> best;
    auto offer = [&](const BPoint& cand) {
        if (!best || cand.r < best->r) best = cand;
    };
    for (const auto& v : g.vertices)
        if (y.r <= v.r && F.dist(y.a, v.a) <= v.r) offer(BPoint{y.a, v.r});
    for (const auto& e : g.edges) {
        Radius u = rmax(y.r, F.dist(y.a, e.c));
        if (e.lo < u && u < e.hi) offer(BPoint{y.a, u});
    }
    return best;
}

// The chart at infinity: w = s/(T - c) with |s| = R identifies
// {|T - c| > R} + inf with the open unit disc, sending inf to 0.
static RationalMap infinity_chart(const Rat& c, const Rat& s) {
    return RationalMap::of(Polynomial::of({s}), Polynomial::of({-c, Rat(1)}));
}

static RationalMap infinity_chart_inverse(const Rat& c, const Rat& s) {
    return RationalMap::of(Polynomial::of({s, c}), Polynomial::of({Rat(0), Rat(1)}));
}

// The scaling s with |s| = r, requiring an integer exponent.
static Rat radius_scalar(const Field& F, const Radius& r) {
    if (!r.is_finite())
        throw unsupported_error("chart radius must be finite and nonzero");
    const Rat& q = r.exponent();
    if (q.get_den() != 1)
        throw unsupported_error("chart radius p^" + rat_to_string(q) +
                                " is not an integer power of p");
    long e = q.get_num().get_si();
    Rat s(int_pow(F.p(), e < 0 ? -e : e));
    return e < 0 ? Rat(1) / s : s;
}

BPoint Retraction::tau(const Field& F, const Domain& dom,
                       const BPoint& y) const {
    if (!domain_member(F, y, dom))
        throw domain_error("tau: point " + y.str() + " outside the domain");
    if (auto t = affine_tau(F, graph, y)) return *t;
    // only the component at infinity is left without a skeleton above it
    if (!dom.has_infinity)
        throw domain_error("tau: no skeleton point above " + y.str());
    DiscTree tree = span_tree(F, graph.vertices);
    return tree.nodes[tree.root()];
}

BPoint Retraction::nu(const Field& F, const Domain& dom, const Radius& t,
                      const BPoint& y) const {
    if (Radius::one() < t)
        throw validation_error("nu: the flow parameter must lie in [0, 1]");
    BPoint end = tau(F, dom, y);
    if (auto direct = affine_tau(F, graph, y)) {
        Radius level = t.is_zero() ? Radius::zero() : t * direct->r;
        return BPoint{y.a, rmax(y.r, level)};
    }
    // flow inside the disc at infinity, through the 1/T chart
    Rat s = radius_scalar(F, end.r);
    BPoint w = pushforward(F, infinity_chart(end.a, s), y).point;
    Radius level = t.is_zero() ? w.r : rmax(w.r, t);
    if (level == Radius::one()) return end;
    ProjPoint back =
        pushforward(F, infinity_chart_inverse(end.a, s), BPoint{w.a, level});
    return back.point;
}

Triangulation prune(const Field& F, const Triangulation& tri,
                    const std::vector<BPoint>& protect) {
    Triangulation cur = triangulate(F, tri.domain, tri.points);
    bool changed = true;
    while (changed) {
        changed = false;
        Retraction r = skeleton_retract(F, cur);
        for (size_t i = 0; i < cur.points.size() && !changed; ++i) {
            bool keep = false;
            for (const auto& p : protect)
                if (point_eq(F, cur.points[i], p)) keep = true;
            if (keep) continue;
            int arity = 0;
            for (const auto& e : r.graph.edges)
                if (e.child == (int)i || e.parent == (int)i) ++arity;
            if (arity > 2) continue;
            std::vector<BPoint> rest;
            for (size_t j = 0; j < cur.points.size(); ++j)
                if (j != i) rest.push_back(cur.points[j]);
            try {
                cur = triangulate(F, cur.domain, rest);
                changed = true;
            } catch (const validation_error&) {
            }
        }
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Facades

EncodedPoint EncodedPoint::on_edge(int e, BPoint eta) {
    EncodedPoint p{Kind::Edge};
    p.edge = e;
    p.eta = std::move(eta);
    return p;
}

EncodedPoint EncodedPoint::in_tube(int v, Int alpha, BPoint eta) {
    EncodedPoint p{Kind::Tube, v};
    p.alpha = std::move(alpha);
    p.eta = std::move(eta);
    return p;
}

EncodedPoint EncodedPoint::in_disc(int v, int i, BPoint eta) {
    EncodedPoint p{Kind::Disc, v};
    p.disc = i;
    p.eta = std::move(eta);
    return p;
}

std::string EncodedPoint::str() const {
    switch (kind) {
    case Kind::Vtx1: return "Vtx1(" + std::to_string(vertex) + ")";
    case Kind::Vtx2: return "Vtx2(" + std::to_string(vertex) + ")";
    case Kind::Edge:
        return "Edge(" + std::to_string(edge) + ", " + eta->str() + ")";
    case Kind::Tube:
        return "Tube(" + std::to_string(vertex) + ", " + alpha.get_str() +
               ", " + eta->str() + ")";
    case Kind::Disc:
        return "Disc(" + std::to_string(vertex) + ", " + std::to_string(disc) +
               ", " + eta->str() + ")";
    }
    return "?";
}

bool encoded_eq(const Field& F, const EncodedPoint& a, const EncodedPoint& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case EncodedPoint::Kind::Vtx1:
    case EncodedPoint::Kind::Vtx2:
        return a.vertex == b.vertex;
    case EncodedPoint::Kind::Edge:
        return a.edge == b.edge && point_eq(F, *a.eta, *b.eta);
    case EncodedPoint::Kind::Tube:
        return a.vertex == b.vertex && a.alpha == b.alpha &&
               point_eq(F, *a.eta, *b.eta);
    case EncodedPoint::Kind::Disc:
        return a.vertex == b.vertex && a.disc == b.disc &&
               point_eq(F, *a.eta, *b.eta);
    }
    return false;
}

Facade build_facade(const Field& F, const Triangulation& tri) {
    Triangulation checked = triangulate(F, tri.domain, tri.points);
    Retraction r = skeleton_retract(F, checked);
    DiscTree tree = span_tree(F, checked.points);
    int root = tree.root();
    Facade fa{F, checked.domain, checked.points, std::move(r), {}};
    for (size_t i = 0; i < fa.S.size(); ++i) {
        const BPoint& x = fa.S[i];
        if (x.type() != 2) {
            fa.charts.push_back(std::nullopt);
            continue;
        }
        VertexChart ch;
        ch.c = x.a;
        ch.u = radius_scalar(F, x.r);
        for (const auto& e : fa.graph().edges)
            if (e.parent == (int)i)
                ch.excluded.push_back(
                    F.residue((fa.S[e.child].a - ch.c) / ch.u));
        if (fa.dom.brick.kind == Brick::Kind::B3 && (int)i == root)
            for (const auto& b : fa.dom.brick.holes)
                ch.excluded.push_back(F.residue((b - ch.c) / ch.u));
        std::sort(ch.excluded.begin(), ch.excluded.end());
        ch.excluded.erase(std::unique(ch.excluded.begin(), ch.excluded.end()),
                          ch.excluded.end());
        if (fa.dom.has_infinity && (int)i == root)
            ch.discs.push_back(infinity_chart(ch.c, ch.u));
        fa.charts.push_back(std::move(ch));
    }
    return fa;
}

EncodedPoint encode(const Facade& fa, const BPoint& y) {
    const Field& F = fa.field;
    if (!domain_member(F, y, fa.dom))
        throw domain_error("encode: point " + y.str() + " outside the domain");
    for (size_t i = 0; i < fa.S.size(); ++i)
        if (point_eq(F, y, fa.S[i]))
            return fa.S[i].type() == 1 ? EncodedPoint::vtx1((int)i)
                                       : EncodedPoint::vtx2((int)i);
    // the minimal skeleton region whose closure contains y
    std::optional<Radius> best;
    int vtx = -1, edg = -1;
    for (size_t i = 0; i < fa.S.size(); ++i) {
        const BPoint& v = fa.S[i];
        if (y.r <= v.r && F.dist(y.a, v.a) <= v.r && (!best || v.r < *best)) {
            best = v.r;
            vtx = (int)i;
            edg = -1;
        }
    }
    for (size_t e = 0; e < fa.graph().edges.size(); ++e) {
        const SkeletonEdge& ed = fa.graph().edges[e];
        Radius u = rmax(y.r, F.dist(y.a, ed.c));
        if (ed.lo < u && u < ed.hi && (!best || u < *best)) {
            best = u;
            vtx = -1;
            edg = (int)e;
        }
    }
    if (edg >= 0) {
        const SkeletonEdge& ed = fa.graph().edges[edg];
        return EncodedPoint::on_edge(edg, BPoint{y.a - ed.c, y.r});
    }
    if (vtx >= 0) {
        const VertexChart& ch = *fa.charts[vtx];
        BPoint eta{(y.a - ch.c) / ch.u, y.r * fa.S[vtx].r.inverse()};
        Int alpha = F.residue(eta.a);
        return EncodedPoint::in_tube(vtx, std::move(alpha), std::move(eta));
    }
    // the component at infinity: a retained disc of the root vertex
    DiscTree tree = span_tree(F, fa.S);
    int root = tree.root();
    if (!fa.dom.has_infinity || fa.charts[root]->discs.empty())
        throw domain_error("encode: no chart covers " + y.str());
    BPoint eta = pushforward(F, fa.charts[root]->discs[0], y).point;
    return EncodedPoint::in_disc(root, 0, std::move(eta));
}

BPoint decode(const Facade& fa, const EncodedPoint& e) {
    const Field& F = fa.field;
    if (e.kind == EncodedPoint::Kind::Edge) {
        if (e.edge < 0 || e.edge >= (int)fa.graph().edges.size())
            throw validation_error("decode: unknown edge id");
        const SkeletonEdge& ed = fa.graph().edges[e.edge];
        const BPoint& eta = *e.eta;
        Radius u = rmax(F.abs(eta.a), eta.r);
        if (!(ed.lo < u && u < ed.hi))
            throw validation_error("decode: " + eta.str() +
                                   " outside the edge annulus");
        return BPoint{eta.a + ed.c, eta.r};
    }
    if (e.vertex < 0 || e.vertex >= (int)fa.S.size())
        throw validation_error("decode: unknown vertex id");
    const BPoint& x = fa.S[e.vertex];
    switch (e.kind) {
    case EncodedPoint::Kind::Vtx1:
        if (x.type() != 1)
            throw validation_error("decode: Vtx1 names a type-2 vertex");
        return x;
    case EncodedPoint::Kind::Vtx2:
        if (x.type() != 2)
            throw validation_error("decode: Vtx2 names a type-1 vertex");
        return x;
    case EncodedPoint::Kind::Tube: {
        if (!fa.charts[e.vertex])
            throw validation_error("decode: tube at a type-1 vertex");
        const VertexChart& ch = *fa.charts[e.vertex];
        const BPoint& eta = *e.eta;
        if (Radius::one() < F.abs(eta.a) || !(eta.r < Radius::one()))
            throw validation_error("decode: " + eta.str() +
                                   " outside the tube chart");
        if (F.residue(eta.a) != e.alpha)
            throw validation_error("decode: residue " + e.alpha.get_str() +
                                   " breaks red(" + eta.str() + ") = alpha");
        for (const auto& ex : ch.excluded)
            if (ex == F.residue(eta.a))
                throw validation_error("decode: residue " + ex.get_str() +
                                       " is not in U_x");
        return BPoint{eta.a * ch.u + ch.c, eta.r * x.r};
    }
    case EncodedPoint::Kind::Disc: {
        if (!fa.charts[e.vertex] || e.disc < 0 ||
            e.disc >= (int)fa.charts[e.vertex]->discs.size())
            throw validation_error("decode: unknown retained disc");
        const VertexChart& ch = *fa.charts[e.vertex];
        const BPoint& eta = *e.eta;
        if (!(rmax(F.abs(eta.a), eta.r) < Radius::one()))
            throw validation_error("decode: " + eta.str() +
                                   " outside the unit disc");
        ProjPoint back = pushforward(
            F, infinity_chart_inverse(ch.c, ch.u), eta);
        if (back.at_infinity)
            throw domain_error("decode: the point at infinity has no "
                               "affine coordinates");
        return back.point;
    }
    default:
        throw validation_error("decode: malformed encoded point");
    }
}

EncodedPoint transport_id(const Facade& F1, const Facade& F2,
                          const EncodedPoint& e) {
    const Field& F = F1.field;
    if (F.p() != F2.field.p() || !domain_eq(F, F1.dom, F2.dom))
        throw validation_error("transport: facades live on different domains");
    for (const auto& x : F1.S) {
        bool found = false;
        for (const auto& y : F2.S)
            if (point_eq(F, x, y)) found = true;
        if (!found)
            throw validation_error("transport: " + x.str() +
                                   " missing from the refinement");
    }
    return encode(F2, decode(F1, e));
}

// ---------------------------------------------------------------------------
// Morphism transport

static Radius midpoint(const Radius& lo, const Radius& hi) {
    if (hi.is_inf())
        return Radius::exp(lo.is_zero() ? Rat(1) : lo.exponent() + 1);
    if (lo.is_zero()) return Radius::exp(hi.exponent() - 1);
    return Radius::exp((lo.exponent() + hi.exponent()) / 2);
}

static int vertex_of(const Facade& fa, const BPoint& y) {
    for (size_t i = 0; i < fa.S.size(); ++i)
        if (point_eq(fa.field, y, fa.S[i])) return (int)i;
    return -1;
}

void check_compatible(const RationalMap& h, const Facade& F1,
                      const Facade& F2) {
    const Field& F = F1.field;
    if (F.p() != F2.field.p())
        throw validation_error("compatibility: facades over different primes");
    for (const auto& x : F1.S) {
        ProjPoint img = pushforward(F, h, x);
        if (img.at_infinity || vertex_of(F2, img.point) < 0)
            throw validation_error("incompatible pair: the image of vertex " +
                                   x.str() + " is not a vertex of S2");
    }
    for (const auto& y : F2.S) {
        Fiber fib = fiber_count(F, h, y);
        for (const auto& z : fib.points)
            if (domain_member(F, z, F1.dom) && vertex_of(F1, z) < 0)
                throw validation_error(
                    "incompatible pair: the fiber point " + z.str() +
                    " above " + y.str() + " is not a vertex of S1");
    }
    for (const auto& e : F1.graph().edges) {
        BPoint mid{e.c, midpoint(e.lo, e.hi)};
        ProjPoint img = pushforward(F, h, mid);
        if (img.at_infinity ||
            encode(F2, img.point).kind != EncodedPoint::Kind::Edge)
            throw validation_error(
                "incompatible pair: the edge point " + mid.str() +
                " does not map to an edge of S2");
    }
}

EncodedPoint map_transport(const RationalMap& h, const Facade& F1,
                           const Facade& F2, const EncodedPoint& e) {
    check_compatible(h, F1, F2);
    const Field& F = F1.field;
    // the code of the point at infinity maps through h directly
    if (e.kind == EncodedPoint::Kind::Disc && e.eta->a == 0 &&
        e.eta->r.is_zero()) {
        if (h.num.degree() > h.den.degree()) {
            if (!F2.dom.has_infinity)
                throw domain_error(
                    "transport: the image is the point at infinity");
            DiscTree tree = span_tree(F, F2.S);
            return EncodedPoint::in_disc(tree.root(), 0,
                                         BPoint{0, Radius::zero()});
        }
        Rat top = h.num.degree() < h.den.degree()
                      ? Rat(0)
                      : h.num.coeffs.back() / h.den.coeffs.back();
        return encode(F2, BPoint{top, Radius::zero()});
    }
    ProjPoint img = pushforward(F, h, decode(F1, e));
    if (img.at_infinity) {
        if (!F2.dom.has_infinity)
            throw domain_error("transport: the image is the point at infinity");
        DiscTree tree = span_tree(F, F2.S);
        return EncodedPoint::in_disc(tree.root(), 0, BPoint{0, Radius::zero()});
    }
    return encode(F2, img.point);
}

CompiledMap compile_map(const RationalMap& h, const Facade& F1,
                        const Facade& F2) {
    check_compatible(h, F1, F2);
    if (!h.is_polynomial())
        throw unsupported_error("compile: only polynomial maps have a "
                                "monomial edge description");
    const Field& F = F1.field;
    Polynomial hp = h.as_polynomial();
    CompiledMap out;
    for (size_t e = 0; e < F1.graph().edges.size(); ++e) {
        const SkeletonEdge& ed = F1.graph().edges[e];
        for (const auto& pc : skeleton_monomial(F, hp, ed.c, ed.lo, ed.hi))
            out.edges.push_back({(int)e, pc.lo, pc.hi, pc.m, pc.degree});
    }
    for (size_t i = 0; i < F1.S.size(); ++i) {
        if (!F1.charts[i]) continue;
        const VertexChart& c1 = *F1.charts[i];
        int j = vertex_of(F2, pushforward(F, h, F1.S[i]).point);
        const VertexChart& c2 = *F2.charts[j];
        Polynomial g = hp.compose(Polynomial::of({c1.c, c1.u}));
        std::vector<Rat> coeffs = g.coeffs;
        if (coeffs.empty()) coeffs.push_back(0);
        coeffs[0] -= c2.c;
        std::vector<Int> res;
        for (auto& c : coeffs) {
            c /= c2.u;
            if (Radius::one() < F.abs(c))
                throw unsupported_error(
                    "compile: the conjugated map at vertex " + F1.S[i].str() +
                    " is not integral");
            res.push_back(F.residue(c));
        }
        while (res.size() > 1 && res.back() == 0) res.pop_back();
        out.tubes.push_back({(int)i, j, std::move(res)});
    }
    return out;
}

} // namespace berk
