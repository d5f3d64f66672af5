#include "berk/curveradial.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace berk {

namespace {

const Monomial ZERO_BOUND = Monomial::constant(Radius::zero());
const Monomial ONE_BOUND = Monomial::constant(Radius::one());

bool within(const Radius& lo, bool lo_in, const Radius& v, const Radius& hi,
            bool hi_in) {
    if (v < lo || (v == lo && !lo_in)) return false;
    if (hi < v || (v == hi && !hi_in)) return false;
    return true;
}

Radius sample_between(const Radius& lo, const Radius& hi) {
    if (lo.is_zero())
        return hi.is_inf() ? Radius::one() : Radius::exp(hi.exponent() - 1);
    if (hi.is_inf()) return Radius::exp(lo.exponent() + 1);
    return Radius::exp((lo.exponent() + hi.exponent()) / 2);
}

} // namespace

CurvePiece CurvePiece::vertex_cyl(int v, Radius lo, bool lo_in, Radius hi,
                                  bool hi_in) {
    CurvePiece p{Kind::Vertex};
    p.vertex = v;
    p.lo = std::move(lo);
    p.lo_in = lo_in;
    p.hi = std::move(hi);
    p.hi_in = hi_in;
    return p;
}

CurvePiece CurvePiece::edge_band(const SkeletonGraph& g, int e, Monomial f1,
                                 bool f1_in, Monomial f2, bool f2_in) {
    return edge_band_on(e, g.edges[e].lo, false, g.edges[e].hi, false,
                        std::move(f1), f1_in, std::move(f2), f2_in);
}

CurvePiece CurvePiece::edge_band_on(int e, Radius tlo, bool tlo_in, Radius thi,
                                    bool thi_in, Monomial f1, bool f1_in,
                                    Monomial f2, bool f2_in) {
    CurvePiece p{Kind::Edge};
    p.edge = e;
    p.tlo = std::move(tlo);
    p.tlo_in = tlo_in;
    p.thi = std::move(thi);
    p.thi_in = thi_in;
    p.f1 = std::move(f1);
    p.f1_in = f1_in;
    p.f2 = std::move(f2);
    p.f2_in = f2_in;
    return p;
}

std::string CurvePiece::str() const {
    if (kind == Kind::Vertex)
        return "VertexCyl{v" + std::to_string(vertex) + ", " + lo.str() +
               (lo_in ? " <= " : " < ") + "rho" + (hi_in ? " <= " : " < ") +
               hi.str() + "}";
    return "EdgeBand{e" + std::to_string(edge) + ", t in " +
           (tlo_in ? "[" : "(") + tlo.str() + "," + thi.str() +
           (thi_in ? "]" : ")") + ", " + f1.str() + (f1_in ? " <= " : " < ") +
           "rho" + (f2_in ? " <= " : " < ") + f2.str() + "}";
}

CurveExpr CurveExpr::of(CurvePiece p) {
    CurveExpr e;
    e.leaf = std::move(p);
    return e;
}

CurveExpr CurveExpr::of(const CurveRadialSet& s) {
    std::vector<CurveExpr> xs;
    for (const auto& p : s.pieces) xs.push_back(of(p));
    return unite(std::move(xs));
}

CurveExpr CurveExpr::unite(std::vector<CurveExpr> xs) {
    CurveExpr e;
    e.op = Op::Union;
    e.args = std::move(xs);
    return e;
}

CurveExpr CurveExpr::intersect(std::vector<CurveExpr> xs) {
    CurveExpr e;
    e.op = Op::Inter;
    e.args = std::move(xs);
    return e;
}

CurveExpr CurveExpr::diff(CurveExpr x, CurveExpr y) {
    CurveExpr e;
    e.op = Op::Diff;
    e.args.push_back(std::move(x));
    e.args.push_back(std::move(y));
    return e;
}

CurveExpr CurveExpr::complement(CurveExpr x) {
    CurveExpr e;
    e.op = Op::Compl;
    e.args.push_back(std::move(x));
    return e;
}

// ---------------------------------------------------------------------------
// rho and membership

RhoValue rho_point(const Facade& fa, const BPoint& y) {
    const Field& F = fa.field;
    if (!domain_member(F, y, fa.dom))
        throw domain_error("rho: point " + y.str() + " outside the domain");
    for (size_t i = 0; i < fa.S.size(); ++i)
        if (point_eq(F, y, fa.S[i])) {
            RhoValue out;
            out.vertex = (int)i;
            return out;
        }
    RhoValue out;
    std::optional<Radius> best;
    for (size_t i = 0; i < fa.S.size(); ++i) {
        const BPoint& v = fa.S[i];
        if (v.r.is_zero()) continue; // only the vertex point itself, handled
        if (y.r <= v.r && F.dist(y.a, v.a) <= v.r && (!best || v.r < *best)) {
            best = v.r;
            out = {(int)i, -1, Radius::zero(), y.r * v.r.inverse()};
        }
    }
    for (size_t e = 0; e < fa.graph().edges.size(); ++e) {
        const SkeletonEdge& ed = fa.graph().edges[e];
        Radius u = rmax(y.r, F.dist(y.a, ed.c));
        if (ed.lo < u && u < ed.hi && (!best || u < *best)) {
            best = u;
            out = {-1, (int)e, u, y.r * u.inverse()};
        }
    }
    if (best) return out;
    // the component at infinity retracts onto the root vertex
    DiscTree tree = span_tree(F, fa.S);
    int root = tree.root();
    if (!fa.dom.has_infinity || !fa.charts[root] ||
        fa.charts[root]->discs.empty())
        throw domain_error("rho: no skeleton above " + y.str());
    BPoint w = pushforward(F, fa.charts[root]->discs[0], y).point;
    return {root, -1, Radius::zero(), w.r};
}

bool curve_member(const Facade& fa, const BPoint& y, const CurvePiece& p) {
    RhoValue v = rho_point(fa, y);
    if (p.kind == CurvePiece::Kind::Vertex)
        return v.vertex == p.vertex &&
               within(p.lo, p.lo_in, v.rho, p.hi, p.hi_in);
    if (v.edge != p.edge) return false;
    if (!within(p.tlo, p.tlo_in, v.t, p.thi, p.thi_in)) return false;
    return within(p.f1.eval(v.t), p.f1_in, v.rho, p.f2.eval(v.t), p.f2_in);
}

bool curve_member(const Facade& fa, const BPoint& y, const CurveRadialSet& s) {
    for (const auto& p : s.pieces)
        if (curve_member(fa, y, p)) return true;
    return false;
}

static bool eval_expr(const CurveExpr& e,
                      const std::function<bool(const CurvePiece&)>& pred) {
    switch (e.op) {
    case CurveExpr::Op::Leaf:
        return pred(e.leaf);
    case CurveExpr::Op::Union:
        for (const auto& a : e.args)
            if (eval_expr(a, pred)) return true;
        return false;
    case CurveExpr::Op::Inter:
        for (const auto& a : e.args)
            if (!eval_expr(a, pred)) return false;
        return !e.args.empty();
    case CurveExpr::Op::Diff:
        return eval_expr(e.args[0], pred) && !eval_expr(e.args[1], pred);
    case CurveExpr::Op::Compl:
        return !eval_expr(e.args[0], pred);
    }
    return false;
}

bool curve_member(const Facade& fa, const BPoint& y, const CurveExpr& e) {
    RhoValue v = rho_point(fa, y);
    return eval_expr(e, [&](const CurvePiece& p) {
        if (p.kind == CurvePiece::Kind::Vertex)
            return v.vertex == p.vertex &&
                   within(p.lo, p.lo_in, v.rho, p.hi, p.hi_in);
        return v.edge == p.edge &&
               within(p.tlo, p.tlo_in, v.t, p.thi, p.thi_in) &&
               within(p.f1.eval(v.t), p.f1_in, v.rho, p.f2.eval(v.t), p.f2_in);
    });
}

// ---------------------------------------------------------------------------
// delta_k

namespace {

// chart pieces of a band over the single position t on an edge
void emit_singleton(const Radius& t, const Radius& rho1, bool lo_in,
                    const Radius& rho2, bool hi_in, RadialSet& out) {
    if (!t.is_finite()) return; // t = 0 and t = inf are not edge positions
    auto level = [&](const Radius& rho) {
        if (rho == Radius::one())
            out.pieces.push_back(BasicRadial::point(0, t));
        else
            out.pieces.push_back(BasicRadial::closed_cyl_level(
                0, t, {0}, rho.is_zero() ? Radius::zero() : rho * t));
    };
    Radius hi = rmin(rho2, Radius::one());
    bool hi_eff = rho2 == hi ? hi_in : true; // clamped at the skeleton
    if (Radius::one() < rho1 || hi < rho1) return;
    if (rho1 == hi) {
        if (lo_in && hi_eff) level(rho1);
        return;
    }
    if (lo_in) level(rho1);
    out.pieces.push_back(BasicRadial::closed_cyl_band(
        0, t, {0}, rho1.is_zero() ? Radius::zero() : rho1 * t, hi * t));
    if (hi_eff) level(hi);
}

// chart pieces of a band over the open position interval (a, b)
void emit_interval(const Radius& a, const Radius& b, const Monomial& f1,
                   bool lo_in, const Monomial& f2, bool hi_in,
                   RadialSet& out) {
    Radius ts = sample_between(a, b);
    Radius v1 = f1.eval(ts);
    Radius v2 = f2.eval(ts);
    if (Radius::one() < v1 || v2 < v1) return;
    Monomial id = Monomial::identity();
    auto level = [&](const Monomial& f) {
        if (f == ONE_BOUND)
            out.pieces.push_back(BasicRadial::branch_segment(0, a, b));
        else
            out.pieces.push_back(BasicRadial::annulus_graph(0, a, b, f * id));
    };
    if (f1 == f2) {
        if (lo_in && hi_in) level(f1);
        return;
    }
    if (v1 < Radius::one()) {
        if (lo_in) level(f1);
        if (v2 < Radius::one()) {
            out.pieces.push_back(
                BasicRadial::annulus_band(0, a, b, f1 * id, f2 * id));
            if (hi_in) level(f2);
            return;
        }
        // the band is clamped by the skeleton level rho = 1
        out.pieces.push_back(BasicRadial::annulus_band(0, a, b, f1 * id, id));
    }
    // the skeleton level itself, when both bounds admit rho = 1
    bool lower = v1 < Radius::one() || lo_in;
    bool upper = Radius::one() < v2 || hi_in;
    if (lower && upper)
        out.pieces.push_back(BasicRadial::branch_segment(0, a, b));
}

void emit_edge_piece(const CurvePiece& p, RadialSet& out) {
    if (p.thi < p.tlo) return;
    if (p.tlo == p.thi) {
        if (p.tlo_in && p.thi_in && p.tlo.is_finite())
            emit_singleton(p.tlo, p.f1.eval(p.tlo), p.f1_in, p.f2.eval(p.tlo),
                           p.f2_in, out);
        return;
    }
    std::vector<Radius> cuts;
    auto offer = [&](const std::optional<Radius>& t) {
        if (t && p.tlo < *t && *t < p.thi) cuts.push_back(*t);
    };
    offer(crossing(p.f1, p.f2));
    offer(crossing(p.f1, ONE_BOUND));
    offer(crossing(p.f2, ONE_BOUND));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Radius prev = p.tlo;
    if (p.tlo_in && p.tlo.is_finite())
        emit_singleton(p.tlo, p.f1.eval(p.tlo), p.f1_in, p.f2.eval(p.tlo),
                       p.f2_in, out);
    for (const auto& c : cuts) {
        emit_interval(prev, c, p.f1, p.f1_in, p.f2, p.f2_in, out);
        emit_singleton(c, p.f1.eval(c), p.f1_in, p.f2.eval(c), p.f2_in, out);
        prev = c;
    }
    emit_interval(prev, p.thi, p.f1, p.f1_in, p.f2, p.f2_in, out);
    if (p.thi_in && p.thi.is_finite())
        emit_singleton(p.thi, p.f1.eval(p.thi), p.f1_in, p.f2.eval(p.thi),
                       p.f2_in, out);
}

} // namespace

DefinableCurve delta(const Facade& fa, const CurveRadialSet& A) {
    DefinableCurve out;
    std::vector<RadialSet> per_edge(fa.graph().edges.size());
    for (const auto& p : A.pieces) {
        if (p.kind == CurvePiece::Kind::Vertex) {
            if (p.vertex < 0 || p.vertex >= (int)fa.S.size())
                throw validation_error("delta: piece references vertex " +
                                       std::to_string(p.vertex));
            out.cylinders.push_back(
                {p.vertex, p.lo, p.hi, p.lo_in, p.hi_in, {}});
        } else {
            if (p.edge < 0 || p.edge >= (int)fa.graph().edges.size())
                throw validation_error("delta: piece references edge " +
                                       std::to_string(p.edge));
            emit_edge_piece(p, per_edge[p.edge]);
        }
    }
    for (size_t e = 0; e < per_edge.size(); ++e)
        if (!per_edge[e].pieces.empty())
            out.edges.push_back({(int)e, std::move(per_edge[e])});
    return out;
}

CurveRadialSet delta_inverse(const Facade& fa, const DefinableCurve& D) {
    CurveRadialSet out;
    for (const auto& z : D.cylinders)
        out.pieces.push_back(
            CurvePiece::vertex_cyl(z.vertex, z.lo, z.lo_in, z.hi, z.hi_in));
    for (const auto& ed : D.edges) {
        if (ed.edge < 0 || ed.edge >= (int)fa.graph().edges.size())
            throw validation_error("delta_inverse: unknown edge " +
                                   std::to_string(ed.edge));
        for (const auto& p : ed.chart.pieces) {
            auto drop = [](const Monomial& m) {
                return Monomial{m.coeff, m.deg - 1};
            };
            switch (p.kind) {
            case BasicRadial::Kind::R0:
                out.pieces.push_back(CurvePiece::edge_band_on(
                    ed.edge, p.s, true, p.s, true, ONE_BOUND, true, ONE_BOUND,
                    true));
                break;
            case BasicRadial::Kind::R1:
                out.pieces.push_back(CurvePiece::edge_band_on(
                    ed.edge, p.s1, false, p.s2, false, ONE_BOUND, true,
                    ONE_BOUND, true));
                break;
            case BasicRadial::Kind::R2:
                out.pieces.push_back(CurvePiece::edge_band_on(
                    ed.edge, p.s1, false, p.s2, false, drop(p.m1), true,
                    drop(p.m1), true));
                break;
            case BasicRadial::Kind::R3:
                out.pieces.push_back(CurvePiece::edge_band_on(
                    ed.edge, p.s1, false, p.s2, false, drop(p.m1), false,
                    drop(p.m2), false));
                break;
            case BasicRadial::Kind::R4: {
                Radius rho = p.s1.is_zero() ? Radius::zero()
                                            : p.s1 * p.s.inverse();
                Monomial c = Monomial::constant(rho);
                out.pieces.push_back(CurvePiece::edge_band_on(
                    ed.edge, p.s, true, p.s, true, c, true, c, true));
                break;
            }
            case BasicRadial::Kind::R5: {
                Radius r1 = p.s1.is_zero() ? Radius::zero()
                                           : p.s1 * p.s.inverse();
                Radius r2 = p.s2 * p.s.inverse();
                out.pieces.push_back(CurvePiece::edge_band_on(
                    ed.edge, p.s, true, p.s, true, Monomial::constant(r1),
                    false, Monomial::constant(r2), false));
                break;
            }
            default:
                throw validation_error(
                    "delta_inverse: chart piece " + p.str() +
                    " is not a cylinder or band over an edge");
            }
        }
    }
    return out;
}

bool encoded_member(const Facade& fa, const EncodedPoint& e,
                    const DefinableCurve& D) {
    const Field& F = fa.field;
    auto in_cyl = [&](int v, const Radius& rho, const Int* alpha) {
        for (const auto& z : D.cylinders) {
            if (z.vertex != v) continue;
            if (alpha && std::find(z.exceptions.begin(), z.exceptions.end(),
                                   *alpha) != z.exceptions.end())
                continue;
            if (within(z.lo, z.lo_in, rho, z.hi, z.hi_in)) return true;
        }
        return false;
    };
    switch (e.kind) {
    case EncodedPoint::Kind::Vtx1:
    case EncodedPoint::Kind::Vtx2:
        return in_cyl(e.vertex, Radius::one(), nullptr);
    case EncodedPoint::Kind::Tube:
        return in_cyl(e.vertex, e.eta->r, &e.alpha);
    case EncodedPoint::Kind::Disc:
        return in_cyl(e.vertex, e.eta->r, nullptr);
    case EncodedPoint::Kind::Edge:
        for (const auto& ed : D.edges)
            if (ed.edge == e.edge && member(F, *e.eta, ed.chart)) return true;
        return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Boolean normal form

namespace {

struct Runs {
    std::vector<Radius> levels;   // sorted critical values
    std::vector<bool> at_level;   // truth at levels[i]
    std::vector<bool> in_gap;     // truth between levels[i] and levels[i+1]

    // emit maximal true intervals as (lo, lo_in, hi, hi_in)
    template <typename Emit>
    void intervals(Emit emit) const {
        size_t n = levels.size();
        size_t i = 0;
        while (i < 2 * n - 1) {
            bool truth = i % 2 == 0 ? at_level[i / 2] : in_gap[i / 2];
            if (!truth) {
                ++i;
                continue;
            }
            size_t j = i;
            while (j + 1 < 2 * n - 1 &&
                   (j % 2 == 1 ? at_level[(j + 1) / 2] : in_gap[j / 2]))
                ++j;
            size_t li = i / 2;           // index of the lower bound level
            size_t hi_idx = (j + 1) / 2; // index of the upper bound level
            emit(levels[li], i % 2 == 0, levels[hi_idx], j % 2 == 0);
            i = j + 1;
        }
    }
};

void collect_leaves(const CurveExpr& e, std::vector<const CurvePiece*>& out) {
    if (e.op == CurveExpr::Op::Leaf) {
        out.push_back(&e.leaf);
        return;
    }
    for (const auto& a : e.args) collect_leaves(a, out);
}

std::vector<Radius> sorted_unique(std::vector<Radius> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

} // namespace

CurveRadialSet normalize_curve(const Facade& fa, const CurveExpr& expr) {
    std::vector<const CurvePiece*> leaves;
    collect_leaves(expr, leaves);
    CurveRadialSet out;

    for (size_t v = 0; v < fa.S.size(); ++v) {
        auto truth_at = [&](const Radius& rho) {
            return eval_expr(expr, [&](const CurvePiece& p) {
                return p.kind == CurvePiece::Kind::Vertex &&
                       p.vertex == (int)v &&
                       within(p.lo, p.lo_in, rho, p.hi, p.hi_in);
            });
        };
        if (fa.S[v].type() == 1) {
            // a type-1 vertex carries the single point rho = 1
            if (truth_at(Radius::one()))
                out.pieces.push_back(CurvePiece::vertex_cyl(
                    (int)v, Radius::one(), true, Radius::one(), true));
            continue;
        }
        std::vector<Radius> levels = {Radius::zero(), Radius::one()};
        for (const CurvePiece* p : leaves) {
            if (p->kind != CurvePiece::Kind::Vertex || p->vertex != (int)v)
                continue;
            if (p->lo <= Radius::one()) levels.push_back(p->lo);
            if (p->hi <= Radius::one()) levels.push_back(p->hi);
        }
        Runs r;
        r.levels = sorted_unique(std::move(levels));
        for (size_t i = 0; i < r.levels.size(); ++i) {
            r.at_level.push_back(truth_at(r.levels[i]));
            if (i + 1 < r.levels.size())
                r.in_gap.push_back(
                    truth_at(sample_between(r.levels[i], r.levels[i + 1])));
        }
        r.intervals([&](const Radius& lo, bool lo_in, const Radius& hi,
                        bool hi_in) {
            out.pieces.push_back(
                CurvePiece::vertex_cyl((int)v, lo, lo_in, hi, hi_in));
        });
    }

    for (size_t e = 0; e < fa.graph().edges.size(); ++e) {
        const SkeletonEdge& ed = fa.graph().edges[e];
        std::vector<Monomial> bounds = {ONE_BOUND};
        std::vector<Radius> tcuts;
        for (const CurvePiece* p : leaves) {
            if (p->kind != CurvePiece::Kind::Edge || p->edge != (int)e)
                continue;
            bounds.push_back(p->f1);
            bounds.push_back(p->f2);
            if (ed.lo < p->tlo && p->tlo < ed.hi) tcuts.push_back(p->tlo);
            if (ed.lo < p->thi && p->thi < ed.hi) tcuts.push_back(p->thi);
        }
        for (size_t i = 0; i < bounds.size(); ++i)
            for (size_t j = i + 1; j < bounds.size(); ++j)
                if (auto t = crossing(bounds[i], bounds[j]))
                    if (ed.lo < *t && *t < ed.hi) tcuts.push_back(*t);
        tcuts = sorted_unique(std::move(tcuts));

        auto truth = [&](const Radius& t, const Radius& rho) {
            return eval_expr(expr, [&](const CurvePiece& p) {
                return p.kind == CurvePiece::Kind::Edge && p.edge == (int)e &&
                       within(p.tlo, p.tlo_in, t, p.thi, p.thi_in) &&
                       within(p.f1.eval(t), p.f1_in, rho, p.f2.eval(t),
                              p.f2_in);
            });
        };
        auto rho_runs = [&](const Radius& t, Runs& r,
                            std::vector<Monomial>& monos) {
            std::vector<Radius> vals = {Radius::zero(), Radius::one()};
            for (const auto& m : bounds) {
                Radius v = m.eval(t);
                if (v <= Radius::one()) vals.push_back(v);
            }
            r.levels = sorted_unique(std::move(vals));
            for (const auto& lv : r.levels) {
                Monomial m = ZERO_BOUND;
                if (lv == Radius::one()) m = ONE_BOUND;
                for (const auto& b : bounds)
                    if (!lv.is_zero() && b.eval(t) == lv) m = b;
                monos.push_back(m);
            }
            for (size_t i = 0; i < r.levels.size(); ++i) {
                r.at_level.push_back(truth(t, r.levels[i]));
                if (i + 1 < r.levels.size())
                    r.in_gap.push_back(truth(
                        t, sample_between(r.levels[i], r.levels[i + 1])));
            }
        };
        auto emit_at = [&](const Radius& tlo, bool tlo_in, const Radius& thi,
                           bool thi_in, const Radius& sample, bool constant) {
            Runs r;
            std::vector<Monomial> monos;
            rho_runs(sample, r, monos);
            r.intervals([&](const Radius& lo, bool lo_in, const Radius& hi,
                            bool hi_in) {
                Monomial m1, m2;
                if (constant) {
                    m1 = Monomial::constant(lo);
                    m2 = Monomial::constant(hi);
                } else {
                    for (size_t i = 0; i < r.levels.size(); ++i) {
                        if (r.levels[i] == lo) m1 = monos[i];
                        if (r.levels[i] == hi) m2 = monos[i];
                    }
                }
                out.pieces.push_back(CurvePiece::edge_band_on(
                    (int)e, tlo, tlo_in, thi, thi_in, m1, lo_in, m2, hi_in));
            });
        };
        Radius prev = ed.lo;
        for (const auto& c : tcuts) {
            emit_at(prev, false, c, false, sample_between(prev, c), false);
            emit_at(c, true, c, true, c, true);
            prev = c;
        }
        emit_at(prev, false, ed.hi, false, sample_between(prev, ed.hi), false);
    }
    return out;
}

} // namespace berk
