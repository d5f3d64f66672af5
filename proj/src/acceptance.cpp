#include "berk/acceptance.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "berk/curveradial.hpp"
#include "berk/newton.hpp"
#include "berk/normalize.hpp"
#include "berk/sampling.hpp"

namespace berk {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Radius E(long n, long d = 1) { return Radius::exp(Rat(n, d)); }

Polynomial P(std::vector<long> cs) {
    std::vector<Rat> rs(cs.begin(), cs.end());
    return Polynomial::of(std::move(rs));
}

struct Check {
    bool ok = true;
    std::string witness;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            witness = what;
        }
    }
};

std::string timed(const Check& c, int count, const char* unit, double secs) {
    std::ostringstream os;
    if (c.ok)
        os << count << " " << unit << " in " << (int)(secs * 1000) << " ms";
    else
        os << c.witness;
    return os.str();
}

BPoint in_unit_disc(const Field& F, PointSampler& gen, std::mt19937_64& rng) {
    Rat a = gen.rat();
    if (Radius::one() < F.abs(a)) a = a == 0 ? Rat(0) : 1 / a;
    Radius r = Radius::zero();
    if (rng() % 8) r = Radius::exp(Rat(-(long)(rng() % 19), 6));
    return {a, r};
}

// ---- criterion 1: the Fig.-1 complement resolution ------------------------

CriterionResult fig1_golden() {
    auto t0 = Clock::now();
    Check c;
    Field F(2);
    BasicRadial X = BasicRadial::annulus_graph(Rat(0), E(0), Radius::inf(),
                                               Monomial{E(-1), Rat(1)});
    RadialSet comp = bool_normalize(F, SetExpr::complement(SetExpr::of(X)));
    c.expect(comp.pieces.size() == 7,
             "expected 7 pieces, got " + std::to_string(comp.pieces.size()));
    int kinds[8] = {0};
    for (const auto& p : comp.pieces) kinds[(int)p.kind]++;
    c.expect(kinds[0] == 1 && kinds[1] == 1 && kinds[2] == 1 && kinds[3] == 2 &&
                 kinds[4] == 1 && kinds[5] == 1,
             "piece inventory differs from the X5..X10-plus-point resolution");
    // X together with the pieces partitions B
    RadialSet whole = bool_normalize(F, SetExpr::complement(SetExpr::unite({})));
    RadialSet all = bool_normalize(
        F, SetExpr::unite({SetExpr::of(X), SetExpr::of(comp)}));
    c.expect(is_empty_equals(F, all, whole).equal,
             "X plus the complement pieces does not cover B");
    for (size_t i = 0; i < comp.pieces.size(); ++i) {
        c.expect(is_empty(F, SetExpr::intersect({SetExpr::of(X),
                                                 SetExpr::of(comp.pieces[i])})),
                 "piece " + std::to_string(i) + " meets X");
        for (size_t j = i + 1; j < comp.pieces.size(); ++j)
            c.expect(is_empty(F, SetExpr::intersect(
                                     {SetExpr::of(comp.pieces[i]),
                                      SetExpr::of(comp.pieces[j])})),
                     "pieces " + std::to_string(i) + " and " +
                         std::to_string(j) + " overlap");
    }
    double secs = seconds_since(t0);
    c.expect(secs < 1.0, "runtime over 1 s");
    return {1, "Fig.-1 complement resolution", c.ok, timed(c, 7, "pieces", secs)};
}

// ---- criterion 2: boolean-algebra fuzz ------------------------------------

BasicRadial random_piece(std::mt19937_64& rng) {
    auto center = [&]() {
        long m = (long)(rng() % 33) - 16;
        long j = rng() % 4;
        Rat q(m, 1L << j);
        q.canonicalize();
        return q;
    };
    auto exp6 = [&]() { return Rat((long)(rng() % 73) - 36, 6); };
    auto finite = [&]() { return Radius::exp(exp6()); };
    auto low = [&]() { return rng() % 6 ? finite() : Radius::zero(); };
    auto high = [&]() { return rng() % 4 ? finite() : Radius::inf(); };
    auto mono = [&]() { return Monomial{finite(), Rat((long)(rng() % 3))}; };
    Rat a = center();
    switch (rng() % 8) {
    case 0:
        return BasicRadial::point(a, low());
    case 1:
        return BasicRadial::branch_segment(a, low(), high());
    case 2:
        return BasicRadial::annulus_graph(a, low(), high(), mono());
    case 3:
        return BasicRadial::annulus_band(a, low(), high(), mono(), mono());
    case 4:
    case 5: {
        Radius s = finite();
        std::vector<Rat> holes;
        for (size_t k = rng() % 3; k > 0; --k) holes.push_back(center());
        if (rng() % 8 == 0)
            return BasicRadial::closed_cyl_level(a, s, std::move(holes), low());
        return BasicRadial::closed_cyl_band(a, s, std::move(holes), low(),
                                            finite());
    }
    case 6:
        return BasicRadial::open_cyl_level(a, high(), low());
    default:
        return BasicRadial::open_cyl_band(a, high(), low(), finite());
    }
}

SetExpr random_expr(std::mt19937_64& rng, int depth, int& budget) {
    if (depth == 0 || budget <= 1 || rng() % 3 == 0) {
        budget--;
        return SetExpr::of(random_piece(rng));
    }
    switch (rng() % 4) {
    case 0:
        return SetExpr::unite({random_expr(rng, depth - 1, budget),
                               random_expr(rng, depth - 1, budget)});
    case 1:
        return SetExpr::intersect({random_expr(rng, depth - 1, budget),
                                   random_expr(rng, depth - 1, budget)});
    case 2:
        return SetExpr::diff(random_expr(rng, depth - 1, budget),
                             random_expr(rng, depth - 1, budget));
    default:
        return SetExpr::complement(random_expr(rng, depth - 1, budget));
    }
}

CriterionResult boolean_fuzz(uint64_t seed) {
    auto t0 = Clock::now();
    Check c;
    Field F(2);
    std::mt19937_64 rng(seed ^ 0x6275a3);
    for (int trial = 0; trial < 500 && c.ok; ++trial) {
        int budget = 4;
        SetExpr e = random_expr(rng, 3, budget);
        RadialSet nf = bool_normalize(F, e);
        PointSampler gen(rng());
        for (int i = 0; i < 200; ++i) {
            BPoint x = gen.point();
            bool want = member(F, x, e);
            c.expect(member(F, x, nf) == want,
                     "trial " + std::to_string(trial) +
                         ": membership mismatch at " + x.str());
            int hits = 0;
            for (const auto& p : nf.pieces)
                if (member(F, x, p)) ++hits;
            c.expect(hits <= 1, "trial " + std::to_string(trial) +
                                    ": pieces overlap at " + x.str());
        }
    }
    double secs = seconds_since(t0);
    c.expect(secs < 60.0, "runtime over 60 s");
    return {2, "boolean-algebra fuzz", c.ok,
            timed(c, 500, "expressions", secs)};
}

// ---- criterion 3: Newton / disc-image oracle -------------------------------

CriterionResult newton_oracle(uint64_t seed) {
    auto t0 = Clock::now();
    Check c;
    std::mt19937_64 rng(seed ^ 0x9e4a11);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        Field F(trial % 2 == 0 ? 2 : 3);
        std::vector<Rat> cs;
        long deg = 1 + rng() % 5;
        for (long i = 0; i <= deg; ++i) {
            Rat q((long)(rng() % 65) - 32, 1 + (long)(rng() % 32));
            q.canonicalize();
            cs.push_back(std::move(q));
        }
        Polynomial h = Polynomial::of(std::move(cs));
        if (h.is_constant()) continue;
        PointSampler gen(rng());
        Rat a = gen.rat();
        long e = (long)(rng() % 7) - 3;
        Radius r = E(e);
        BPoint img = disc_image(F, h, a, r);

        // brute-force oracle: recenter at a and take max |c_i| r^i
        Polynomial rec = h.recentered(a);
        Radius s = Radius::zero();
        for (long i = 1; i <= rec.degree(); ++i)
            s = rmax(s, F.abs(rec.coeff(i)) * r.pow(Rat(i)));
        c.expect(img.r == s, "trial " + std::to_string(trial) +
                                 ": radius " + img.r.str() + " != oracle " +
                                 s.str());
        c.expect(img.a == h.eval(a),
                 "trial " + std::to_string(trial) + ": center mismatch");

        // p^e as an exact rational scale for sampling D(a, r)
        Rat scale(1);
        for (long k = 0; k < (e < 0 ? -e : e); ++k) scale *= F.p();
        if (e < 0) scale = 1 / scale;
        for (int i = 0; i < 200; ++i) {
            Rat u = gen.rat();
            if (Radius::one() < F.abs(u)) u = u == 0 ? Rat(0) : 1 / u;
            Rat x = a + scale * u;
            c.expect(F.dist(h.eval(x), img.a) <= img.r,
                     "trial " + std::to_string(trial) + ": image of " +
                         x.get_str() + " escapes the image disc");
        }
    }
    double secs = seconds_since(t0);
    c.expect(secs < 30.0, "runtime over 30 s");
    return {3, "Newton disc-image oracle", c.ok,
            timed(c, 100, "polynomials", secs)};
}

// ---- criterion 4: wild-ramification loci -----------------------------------

CriterionResult wild_loci() {
    auto t0 = Clock::now();
    Check c;
    Field F(2);
    Brick line = Brick::open_disc(0, Radius::inf());
    auto run = [&](Polynomial h, long d, Monomial threshold, const char* tag) {
        LocusReport rep =
            multiplicity_locus(F, RationalMap::poly(h), d, line);
        c.expect(!rep.residual, std::string(tag) + ": residual locus");
        // expected: the graph r = threshold(|a|) and everything above it
        std::vector<SetExpr> up = {
            SetExpr::of(BasicRadial::point(Rat(0), Radius::zero())),
            SetExpr::of(
                BasicRadial::branch_segment(Rat(0), Radius::zero(),
                                            Radius::inf()))};
        if (!(threshold == Monomial::identity())) {
            up.push_back(SetExpr::of(BasicRadial::annulus_graph(
                Rat(0), Radius::zero(), Radius::inf(), threshold)));
            up.push_back(SetExpr::of(BasicRadial::annulus_band(
                Rat(0), Radius::zero(), Radius::inf(), threshold,
                Monomial::identity())));
        }
        RadialSet expected = bool_normalize(F, SetExpr::unite(std::move(up)));
        c.expect(is_empty_equals(F, rep.locus, expected).equal,
                 std::string(tag) + ": locus differs from the threshold set");
        for (long m = -16; m <= 16; ++m) {
            Rat a(m, 8);
            a.canonicalize();
            for (long z = -12; z <= 6; ++z) {
                BPoint x{a, E(z, 2)};
                c.expect((local_degree(F, h, x) == d) ==
                             member(F, x, rep.locus),
                         std::string(tag) + ": grid mismatch at " + x.str());
            }
            BPoint x0{a, Radius::zero()};
            c.expect((local_degree(F, h, x0) == d) ==
                         member(F, x0, rep.locus),
                     std::string(tag) + ": grid mismatch at " + x0.str());
        }
    };
    run(P({0, 0, 1}), 2, Monomial{E(-1), Rat(1)}, "T^2");
    run(P({0, 0, 0, 1}), 3, Monomial::identity(), "T^3");
    double secs = seconds_since(t0);
    c.expect(secs < 10.0, "runtime over 10 s");
    return {4, "wild-ramification loci", c.ok, timed(c, 2 * 33 * 20, "grid points", secs)};
}

// ---- criterion 5: fiber degree sums ----------------------------------------

CriterionResult degree_sums(uint64_t seed) {
    auto t0 = Clock::now();
    Check c;
    std::vector<Polynomial> polys = {P({0, 0, 1}), P({-1, 0, 1}),
                                     P({0, 0, 0, 1})};
    std::mt19937_64 rng(seed ^ 0x51be7d);
    for (const Int& p : {Int(2), Int(3)}) {
        Field F(p);
        for (const auto& H : polys) {
            RationalMap h = RationalMap::poly(H);
            int done = 0;
            for (int trial = 0; trial < 600 && done < 50 && c.ok; ++trial) {
                PointSampler gen(rng());
                BPoint x = gen.point();
                BPoint y = disc_image(F, H, x.a, x.r);
                try {
                    Fiber f = fiber_count(F, h, y);
                    long sum = 0;
                    for (const auto& pt : f.points)
                        sum += local_degree(F, H, pt);
                    c.expect(sum == H.degree(),
                             "fiber of " + y.str() + " sums to " +
                                 std::to_string(sum));
                    ++done;
                } catch (const incomplete_oracle_error&) {
                    // irrational conjugates below the merge threshold
                }
            }
            c.expect(done == 50, "only " + std::to_string(done) +
                                     " complete fibers for degree " +
                                     std::to_string(H.degree()) + ", p=" +
                                     p.get_str());
        }
    }
    return {5, "fiber degree sums", c.ok,
            timed(c, 300, "fibers", seconds_since(t0))};
}

// ---- shared facade fixtures -------------------------------------------------

struct Fixtures {
    Field F;
    Facade disc, line, proj;
};

Fixtures make_fixtures() {
    Field F{Int(2)};
    BPoint gauss{0, E(0)};
    return {F,
            build_facade(F, triangulate(F, Domain::closed_disc(F, 0, E(0)),
                                        {gauss})),
            build_facade(F, triangulate(F, Domain::line(), {gauss})),
            build_facade(F, triangulate(F, Domain::projective_line(), {gauss}))};
}

BPoint sample_in(const Facade& fa, PointSampler& gen, std::mt19937_64& rng) {
    if (fa.dom.brick.kind == Brick::Kind::B3)
        return in_unit_disc(fa.field, gen, rng);
    return gen.point();
}

// ---- criterion 6: encode/decode round trips ---------------------------------

CriterionResult facade_round_trips(uint64_t seed) {
    auto t0 = Clock::now();
    Check c;
    Fixtures fx = make_fixtures();
    std::mt19937_64 rng(seed ^ 0xfa0b2c);
    int n = 0;
    for (const Facade* fa : {&fx.disc, &fx.line, &fx.proj}) {
        PointSampler gen(rng());
        for (int i = 0; i < 1000; ++i, ++n) {
            BPoint y = sample_in(*fa, gen, rng);
            EncodedPoint e = encode(*fa, y);
            c.expect(point_eq(fx.F, decode(*fa, e), y),
                     "decode(encode(" + y.str() + ")) differs");
            if (e.kind == EncodedPoint::Kind::Tube) {
                // E2: the tube value satisfies red(eta) = alpha in the chart
                c.expect(fx.F.residue(e.eta->a) == e.alpha,
                         "Tube value at " + y.str() + " violates E2");
                c.expect(!(Radius::one() < fx.F.abs(e.eta->a)) &&
                             e.eta->r < Radius::one(),
                         "Tube chart point at " + y.str() +
                             " outside the unit tube");
            }
        }
    }
    return {6, "facade encode/decode round trips", c.ok,
            timed(c, n, "points", seconds_since(t0))};
}

// ---- criterion 7: refinement transport --------------------------------------

CriterionResult refinement_transport(uint64_t seed) {
    auto t0 = Clock::now();
    Check c;
    Field F(2);
    Domain disc = Domain::closed_disc(F, 0, E(0));
    Facade f1 = build_facade(F, triangulate(F, disc, {BPoint{0, E(0)}}));
    Facade f2 = build_facade(
        F, triangulate(F, disc, {BPoint{0, E(0)}, BPoint{0, E(-1)}}));
    std::mt19937_64 rng(seed ^ 0x7ef1);
    PointSampler gen(rng());
    for (int i = 0; i < 1000; ++i) {
        BPoint y = in_unit_disc(F, gen, rng);
        EncodedPoint lhs = encode(f2, y);
        EncodedPoint rhs = transport_id(f1, f2, encode(f1, y));
        c.expect(encoded_eq(F, lhs, rhs),
                 "transport square breaks at " + y.str());
    }
    return {7, "refinement transport", c.ok,
            timed(c, 1000, "points", seconds_since(t0))};
}

// ---- criterion 8: morphism square and compiled map --------------------------

CriterionResult morphism_square(uint64_t seed) {
    auto t0 = Clock::now();
    Check c;
    Field F(2);
    RationalMap sq = RationalMap::poly(P({0, 0, 1}));
    Domain disc = Domain::closed_disc(F, 0, E(0));
    Facade fd = build_facade(F, triangulate(F, disc, {BPoint{0, E(0)}}));
    std::mt19937_64 rng(seed ^ 0x80f3);
    PointSampler gen(rng());
    for (int i = 0; i < 1000; ++i) {
        BPoint y = in_unit_disc(F, gen, rng);
        ProjPoint img = pushforward(F, sq, y);
        EncodedPoint lhs = encode(fd, img.point);
        EncodedPoint rhs = map_transport(sq, fd, fd, encode(fd, y));
        c.expect(encoded_eq(F, lhs, rhs),
                 "morphism square breaks at " + y.str());
    }

    Facade fl = build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(0)}}));
    CompiledMap cm = compile_map(sq, fl, fl);
    c.expect(cm.edges.size() == 1, "expected one compiled edge piece");
    if (cm.edges.size() == 1) {
        c.expect(cm.edges[0].m == Monomial{Radius::one(), Rat(2)} &&
                     cm.edges[0].degree == 2,
                 "compiled edge is not t -> t^2");
        for (long k = 1; k <= 10; ++k) {
            BPoint x{0, E(k)};
            EncodedPoint via_points =
                encode(fl, pushforward(F, sq, x).point);
            c.expect(via_points.kind == EncodedPoint::Kind::Edge &&
                         via_points.eta->r == cm.edges[0].m.eval(E(k)),
                     "compiled monomial disagrees at t = p^" +
                         std::to_string(k));
        }
    }
    return {8, "morphism square and compiled map", c.ok,
            timed(c, 1010, "points", seconds_since(t0))};
}

// ---- criterion 9: delta bijection -------------------------------------------

CurvePiece random_curve_piece(const Facade& fa, std::mt19937_64& rng) {
    static const long exps[] = {-3, -2, -1, 0};
    auto level = [&]() { return rng() % 6 ? E(exps[rng() % 4]) : Radius::zero(); };
    bool has_edges = !fa.graph().edges.empty();
    if (!has_edges || rng() % 2 == 0) {
        Radius lo = level(), hi = level();
        if (hi < lo) std::swap(lo, hi);
        return CurvePiece::vertex_cyl(0, lo, rng() % 2, hi, rng() % 2);
    }
    auto mono = [&]() {
        if (rng() % 2) return Monomial::constant(E(-(long)(rng() % 4)));
        return Monomial{E(-(long)(rng() % 4) - 1), Rat(1)};
    };
    int e = (int)(rng() % fa.graph().edges.size());
    const SkeletonEdge& ed = fa.graph().edges[e];
    if (rng() % 3 == 0) {
        Radius t = E(1 + (long)(rng() % 4));
        return CurvePiece::edge_band_on(e, t, true, t, true, mono(), rng() % 2,
                                        mono(), rng() % 2);
    }
    Radius tlo = ed.lo, thi = ed.hi;
    if (rng() % 2) tlo = E(1 + (long)(rng() % 3));
    if (rng() % 2 && thi.is_inf()) thi = E(4 + (long)(rng() % 3));
    return CurvePiece::edge_band_on(e, tlo, rng() % 2, thi, rng() % 2, mono(),
                                    rng() % 2, mono(), rng() % 2);
}

CriterionResult delta_bijection(uint64_t seed) {
    auto t0 = Clock::now();
    Check c;
    Fixtures fx = make_fixtures();
    std::mt19937_64 rng(seed ^ 0xde17a);
    for (const Facade* fa : {&fx.disc, &fx.line, &fx.proj}) {
        for (int trial = 0; trial < 100 && c.ok; ++trial) {
            CurveRadialSet A;
            for (int k = 1 + rng() % 3; k > 0; --k)
                A.pieces.push_back(random_curve_piece(*fa, rng));
            DefinableCurve D = delta(*fa, A);
            CurveRadialSet back = delta_inverse(*fa, D);
            CurveExpr ab = CurveExpr::diff(CurveExpr::of(A), CurveExpr::of(back));
            CurveExpr ba = CurveExpr::diff(CurveExpr::of(back), CurveExpr::of(A));
            c.expect(normalize_curve(*fa, ab).pieces.empty() &&
                         normalize_curve(*fa, ba).pieces.empty(),
                     "round trip is not the identity (trial " +
                         std::to_string(trial) + ")");
            PointSampler gen(rng());
            for (int i = 0; i < 200; ++i) {
                BPoint y = sample_in(*fa, gen, rng);
                bool in = curve_member(*fa, y, A);
                c.expect(in == curve_member(*fa, y, back),
                         "round-trip membership differs at " + y.str());
                c.expect(in == encoded_member(*fa, encode(*fa, y), D),
                         "encoded membership differs at " + y.str());
            }
        }
    }
    return {9, "delta bijection on radial curve sets", c.ok,
            timed(c, 300, "sets", seconds_since(t0))};
}

// ---- criterion 10: retraction laws ------------------------------------------

CriterionResult retraction_laws(uint64_t seed) {
    auto t0 = Clock::now();
    Check c;
    Fixtures fx = make_fixtures();
    std::mt19937_64 rng(seed ^ 0x27a550);
    int n = 0;
    for (const Facade* fa : {&fx.disc, &fx.line, &fx.proj}) {
        const Retraction& r = fa->retract;
        PointSampler gen(rng());
        for (int i = 0; i < 1000; ++i, ++n) {
            BPoint y = sample_in(*fa, gen, rng);
            BPoint x = r.tau(fx.F, fa->dom, y);
            c.expect(r.graph.on_skeleton(fx.F, x),
                     "tau image off the skeleton at " + y.str());
            c.expect(point_eq(fx.F, r.tau(fx.F, fa->dom, x), x),
                     "tau not idempotent at " + y.str());
            c.expect(point_eq(fx.F, r.nu(fx.F, fa->dom, Radius::zero(), y), y),
                     "nu(0) is not the identity at " + y.str());
            c.expect(point_eq(fx.F, r.nu(fx.F, fa->dom, Radius::one(), y), x),
                     "nu(1) is not tau at " + y.str());
        }
        // tau fixes every vertex
        for (const auto& v : fa->S)
            c.expect(point_eq(fx.F, r.tau(fx.F, fa->dom, v), v),
                     "tau moves the vertex " + v.str());
    }
    return {10, "retraction laws", c.ok, timed(c, n, "points", seconds_since(t0))};
}

} // namespace

std::vector<CriterionResult> run_acceptance(uint64_t seed) {
    return {fig1_golden(),          boolean_fuzz(seed),
            newton_oracle(seed),    wild_loci(),
            degree_sums(seed),      facade_round_trips(seed),
            refinement_transport(seed), morphism_square(seed),
            delta_bijection(seed),  retraction_laws(seed)};
}

} // namespace berk
