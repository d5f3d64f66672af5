#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berk/curveradial.hpp"
#include "berk/sampling.hpp"

#include <random>

using namespace berk;

namespace {

Radius E(long n, long d = 1) { return Radius::exp(Rat(n, d)); }
const Radius Z = Radius::zero();
const Radius ONE = Radius::one();

Monomial C(const Radius& c) { return Monomial::constant(c); }

// a random point of the closed unit disc
BPoint unit_disc_point(const Field& F, PointSampler& gen, std::mt19937_64& rng) {
    Rat a = gen.rat();
    if (Radius::one() < F.abs(a)) a = a == 0 ? Rat(0) : 1 / a;
    Radius r = Radius::zero();
    if (rng() % 8) r = Radius::exp(Rat(-(long)(rng() % 19), 6));
    return {a, r};
}

bool set_equal(const Facade& fa, const CurveRadialSet& a,
               const CurveRadialSet& b) {
    return normalize_curve(fa, CurveExpr::diff(CurveExpr::of(a),
                                               CurveExpr::of(b)))
                   .pieces.empty() &&
           normalize_curve(fa, CurveExpr::diff(CurveExpr::of(b),
                                               CurveExpr::of(a)))
                   .pieces.empty();
}

} // namespace

TEST_CASE("rho against the skeleton") {
    Field F(2);
    Facade fd = build_facade(F, triangulate(F, Domain::closed_disc(F, 0, E(0)),
                                            {BPoint{0, E(0)}}));
    Facade fl = build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(0)}}));

    RhoValue v = rho_point(fd, BPoint{3, E(-2)});
    CHECK(v.vertex == 0);
    CHECK(v.rho == E(-2));
    CHECK(rho_point(fd, BPoint{0, E(0)}).rho == ONE);
    CHECK(rho_point(fd, BPoint{3, Z}).rho == Z);

    // off-skeleton point hanging from the unbounded edge at position p
    RhoValue w = rho_point(fl, BPoint{Rat(1, 2), E(0)});
    CHECK(w.edge == 0);
    CHECK(w.t == E(1));
    CHECK(w.rho == E(-1));
    // skeleton point of the edge
    RhoValue s = rho_point(fl, BPoint{0, E(3)});
    CHECK(s.edge == 0);
    CHECK(s.t == E(3));
    CHECK(s.rho == ONE);

    CHECK_THROWS_AS(rho_point(fd, BPoint{0, E(1)}), domain_error);

    // on P^1 the component at infinity measures radii in its own chart
    Facade fp = build_facade(
        F, triangulate(F, Domain::projective_line(), {BPoint{0, E(0)}}));
    RhoValue u = rho_point(fp, BPoint{4, E(-1)});
    CHECK(u.vertex == 0);
    CHECK(u.rho < ONE);
    CHECK(rho_point(fp, BPoint{4, Z}).vertex == 0);
}

TEST_CASE("vertex cylinder membership and delta round trip") {
    Field F(2);
    Facade fd = build_facade(F, triangulate(F, Domain::closed_disc(F, 0, E(0)),
                                            {BPoint{0, E(0)}}));
    CurvePiece A = CurvePiece::vertex_cyl(0, E(-3), false, E(-1), true);

    CHECK(curve_member(fd, BPoint{3, E(-2)}, A));
    CHECK(curve_member(fd, BPoint{3, E(-1)}, A));
    CHECK_FALSE(curve_member(fd, BPoint{3, E(-3)}, A));
    CHECK_FALSE(curve_member(fd, BPoint{0, E(-4)}, A));
    CHECK_FALSE(curve_member(fd, BPoint{0, E(0)}, A));
    CHECK_FALSE(curve_member(fd, BPoint{5, Z}, A));

    CurveRadialSet As{{A}};
    DefinableCurve D = delta(fd, As);
    REQUIRE(D.cylinders.size() == 1);
    CHECK(D.edges.empty());
    CHECK(D.cylinders[0].vertex == 0);
    CHECK(D.cylinders[0].lo == E(-3));
    CHECK_FALSE(D.cylinders[0].lo_in);
    CHECK(D.cylinders[0].hi == E(-1));
    CHECK(D.cylinders[0].hi_in);
    CHECK(D.cylinders[0].exceptions.empty());

    CurveRadialSet back = delta_inverse(fd, D);
    REQUIRE(back.pieces.size() == 1);
    CHECK(back.pieces[0].kind == CurvePiece::Kind::Vertex);
    CHECK(back.pieces[0].lo == E(-3));
    CHECK(back.pieces[0].hi == E(-1));

    PointSampler gen(7);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        BPoint y = unit_disc_point(F, gen, rng);
        CHECK(curve_member(fd, y, As) ==
              encoded_member(fd, encode(fd, y), D));
    }
}

TEST_CASE("edge band with a bound crossing the skeleton") {
    Field F(2);
    Facade fl = build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(0)}}));
    const SkeletonGraph& g = fl.graph();

    // f1(t) = p^-3 t reaches 1 at t = p^3: the band must split there
    CurvePiece B = CurvePiece::edge_band(g, 0, Monomial{E(-3), Rat(1)}, true,
                                         C(ONE), true);
    CurveRadialSet Bs{{B}};
    DefinableCurve D = delta(fl, Bs);
    CHECK(D.cylinders.empty());
    REQUIRE(D.edges.size() == 1);
    bool has_point = false, has_band = false, has_segment = false;
    for (const auto& p : D.edges[0].chart.pieces) {
        if (p.kind == BasicRadial::Kind::R0) {
            has_point = true;
            CHECK(p.s == E(3));
        }
        if (p.kind == BasicRadial::Kind::R3) has_band = true;
        if (p.kind == BasicRadial::Kind::R1) has_segment = true;
    }
    CHECK(has_point);
    CHECK(has_band);
    CHECK(has_segment);

    // below the crossing the band runs from the graph of f1 to the skeleton
    CHECK(curve_member(fl, BPoint{0, E(2)}, B));            // skeleton, t = p^2
    CHECK(curve_member(fl, BPoint{Rat(1, 4), E(3, 2)}, B)); // rho = p^-1/2
    CHECK(curve_member(fl, BPoint{Rat(1, 4), E(1)}, B));    // rho = f1(t)
    CHECK_FALSE(curve_member(fl, BPoint{Rat(1, 4), E(0)}, B)); // below f1
    CHECK_FALSE(curve_member(fl, BPoint{0, E(4)}, B));      // above the crossing
    CHECK(curve_member(fl, BPoint{0, E(3)}, B));            // the crossing point

    PointSampler gen(17);
    for (int i = 0; i < 1000; ++i) {
        BPoint y = gen.point();
        CHECK(curve_member(fl, y, Bs) ==
              encoded_member(fl, encode(fl, y), D));
    }
}

TEST_CASE("singleton position bands become shells") {
    Field F(2);
    Facade fl = build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(0)}}));
    CurvePiece S = CurvePiece::edge_band_on(0, E(2), true, E(2), true,
                                            C(E(-1)), true, C(ONE), true);
    CurveRadialSet Ss{{S}};
    DefinableCurve D = delta(fl, Ss);
    REQUIRE(D.edges.size() == 1);
    bool level = false, band = false, top = false;
    for (const auto& p : D.edges[0].chart.pieces) {
        if (p.kind == BasicRadial::Kind::R4) {
            level = true;
            CHECK(p.s == E(2));
            CHECK(p.s1 == E(1));
            CHECK(p.holes == std::vector<Rat>{Rat(0)});
        }
        if (p.kind == BasicRadial::Kind::R5) {
            band = true;
            CHECK(p.s1 == E(1));
            CHECK(p.s2 == E(2));
        }
        if (p.kind == BasicRadial::Kind::R0) top = true;
    }
    CHECK(level);
    CHECK(band);
    CHECK(top);

    CHECK(curve_member(fl, BPoint{Rat(1, 4), E(1)}, S));
    CHECK(curve_member(fl, BPoint{Rat(1, 4), E(2)}, S)); // skeleton point
    CHECK_FALSE(curve_member(fl, BPoint{Rat(1, 4), E(0)}, S));
    CHECK_FALSE(curve_member(fl, BPoint{Rat(1, 8), E(1)}, S)); // t = p^3

    CHECK(set_equal(fl, Ss, delta_inverse(fl, D)));

    PointSampler gen(23);
    for (int i = 0; i < 1000; ++i) {
        BPoint y = gen.point();
        CHECK(curve_member(fl, y, Ss) ==
              encoded_member(fl, encode(fl, y), D));
    }
}

TEST_CASE("boolean normal form on a disc") {
    Field F(2);
    Facade fd = build_facade(F, triangulate(F, Domain::closed_disc(F, 0, E(0)),
                                            {BPoint{0, E(0)}}));
    CurvePiece A = CurvePiece::vertex_cyl(0, E(-3), false, E(-1), true);

    CurveRadialSet co =
        normalize_curve(fd, CurveExpr::complement(CurveExpr::of(A)));
    REQUIRE(co.pieces.size() == 2);
    CHECK(co.pieces[0].lo == Z);
    CHECK(co.pieces[0].lo_in);
    CHECK(co.pieces[0].hi == E(-3));
    CHECK(co.pieces[0].hi_in);
    CHECK(co.pieces[1].lo == E(-1));
    CHECK_FALSE(co.pieces[1].lo_in);
    CHECK(co.pieces[1].hi == ONE);
    CHECK(co.pieces[1].hi_in);

    CHECK(normalize_curve(
              fd, CurveExpr::intersect({CurveExpr::of(A),
                                        CurveExpr::complement(CurveExpr::of(A))}))
              .pieces.empty());
    CurveRadialSet all = normalize_curve(
        fd, CurveExpr::unite({CurveExpr::of(A),
                              CurveExpr::complement(CurveExpr::of(A))}));
    REQUIRE(all.pieces.size() == 1);
    CHECK(all.pieces[0].lo == Z);
    CHECK(all.pieces[0].hi == ONE);

    PointSampler gen(31);
    std::mt19937_64 rng(32);
    for (int i = 0; i < 500; ++i) {
        BPoint y = unit_disc_point(F, gen, rng);
        CHECK(curve_member(fd, y, A) != curve_member(fd, y, co));
    }
}

TEST_CASE("normal form splits edge bands at crossings") {
    Field F(2);
    Facade fl = build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(0)}}));
    const SkeletonGraph& g = fl.graph();
    CurvePiece B1 = CurvePiece::edge_band(g, 0, C(Z), true,
                                          Monomial{E(-3), Rat(1)}, true);
    CurvePiece B2 = CurvePiece::edge_band(g, 0, C(Z), true, C(E(-1)), true);

    CurveExpr sym = CurveExpr::unite(
        {CurveExpr::diff(CurveExpr::of(B1), CurveExpr::of(B2)),
         CurveExpr::diff(CurveExpr::of(B2), CurveExpr::of(B1))});
    CurveRadialSet nf = normalize_curve(fl, sym);
    CHECK(!nf.pieces.empty());

    PointSampler gen(43);
    for (int i = 0; i < 1000; ++i) {
        BPoint y = gen.point();
        bool direct = curve_member(fl, y, B1) != curve_member(fl, y, B2);
        CHECK(curve_member(fl, y, nf) == direct);
    }

    // the union of the two bands against its normal form
    CurveRadialSet un = normalize_curve(
        fl, CurveExpr::unite({CurveExpr::of(B1), CurveExpr::of(B2)}));
    for (int i = 0; i < 1000; ++i) {
        BPoint y = gen.point();
        bool direct = curve_member(fl, y, B1) || curve_member(fl, y, B2);
        CHECK(curve_member(fl, y, un) == direct);
    }
}

TEST_CASE("delta is a bijection on random sets") {
    Field F(2);
    Facade fl = build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(0)}}));
    Facade fp = build_facade(
        F, triangulate(F, Domain::projective_line(), {BPoint{0, E(0)}}));
    const SkeletonGraph& g = fl.graph();
    std::mt19937_64 rng(57);
    PointSampler gen(58);

    std::vector<Radius> pool = {Z, E(-3), E(-2), E(-1), ONE};
    auto rand_cyl = [&]() {
        size_t i = rng() % (pool.size() - 1);
        size_t j = i + 1 + rng() % (pool.size() - i - 1);
        return CurvePiece::vertex_cyl(0, pool[i], rng() % 2, pool[j],
                                      rng() % 2);
    };
    auto rand_mono = [&](bool upper) {
        if (rng() % 2) return C(pool[1 + rng() % 4]);
        long c = -(long)(rng() % 4) - (upper ? 0 : 1);
        return Monomial{E(c), Rat(1)};
    };
    auto rand_band = [&]() {
        Monomial f1 = rand_mono(false), f2 = rand_mono(true);
        if (rng() % 3 == 0) {
            Radius t = E(1 + (long)(rng() % 4));
            return CurvePiece::edge_band_on(0, t, true, t, true, f1,
                                            rng() % 2, f2, rng() % 2);
        }
        Radius tlo = g.edges[0].lo, thi = g.edges[0].hi;
        if (rng() % 2) tlo = E(1 + (long)(rng() % 3));
        if (rng() % 2) thi = E(4 + (long)(rng() % 3));
        return CurvePiece::edge_band_on(0, tlo, rng() % 2, thi, rng() % 2,
                                        f1, rng() % 2, f2, rng() % 2);
    };

    for (int trial = 0; trial < 100; ++trial) {
        CurveRadialSet A;
        int n = 1 + rng() % 3;
        for (int k = 0; k < n; ++k)
            A.pieces.push_back(rng() % 3 == 0 ? rand_cyl() : rand_band());
        DefinableCurve D = delta(fl, A);
        CurveRadialSet back = delta_inverse(fl, D);
        for (int i = 0; i < 200; ++i) {
            BPoint y = gen.point();
            bool in = curve_member(fl, y, A);
            CHECK(in == curve_member(fl, y, back));
            CHECK(in == encoded_member(fl, encode(fl, y), D));
        }
        CHECK(set_equal(fl, A, back));
    }

    // cylinders on the projective line cover the disc at infinity
    for (int trial = 0; trial < 100; ++trial) {
        CurveRadialSet A;
        int n = 1 + rng() % 3;
        for (int k = 0; k < n; ++k) A.pieces.push_back(rand_cyl());
        DefinableCurve D = delta(fp, A);
        CurveRadialSet back = delta_inverse(fp, D);
        for (int i = 0; i < 200; ++i) {
            BPoint y = gen.point();
            bool in = curve_member(fp, y, A);
            CHECK(in == curve_member(fp, y, back));
            CHECK(in == encoded_member(fp, encode(fp, y), D));
        }
        CHECK(set_equal(fp, A, back));
    }
}
