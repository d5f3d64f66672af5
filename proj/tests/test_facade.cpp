#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berk/facade.hpp"
#include "berk/sampling.hpp"

#include <random>

using namespace berk;

namespace {

Radius E(long n, long d = 1) { return Radius::exp(Rat(n, d)); }
const Radius Z = Radius::zero();

Polynomial P(std::vector<long> cs) {
    std::vector<Rat> rs(cs.begin(), cs.end());
    return Polynomial::of(std::move(rs));
}

// a random point of the closed unit disc
BPoint unit_disc_point(const Field& F, PointSampler& gen, std::mt19937_64& rng) {
    Rat a = gen.rat();
    if (Radius::one() < F.abs(a)) a = a == 0 ? Rat(0) : 1 / a;
    Radius r = Radius::zero();
    if (rng() % 8) r = Radius::exp(Rat(-(long)(rng() % 19), 6));
    return {a, r};
}

} // namespace

TEST_CASE("triangulation validation") {
    Field F(2);
    Domain disc = Domain::closed_disc(F, 0, E(0));
    Domain line = Domain::line();
    Domain proj = Domain::projective_line();

    Triangulation t = triangulate(F, line, {BPoint{0, E(0)}});
    CHECK(t.points.size() == 1);

    CHECK_THROWS_AS(triangulate(F, line, {}), validation_error);
    CHECK_THROWS_AS(triangulate(F, disc, {BPoint{0, E(-1)}}), validation_error);
    CHECK_THROWS_AS(triangulate(F, line, {BPoint{2, E(-1)}, BPoint{3, E(-2)}}),
                    validation_error);
    CHECK_THROWS_AS(triangulate(F, proj, {BPoint{0, Z}}), validation_error);
    CHECK_THROWS_AS(triangulate(F, disc, {BPoint{0, E(1)}}), validation_error);

    // adding the join makes the branching set valid
    Triangulation ok = triangulate(
        F, disc, {BPoint{0, E(0)}, BPoint{0, E(-1)}, BPoint{1, E(-1)}});
    CHECK(ok.points.size() == 3);

    CHECK_THROWS_AS(
        triangulate(F, Domain{Brick::open_annulus(0, E(-1), E(1)), false},
                    {BPoint{0, E(0)}}),
        unsupported_error);
}

TEST_CASE("refine and prune invert each other") {
    Field F(2);
    Domain line = Domain::line();
    std::vector<BPoint> base = {BPoint{0, E(0)}};
    Triangulation t = triangulate(F, line, base);
    Triangulation t2 = refine(F, t, {BPoint{0, E(1)}});
    CHECK(t2.points.size() == 2);
    Triangulation back = prune(F, t2, base);
    REQUIRE(back.points.size() == 1);
    CHECK(point_eq(F, back.points[0], BPoint{0, E(0)}));

    // the boundary vertex of a closed disc cannot be pruned away
    Domain disc = Domain::closed_disc(F, 0, E(0));
    Triangulation td = triangulate(F, disc, {BPoint{0, E(0)}});
    CHECK(prune(F, td, {}).points.size() == 1);
}

TEST_CASE("retraction onto the skeleton") {
    Field F(2);
    Domain line = Domain::line();
    Retraction r = skeleton_retract(F, triangulate(F, line, {BPoint{0, E(0)}}));
    REQUIRE(r.graph.edges.size() == 1);
    CHECK(r.graph.edges[0].parent == -1);
    CHECK(r.graph.edges[0].hi.is_inf());

    CHECK(point_eq(F, r.tau(F, line, BPoint{2, E(-5)}), BPoint{0, E(0)}));
    CHECK(point_eq(F, r.tau(F, line, BPoint{4, E(3)}), BPoint{4, E(3)}));
    CHECK(point_eq(F, r.tau(F, line, BPoint{4, E(3)}), BPoint{0, E(3)}));

    PointSampler gen(41);
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        BPoint y = gen.point();
        BPoint x = r.tau(F, line, y);
        CHECK(r.graph.on_skeleton(F, x));
        CHECK(point_eq(F, r.tau(F, line, x), x));
        CHECK(point_eq(F, r.nu(F, line, Z, y), y));
        CHECK(point_eq(F, r.nu(F, line, Radius::one(), y), x));
        BPoint mid = r.nu(F, line, E(-1), y);
        CHECK(point_eq(F, r.tau(F, line, mid), x));
    }
    CHECK_THROWS_AS(r.nu(F, line, E(1), BPoint{0, Z}), validation_error);

    // on P^1 the component at infinity retracts to the boundary vertex
    Domain proj = Domain::projective_line();
    Retraction rp = skeleton_retract(F, triangulate(F, proj, {BPoint{0, E(0)}}));
    CHECK(rp.graph.edges.empty());
    CHECK(point_eq(F, rp.tau(F, proj, BPoint{4, E(2)}), BPoint{0, E(0)}));
    CHECK(point_eq(F, rp.nu(F, proj, Z, BPoint{4, E(2)}), BPoint{4, E(2)}));
    CHECK(point_eq(F, rp.nu(F, proj, Radius::one(), BPoint{4, E(2)}),
                   BPoint{0, E(0)}));
    BPoint midp = rp.nu(F, proj, E(-1), BPoint{4, E(2)});
    CHECK(point_eq(F, rp.tau(F, proj, midp), BPoint{0, E(0)}));
}

TEST_CASE("facade construction on the three fixtures") {
    Field F(2);
    Facade fd = build_facade(F, triangulate(F, Domain::closed_disc(F, 0, E(0)),
                                            {BPoint{0, E(0)}}));
    CHECK(fd.graph().edges.empty());
    REQUIRE(fd.charts[0]);
    CHECK(fd.charts[0]->c == 0);
    CHECK(fd.charts[0]->u == 1);
    CHECK(fd.charts[0]->excluded.empty());
    CHECK(fd.charts[0]->discs.empty());

    Facade fl = build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(0)}}));
    CHECK(fl.graph().edges.size() == 1);
    CHECK(fl.charts[0]->discs.empty());

    Facade fp = build_facade(
        F, triangulate(F, Domain::projective_line(), {BPoint{0, E(0)}}));
    CHECK(fp.graph().edges.empty());
    REQUIRE(fp.charts[0]->discs.size() == 1);

    CHECK_THROWS_AS(
        build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(1, 2)}})),
        unsupported_error);
}

TEST_CASE("encode fixtures and round trips") {
    Field F(2);
    Facade fd = build_facade(F, triangulate(F, Domain::closed_disc(F, 0, E(0)),
                                            {BPoint{0, E(0)}}));
    EncodedPoint t = encode(fd, BPoint{3, E(-2)});
    CHECK(t.kind == EncodedPoint::Kind::Tube);
    CHECK(t.alpha == 1);
    CHECK(point_eq(F, *t.eta, BPoint{3, E(-2)}));
    CHECK(encode(fd, BPoint{0, E(0)}).kind == EncodedPoint::Kind::Vtx2);
    CHECK_THROWS_AS(encode(fd, BPoint{0, E(1)}), domain_error);

    Facade fl = build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(0)}}));
    EncodedPoint e = encode(fl, BPoint{0, E(2)});
    CHECK(e.kind == EncodedPoint::Kind::Edge);
    CHECK(point_eq(F, *e.eta, BPoint{0, E(2)}));

    Facade fp = build_facade(
        F, triangulate(F, Domain::projective_line(), {BPoint{0, E(0)}}));
    EncodedPoint d = encode(fp, BPoint{4, E(2)});
    CHECK(d.kind == EncodedPoint::Kind::Disc);
    CHECK(point_eq(F, *d.eta, BPoint{0, E(-2)}));
    CHECK(encode(fp, BPoint{8, Z}).alpha == 0);

    // decode rejects malformed codes
    CHECK_THROWS_AS(decode(fd, EncodedPoint::in_tube(0, 0, BPoint{3, E(-2)})),
                    validation_error);
    CHECK_THROWS_AS(decode(fl, EncodedPoint::on_edge(0, BPoint{0, E(-1)})),
                    validation_error);
    CHECK_THROWS_AS(decode(fp, EncodedPoint::in_disc(0, 0, BPoint{0, Z})),
                    domain_error);

    PointSampler gen(7);
    std::mt19937_64 rng(8);
    std::vector<Facade*> fixtures = {&fd, &fl, &fp};
    for (Facade* fa : fixtures) {
        for (int i = 0; i < 1000; ++i) {
            BPoint y = fa->dom.brick.s.is_inf() ? gen.point()
                                                : unit_disc_point(F, gen, rng);
            EncodedPoint enc = encode(*fa, y);
            if (enc.kind == EncodedPoint::Kind::Tube)
                CHECK(F.residue(enc.eta->a) == enc.alpha);
            CHECK(point_eq(F, decode(*fa, enc), y));
            CHECK(encoded_eq(F, encode(*fa, decode(*fa, enc)), enc));
        }
    }
}

TEST_CASE("refinement transport") {
    Field F(2);
    Domain disc = Domain::closed_disc(F, 0, E(0));
    Facade f1 = build_facade(F, triangulate(F, disc, {BPoint{0, E(0)}}));
    Facade f2 = build_facade(
        F, triangulate(F, disc, {BPoint{0, E(0)}, BPoint{0, E(-1)}}));

    EncodedPoint moved =
        transport_id(f1, f2, EncodedPoint::in_tube(0, 0, BPoint{0, E(-1)}));
    CHECK(moved.kind == EncodedPoint::Kind::Vtx2);
    CHECK(point_eq(F, f2.S[moved.vertex], BPoint{0, E(-1)}));

    EncodedPoint kept =
        transport_id(f1, f2, EncodedPoint::in_tube(0, 1, BPoint{3, E(-2)}));
    CHECK(kept.kind == EncodedPoint::Kind::Tube);
    CHECK(kept.alpha == 1);
    CHECK(point_eq(F, *kept.eta, BPoint{3, E(-2)}));
    CHECK(point_eq(F, f2.S[kept.vertex], BPoint{0, E(0)}));

    CHECK_THROWS_AS(transport_id(f2, f1, EncodedPoint::vtx2(0)),
                    validation_error);

    PointSampler gen(19);
    std::mt19937_64 rng(20);
    for (int i = 0; i < 1000; ++i) {
        BPoint y = unit_disc_point(F, gen, rng);
        EncodedPoint e1 = encode(f1, y);
        EncodedPoint e2 = transport_id(f1, f2, e1);
        CHECK(encoded_eq(F, e2, encode(f2, y)));
        CHECK(point_eq(F, decode(f2, e2), decode(f1, e1)));
    }
}

TEST_CASE("morphism transport for T^2") {
    Field F(2);
    RationalMap sq = RationalMap::poly(P({0, 0, 1}));
    Domain disc = Domain::closed_disc(F, 0, E(0));
    Facade fd = build_facade(F, triangulate(F, disc, {BPoint{0, E(0)}}));

    EncodedPoint img =
        map_transport(sq, fd, fd, EncodedPoint::in_tube(0, 1, BPoint{3, E(-2)}));
    CHECK(img.kind == EncodedPoint::Kind::Tube);
    CHECK(img.alpha == 1);
    CHECK(point_eq(F, *img.eta, BPoint{9, E(-3)}));
    CHECK(map_transport(sq, fd, fd, EncodedPoint::vtx2(0)).kind ==
          EncodedPoint::Kind::Vtx2);

    CHECK_THROWS_AS(
        map_transport(RationalMap::poly(P({0, 2})), fd, fd,
                      EncodedPoint::vtx2(0)),
        validation_error);

    PointSampler gen(55);
    std::mt19937_64 rng(56);
    for (int i = 0; i < 1000; ++i) {
        BPoint y = unit_disc_point(F, gen, rng);
        EncodedPoint lhs = encode(fd, pushforward(F, sq, y).point);
        EncodedPoint rhs = map_transport(sq, fd, fd, encode(fd, y));
        CHECK(encoded_eq(F, lhs, rhs));
    }
}

TEST_CASE("compiled maps") {
    Field F(2);
    RationalMap sq = RationalMap::poly(P({0, 0, 1}));
    Facade fl = build_facade(F, triangulate(F, Domain::line(), {BPoint{0, E(0)}}));

    CompiledMap cm = compile_map(sq, fl, fl);
    REQUIRE(cm.edges.size() == 1);
    CHECK(cm.edges[0].m == Monomial{Radius::one(), Rat(2)});
    CHECK(cm.edges[0].degree == 2);
    CHECK(cm.edges[0].lo == E(0));
    CHECK(cm.edges[0].hi.is_inf());
    REQUIRE(cm.tubes.size() == 1);
    CHECK(cm.tubes[0].residue_coeffs == std::vector<Int>{0, 0, 1});

    // the edge description matches pointwise transport at 10 radii
    for (const auto& pc : cm.edges) {
        const SkeletonEdge& ed = fl.graph().edges[pc.edge];
        for (int k = 1; k <= 10; ++k) {
            Radius t = Radius::exp(pc.lo.exponent() + Rat(k, 3));
            if (!(t < pc.hi) && !pc.hi.is_inf()) continue;
            EncodedPoint e = encode(fl, BPoint{ed.c, t});
            EncodedPoint out = map_transport(sq, fl, fl, e);
            REQUIRE(out.kind == EncodedPoint::Kind::Edge);
            CHECK(out.eta->r == pc.m.eval(t));
        }
    }

    Facade fp = build_facade(
        F, triangulate(F, Domain::projective_line(), {BPoint{0, E(0)}}));
    RationalMap inv = RationalMap::of(P({1}), P({0, 1}));
    CHECK_THROWS_AS(compile_map(inv, fp, fp), unsupported_error);

    // 1/T on P^1: the point at infinity transports to the fiber of zero
    EncodedPoint zinf = EncodedPoint::in_disc(0, 0, BPoint{0, Z});
    EncodedPoint z = map_transport(inv, fp, fp, zinf);
    CHECK(z.kind == EncodedPoint::Kind::Tube);
    CHECK(point_eq(F, *z.eta, BPoint{0, Z}));
    EncodedPoint back = map_transport(inv, fp, fp, z);
    CHECK(encoded_eq(F, back, zinf));
}
