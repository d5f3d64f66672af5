#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berk/brick.hpp"
#include "berk/sampling.hpp"

using namespace berk;

namespace {

Radius E(long n, long d = 1) { return Radius::exp(Rat(n, d)); }
const Radius Z = Radius::zero();
const Radius INF = Radius::inf();

SetExpr set_union(const std::vector<RadialSet>& sets) {
    std::vector<SetExpr> xs;
    for (const auto& s : sets) xs.push_back(SetExpr::of(s));
    return SetExpr::unite(std::move(xs));
}

} // namespace

TEST_CASE("brick skeletons") {
    Field F(2);
    Brick ann = Brick::open_annulus(0, E(-1), E(2));
    BrickOps ops = brick_ops(ann);
    REQUIRE(ops.skeleton.pieces.size() == 1);
    CHECK(ops.skeleton.pieces[0].kind == BasicRadial::Kind::R1);
    CHECK(member(F, BPoint{0, E(1)}, ops.skeleton));
    CHECK(!member(F, BPoint{0, E(2)}, ops.skeleton));
    CHECK(!member(F, BPoint{1, E(-1)}, ops.skeleton)); // off the segment

    Brick disc = Brick::open_disc(0, E(0));
    CHECK(brick_ops(disc).skeleton.pieces.empty());
    CHECK(brick_ops(Brick::rational_point(5)).skeleton.pieces.empty());

    Brick tube = Brick::tube(F, 0, E(0), {1});
    BrickOps tops = brick_ops(tube);
    REQUIRE(tops.skeleton.pieces.size() == 1);
    CHECK(tops.skeleton.pieces[0].kind == BasicRadial::Kind::R0);
    CHECK(member(F, BPoint{0, E(0)}, tops.skeleton));
    CHECK(member(F, BPoint{1, E(0)}, tops.skeleton)); // same point of B
}

TEST_CASE("brick as_radial splits into skeleton and complement") {
    Field F(3);
    std::vector<Brick> bricks = {
        Brick::rational_point(Rat(1, 3)),
        Brick::open_disc(2, E(1)),
        Brick::open_disc(0, INF),
        Brick::open_annulus(1, Z, E(0)),
        Brick::open_annulus(0, E(-2), INF),
        Brick::tube(F, 0, E(0), {}),
        Brick::tube(F, 0, E(0), {0, 1, 2}),
    };
    PointSampler gen(41);
    for (const auto& b : bricks) {
        CAPTURE(b.str());
        BrickOps ops = brick_ops(b);
        SetExpr split = SetExpr::unite(
            {SetExpr::of(ops.skeleton), SetExpr::of(ops.minus_skeleton)});
        auto r = is_empty_equals(F, SetExpr::of(ops.as_radial), split);
        CHECK(r.equal);
        // skeleton and complement are disjoint
        CHECK(is_empty(F, SetExpr::intersect({SetExpr::of(ops.skeleton),
                                              SetExpr::of(ops.minus_skeleton)})));
        for (int i = 0; i < 2000; ++i) {
            BPoint x = gen.point();
            CHECK(member(F, x, b) == member(F, x, ops.as_radial));
        }
    }
}

TEST_CASE("tube membership") {
    Field F(2);
    Brick t = Brick::tube(F, 0, E(0), {1});
    CHECK(member(F, BPoint{0, E(0)}, t));   // the level point itself
    CHECK(member(F, BPoint{0, E(-1)}, t));  // inside, outside the hole
    CHECK(member(F, BPoint{0, Z}, t));
    CHECK(!member(F, BPoint{1, E(-1)}, t)); // inside the hole
    CHECK(!member(F, BPoint{1, Z}, t));
    CHECK(!member(F, BPoint{0, E(1)}, t));  // too big
    CHECK(member(F, BPoint{4, E(-3)}, t)); // |4 - 1| = 1: outside the hole
    CHECK(member(F, BPoint{2, E(-1)}, t));

    CHECK_THROWS_AS(Brick::tube(F, 0, E(0), {Rat(1, 2)}), validation_error);
    CHECK_THROWS_AS(Brick::tube(F, 0, INF, {}), validation_error);
    CHECK_THROWS_AS(Brick::open_disc(0, Z), validation_error);
}

TEST_CASE("single cheese: closed unit disc minus open unit disc at 1") {
    Field F(2);
    SwissCheese x{KDisc{0, E(0), true}, {KDisc{1, E(0), false}}};
    auto part = cheese_to_bricks(F, {x});
    REQUIRE(part.bricks.size() == 1);
    const Brick& b = part.bricks[0];
    CHECK(b.kind == Brick::Kind::B3);
    CHECK(b.a == 0);
    CHECK(b.s == E(0));
    REQUIRE(b.holes.size() == 1);
    CHECK(b.holes[0] == 1);

    REQUIRE(part.lift.size() == 1);
    auto r = is_empty_equals(F, SetExpr::of(part.lift[0]),
                             SetExpr::of(brick_ops(b).as_radial));
    CHECK(r.equal);
}

TEST_CASE("cheese with nested holes") {
    Field F(2);
    // D(0,1) minus the open unit disc at 1 and the closed disc D(0,1/4)
    SwissCheese x{KDisc{0, E(0), true},
                  {KDisc{1, E(0), false}, KDisc{0, E(-2), true}}};
    auto part = cheese_to_bricks(F, {x});
    REQUIRE(part.bricks.size() == 2);
    CHECK(part.bricks[0].kind == Brick::Kind::B3);
    CHECK(part.bricks[0].holes.size() == 2);
    CHECK(part.bricks[1].kind == Brick::Kind::B2);
    CHECK(part.bricks[1].s1 == E(-2));
    CHECK(part.bricks[1].s2 == E(0));

    std::vector<RadialSet> as_sets;
    for (const auto& b : part.bricks) as_sets.push_back(brick_ops(b).as_radial);
    auto r = is_empty_equals(F, SetExpr::of(part.lift[0]), set_union(as_sets));
    CHECK(r.equal);
    // bricks are pairwise disjoint
    CHECK(is_empty(F, SetExpr::intersect({SetExpr::of(as_sets[0]),
                                          SetExpr::of(as_sets[1])})));
}

TEST_CASE("partition of the line") {
    Field F(3);
    SwissCheese inside{KDisc{0, E(0), true}, {}};
    SwissCheese outside{KDisc{0, INF, false}, {KDisc{0, E(0), true}}};
    auto part = cheese_to_bricks(F, {inside, outside});
    REQUIRE(part.bricks.size() == 2);
    CHECK(part.bricks[0].kind == Brick::Kind::B3);
    CHECK(part.bricks[0].holes.empty());
    CHECK(part.bricks[1].kind == Brick::Kind::B2);
    CHECK(part.bricks[1].s1 == E(0));
    CHECK(part.bricks[1].s2 == INF);
    CHECK(part.brick_cheese == std::vector<int>({0, 1}));

    // the bricks partition B: disjoint, and their union is everything
    std::vector<RadialSet> as_sets;
    for (const auto& b : part.bricks) as_sets.push_back(brick_ops(b).as_radial);
    CHECK(is_empty(F, SetExpr::intersect({SetExpr::of(as_sets[0]),
                                          SetExpr::of(as_sets[1])})));
    CHECK(is_empty(F, SetExpr::complement(set_union(as_sets))));
    PointSampler gen(7);
    for (int i = 0; i < 5000; ++i) {
        BPoint p = gen.point();
        int hits = 0;
        for (size_t j = 0; j < part.bricks.size(); ++j)
            if (member(F, p, part.bricks[j])) ++hits;
        CHECK(hits == 1);
    }
}

TEST_CASE("whole line is a single open disc") {
    Field F(5);
    auto part = cheese_to_bricks(F, {SwissCheese{KDisc{0, INF, false}, {}}});
    REQUIRE(part.bricks.size() == 1);
    CHECK(part.bricks[0].kind == Brick::Kind::B1);
    CHECK(part.bricks[0].s == INF);
}

TEST_CASE("cheese validation") {
    Field F(2);
    // hole not inside the outer disc
    CHECK_THROWS_AS(
        cheese_to_bricks(F, {SwissCheese{KDisc{0, E(0), true},
                                         {KDisc{0, E(1), true}}}}),
        validation_error);
    // overlapping holes
    CHECK_THROWS_AS(
        cheese_to_bricks(F, {SwissCheese{KDisc{0, E(1), true},
                                         {KDisc{0, E(0), true},
                                          KDisc{2, E(-1), true}}}}),
        validation_error);
    // two cheeses that overlap
    CHECK_THROWS_AS(
        cheese_to_bricks(F, {SwissCheese{KDisc{0, E(0), true}, {}},
                             SwissCheese{KDisc{0, INF, false}, {}}}),
        validation_error);
    // two cheeses that fail to cover the line
    CHECK_THROWS_AS(
        cheese_to_bricks(F, {SwissCheese{KDisc{0, E(0), true}, {}},
                             SwissCheese{KDisc{7, E(-1), false}, {}}}),
        validation_error);
}

TEST_CASE("random cheeses round-trip through bricks") {
    Field F(2);
    PointSampler gen(99);
    for (int trial = 0; trial < 20; ++trial) {
        CAPTURE(trial);
        long e = trial % 5 - 2;
        Radius s = E(e);
        SwissCheese x{KDisc{gen.rat(), s, true}, {}};
        Rat c = x.outer.a;
        Rat step = Rat(int_pow(2, e < 0 ? -e : 0)); // |step| <= s
        for (int h = 0; h <= trial % 3; ++h) {
            KDisc hole{c + Rat(h) * step, s * E(-(1 + h % 2)), h % 2 == 0};
            bool ok = true;
            for (const auto& k : x.holes)
                if (!(F.dist(hole.a, k.a) > rmax(hole.r, k.r))) ok = false;
            if (ok) x.holes.push_back(hole);
        }
        auto part = cheese_to_bricks(F, {x});
        std::vector<RadialSet> as_sets;
        for (const auto& b : part.bricks) as_sets.push_back(brick_ops(b).as_radial);
        auto r = is_empty_equals(F, SetExpr::of(part.lift[0]), set_union(as_sets));
        CHECK(r.equal);
        for (int i = 0; i < 500; ++i) {
            BPoint p = gen.point();
            int hits = 0;
            for (const auto& b : part.bricks)
                if (member(F, p, b)) ++hits;
            CHECK(hits == (member(F, p, part.lift[0]) ? 1 : 0));
        }
    }
}
