#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berk/normalize.hpp"
#include "berk/sampling.hpp"

using namespace berk;

static Radius E(int n, int d = 1) { return Radius::exp(Rat(n, d)); }
static const Radius Z = Radius::zero();
static const Radius INF = Radius::inf();

// The standard annulus-cylinder fixture: graph r = |x|/2 over |x| > 1.
static BasicRadial graph_piece(Radius s2) {
    return BasicRadial::annulus_graph(Rat(0), E(0), s2, Monomial{E(-1), Rat(1)});
}

TEST_CASE("membership of basic pieces") {
    Field F(2);
    // graph piece: r = |x|/2 on |x| > 1
    auto g = graph_piece(INF);
    CHECK(member(F, BPoint{Rat(1, 4), E(1)}, g));  // |1/4| = 4, r = 2
    CHECK(!member(F, BPoint{Rat(1, 4), E(0)}, g)); // wrong level
    CHECK(!member(F, BPoint{Rat(1), E(-1)}, g));   // |1| = 1 not > 1

    auto r7 = BasicRadial::open_cyl_band(Rat(0), E(0), E(-2), E(0));
    CHECK(!member(F, BPoint{Rat(1), E(-1)}, r7)); // D(1,1/2) not inside D^-(0,1)
    CHECK(member(F, BPoint{Rat(2), E(-1)}, r7));  // |2| = 1/2 < 1

    auto r0 = BasicRadial::point(Rat(5), Z);
    CHECK(member(F, BPoint{Rat(5), Z}, r0));
    CHECK(!member(F, BPoint{Rat(5), E(-1)}, r0));

    auto r1 = BasicRadial::branch_segment(Rat(0), E(-1), E(1));
    CHECK(member(F, BPoint{Rat(0), E(0)}, r1));
    CHECK(member(F, BPoint{Rat(2), E(0)}, r1)); // same class as eta(0,1)
    CHECK(!member(F, BPoint{Rat(0), E(-1)}, r1));

    auto r4 = BasicRadial::closed_cyl_level(Rat(0), E(0), {Rat(1)}, Z);
    CHECK(member(F, BPoint{Rat(0), Z}, r4));
    CHECK(member(F, BPoint{Rat(2), Z}, r4));
    CHECK(!member(F, BPoint{Rat(1), Z}, r4)); // inside the hole at 1
    CHECK(!member(F, BPoint{Rat(3), Z}, r4)); // |3-1| = 1/... 3 is odd: in hole
}

TEST_CASE("complement of the annulus-cylinder graph splits into seven pieces") {
    Field F(2);
    auto X = graph_piece(INF);
    auto comp = bool_normalize(F, SetExpr::complement(SetExpr::of(X)));
    for (const auto& p : comp.pieces) INFO(p.str());
    CHECK(comp.pieces.size() == 7);

    int kinds[8] = {0};
    for (const auto& p : comp.pieces) kinds[static_cast<int>(p.kind)]++;
    CHECK(kinds[0] == 1); // the point eta(0,1)
    CHECK(kinds[1] == 1); // branch segment above it
    CHECK(kinds[2] == 1); // r = 0 outside the unit disc
    CHECK(kinds[3] == 2); // bands below and above the graph
    CHECK(kinds[4] == 1); // type-1 points of the unit disc
    CHECK(kinds[5] == 1); // band over the unit disc

    // complement is sound on sampled points
    PointSampler s(301);
    for (int k = 0; k < 20000; ++k) {
        BPoint x = s.point();
        CHECK(member(F, x, comp) == !member(F, x, X));
    }
}

TEST_CASE("finite outer radius adds the boundary shell pieces") {
    Field F(2);
    auto X = graph_piece(E(2));
    SetExpr e = SetExpr::complement(SetExpr::of(X));
    auto comp = bool_normalize(F, e);
    // X1, X2 beyond the shell; X3, X4 on the shell at |x| = 4; X5..X7 in the
    // annulus; X8, X9 over the inner disc; point and branch remainder
    PointSampler s(302);
    for (int k = 0; k < 20000; ++k) {
        BPoint x = s.point();
        CHECK(member(F, x, comp) == !member(F, x, X));
    }
    bool shell_level = false, shell_band = false;
    for (const auto& p : comp.pieces) {
        if (p.kind == BasicRadial::Kind::R4 && !p.holes.empty() && p.s == E(2))
            shell_level = true;
        if (p.kind == BasicRadial::Kind::R5 && !p.holes.empty() && p.s == E(2))
            shell_band = true;
    }
    CHECK(shell_level);
    CHECK(shell_band);
    // the rebuilt union is the whole line
    RadialSet all = bool_normalize(
        F, SetExpr::unite({SetExpr::of(X), SetExpr::of(comp)}));
    RadialSet whole = bool_normalize(F, SetExpr::complement(SetExpr::unite({})));
    CHECK(is_empty_equals(F, all, whole).equal);
}

TEST_CASE("disjoint union keeps the two open-disc pieces") {
    Field F(2);
    auto r6 = BasicRadial::open_cyl_level(Rat(0), E(0), E(-2));
    auto r7 = BasicRadial::open_cyl_band(Rat(0), E(0), E(-2), E(0));
    auto u = bool_normalize(F, SetExpr::unite({SetExpr::of(r6), SetExpr::of(r7)}));
    for (const auto& p : u.pieces) INFO(p.str());
    CHECK(u.pieces.size() == 2);
    PointSampler s(303);
    for (int k = 0; k < 5000; ++k) {
        BPoint x = s.point();
        CHECK(member(F, x, u) == (member(F, x, r6) || member(F, x, r7)));
    }
}

TEST_CASE("empty cases") {
    Field F(2);
    // two branch segments on the same branch with disjoint ranges
    auto a = BasicRadial::branch_segment(Rat(0), Z, E(-1));
    auto b = BasicRadial::branch_segment(Rat(0), E(0), INF);
    CHECK(is_empty(F, SetExpr::intersect({SetExpr::of(a), SetExpr::of(b)})));
    // R3 with the bounds in the wrong order is empty
    auto bad = BasicRadial::annulus_band(Rat(0), Z, INF, Monomial{E(0), Rat(1)},
                                         Monomial{E(-2), Rat(1)});
    CHECK(is_empty(F, SetExpr::of(bad)));
    // and the whole line is not
    CHECK(!is_empty(F, SetExpr::complement(SetExpr::unite({}))));
}

TEST_CASE("is_empty_equals") {
    Field F(2);
    auto X = RadialSet{{graph_piece(INF)}};
    auto both = bool_normalize(F, SetExpr::unite({SetExpr::of(X), SetExpr::of(X)}));
    auto r = is_empty_equals(F, X, both);
    CHECK(!r.empty_a);
    CHECK(r.equal);
    auto none = RadialSet{};
    CHECK(is_empty_equals(F, none, none).empty_a);
    CHECK(!is_empty_equals(F, X, none).equal);
}

TEST_CASE("normalization is sound and disjoint on random 3-piece expressions") {
    Field F(3);
    PointSampler s(304);
    std::mt19937_64 rng(305);
    std::uniform_int_distribution<int> sel(0, 7), e6(-12, 12), deg(1, 3);
    auto rnd_radius = [&]() { return Radius::exp(Rat(e6(rng), 6)); };
    auto rnd_piece = [&]() -> BasicRadial {
        Rat a = s.rat(20);
        switch (sel(rng)) {
        case 0: return BasicRadial::point(a, rnd_radius());
        case 1: return BasicRadial::branch_segment(a, rnd_radius(), rnd_radius());
        case 2:
            return BasicRadial::annulus_graph(a, rnd_radius(), rnd_radius(),
                                              Monomial{rnd_radius(), Rat(deg(rng))});
        case 3:
            return BasicRadial::annulus_band(a, rnd_radius(), rnd_radius(),
                                             Monomial{rnd_radius(), Rat(deg(rng))},
                                             Monomial{rnd_radius(), Rat(deg(rng))});
        case 4: return BasicRadial::closed_cyl_level(a, rnd_radius(), {}, rnd_radius());
        case 5:
            return BasicRadial::closed_cyl_band(a, rnd_radius(), {}, rnd_radius(),
                                                rnd_radius());
        case 6: return BasicRadial::open_cyl_level(a, rnd_radius(), rnd_radius());
        default:
            return BasicRadial::open_cyl_band(a, rnd_radius(), rnd_radius(),
                                              rnd_radius());
        }
    };
    for (int trial = 0; trial < 25; ++trial) {
        SetExpr A = SetExpr::of(rnd_piece()), B = SetExpr::of(rnd_piece()),
                C = SetExpr::of(rnd_piece());
        SetExpr e = SetExpr::diff(SetExpr::unite({A, B}), C);
        if (trial % 3 == 1) e = SetExpr::intersect({SetExpr::unite({A, C}), B});
        if (trial % 3 == 2) e = SetExpr::complement(SetExpr::unite({A, B, C}));
        RadialSet n = bool_normalize(F, e);
        for (int k = 0; k < 400; ++k) {
            BPoint x = s.point();
            bool want = member(F, x, e);
            bool got = member(F, x, n);
            if (want != got) {
                for (const auto& p : n.pieces) INFO(p.str());
                INFO(x.str());
            }
            REQUIRE(want == got);
            int count = 0;
            for (const auto& p : n.pieces) count += member(F, x, p);
            REQUIRE(count <= 1); // sampled disjointness
        }
        // symbolic disjointness of the output pieces
        for (size_t i = 0; i < n.pieces.size(); ++i)
            for (size_t j = i + 1; j < n.pieces.size() && i < 6; ++j)
                REQUIRE(is_empty(F, SetExpr::intersect({SetExpr::of(n.pieces[i]),
                                                        SetExpr::of(n.pieces[j])})));
    }
}

TEST_CASE("involution and De Morgan") {
    Field F(2);
    auto A = RadialSet{{graph_piece(E(2))}};
    auto B = RadialSet{{BasicRadial::open_cyl_band(Rat(2), E(1), Z, E(0))}};
    SetExpr ea = SetExpr::of(A), eb = SetExpr::of(B);
    // compl(compl(A)) = A
    auto cc = bool_normalize(F, SetExpr::complement(SetExpr::complement(ea)));
    CHECK(is_empty_equals(F, cc, A).equal);
    // compl(A u B) = compl(A) n compl(B)
    auto lhs = bool_normalize(F, SetExpr::complement(SetExpr::unite({ea, eb})));
    auto rhs = bool_normalize(
        F, SetExpr::intersect({SetExpr::complement(ea), SetExpr::complement(eb)}));
    CHECK(is_empty_equals(F, lhs, rhs).equal);
}

TEST_CASE("normalization with several interacting centers") {
    Field F(2);
    // tube around 0 with a hole at 1, intersected with a disc around 3
    auto t = BasicRadial::closed_cyl_band(Rat(0), E(0), {Rat(1)}, Z, E(0));
    auto d7 = BasicRadial::open_cyl_band(Rat(3), E(0), Z, E(-1));
    SetExpr e = SetExpr::diff(SetExpr::of(t), SetExpr::of(d7));
    auto n = bool_normalize(F, e);
    PointSampler s(306);
    for (int k = 0; k < 10000; ++k) {
        BPoint x = s.point();
        REQUIRE(member(F, x, n) == member(F, x, e));
    }
}
