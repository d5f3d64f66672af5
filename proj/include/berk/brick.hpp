#pragma once

#include "normalize.hpp"

namespace berk {

// B-bricks: rational points, open discs, open annuli, tubes.
struct Brick {
    enum class Kind { B0, B1, B2, B3 };

    Kind kind;
    Rat a;
    Radius s = Radius::zero();  // B1 outer (may be inf), B3 level (finite, nonzero)
    Radius s1 = Radius::zero(); // B2 inner
    Radius s2 = Radius::zero(); // B2 outer (may be inf)
    std::vector<Rat> holes;     // B3: |a - b_i| = s

    static Brick rational_point(Rat a);
    static Brick open_disc(Rat a, Radius s);
    static Brick open_annulus(Rat a, Radius s1, Radius s2);
    static Brick tube(const Field& F, Rat a, Radius s, std::vector<Rat> holes);

    std::string str() const;
};

struct BrickOps {
    RadialSet skeleton;
    RadialSet as_radial;
    RadialSet minus_skeleton;
};

BrickOps brick_ops(const Brick& b);

bool member(const Field& F, const BPoint& x, const Brick& b);

// A disc of the ground field; open with radius inf is the whole line.
struct KDisc {
    Rat a;
    Radius r;
    bool closed;

    std::string str() const;
};

// Outer disc minus finitely many pairwise-disjoint proper inner discs.
struct SwissCheese {
    KDisc outer;
    std::vector<KDisc> holes;
};

// The lifted subset X^B of B: points of the outer disc's Berkovich disc not
// lying in any hole's Berkovich disc.
RadialSet cheese_lift(const Field& F, const SwissCheese& x);

struct CheesePartition {
    std::vector<RadialSet> lift; // one lifted set per input cheese
    std::vector<Brick> bricks;   // disjoint bricks refining the lift
    std::vector<int> brick_cheese; // index of the cheese each brick lies in
};

// Validates the input (disjoint cheeses; covering k when more than one is
// given) and produces the lifted sets and a brick partition refining them.
CheesePartition cheese_to_bricks(const Field& F, const std::vector<SwissCheese>& xs);

} // namespace berk
