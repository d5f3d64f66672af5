#pragma once

#include <random>

#include "bpoint.hpp"

namespace berk {

// Random type-1/2 points: rational centers with bounded numerator and
// denominator, radii zero or p^(z/6) for small z.
class PointSampler {
public:
    explicit PointSampler(uint64_t seed) : rng_(seed) {}

    Rat rat(int bound = 60) {
        std::uniform_int_distribution<int> num(-bound, bound);
        std::uniform_int_distribution<int> den(1, 12);
        Rat q(num(rng_), den(rng_));
        q.canonicalize();
        return q;
    }

    Radius radius() {
        std::uniform_int_distribution<int> sel(0, 9);
        if (sel(rng_) == 0) return Radius::zero();
        std::uniform_int_distribution<int> e(-18, 18);
        return Radius::exp(Rat(e(rng_), 6));
    }

    BPoint point() { return {rat(), radius()}; }

private:
    std::mt19937_64 rng_;
};

} // namespace berk
