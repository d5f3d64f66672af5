#pragma once

#include "radius.hpp"

namespace berk {

// The ground field Q with the p-adic absolute value.
class Field {
public:
    explicit Field(Int p);

    const Int& p() const { return p_; }

    // |x|_p as a value-group element; |0| = 0.
    Radius abs(const Rat& x) const;

    // |x - y|.
    Radius dist(const Rat& x, const Rat& y) const { return abs(x - y); }

    // Residue of x in F_p, for |x| <= 1 only. Returns value in [0, p).
    Int residue(const Rat& x) const;

    // True when |x - y| < 1 after the stated scale: |x - y| <= bound means
    // same residue disc of that radius. Convenience for residue-disc tests.
    bool same_residue_disc(const Rat& x, const Rat& y, const Radius& r) const {
        return dist(x, y) <= r;
    }

private:
    Int p_;
};

} // namespace berk
