#pragma once

#include "radial.hpp"

namespace berk {

// Rewrites a boolean combination of basic radial pieces as a finite disjoint
// union of basic pieces with the same membership function. Emptiness and
// membership are judged over the algebraic closure: a piece that contains no
// point with rational center may still be non-empty.
RadialSet bool_normalize(const Field& F, const SetExpr& expr);

inline RadialSet bool_normalize(const Field& F, const RadialSet& s) {
    return bool_normalize(F, SetExpr::of(s));
}

bool is_empty(const Field& F, const SetExpr& e);

struct EmptyEq {
    bool empty_a;
    bool equal;
};

EmptyEq is_empty_equals(const Field& F, const RadialSet& A, const RadialSet& B);

inline EmptyEq is_empty_equals(const Field& F, const SetExpr& A, const SetExpr& B) {
    return is_empty_equals(F, bool_normalize(F, A), bool_normalize(F, B));
}

} // namespace berk
