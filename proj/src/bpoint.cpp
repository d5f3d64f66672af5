#include "berk/bpoint.hpp"

#include <algorithm>
#include <sstream>

namespace berk {

DiscRel disc_rel(const Field& F, const BPoint& x, const BPoint& y) {
    Radius d = F.dist(x.a, y.a);
    BPoint j{x.a, rmax(rmax(x.r, y.r), d)};
    if (x.r == y.r && d <= x.r) return {j, DiscRelation::Equal, false};
    if (rmax(x.r, d) <= y.r)
        return {j, DiscRelation::XInsideY, x.r < y.r && d < y.r};
    if (rmax(y.r, d) <= x.r)
        return {j, DiscRelation::YInsideX, y.r < x.r && d < x.r};
    return {j, DiscRelation::Disjoint, false};
}

Residue red(const Field& F, const BPoint& x) {
    if (F.abs(x.a) > Radius::one() || !(x.r < Radius::one()))
        throw domain_error("red is defined on the open-unit-radius part of the unit disc");
    return Residue::of(F.residue(x.a));
}

int DiscTree::root() const {
    for (size_t i = 0; i < parent.size(); ++i)
        if (parent[i] < 0) return static_cast<int>(i);
    throw domain_error("tree has no root");
}

std::vector<int> DiscTree::children(int i) const {
    std::vector<int> out;
    for (size_t k = 0; k < parent.size(); ++k)
        if (parent[k] == i) out.push_back(static_cast<int>(k));
    return out;
}

std::string DiscTree::to_dot() const {
    std::ostringstream os;
    os << "digraph disc_tree {\n";
    for (size_t i = 0; i < nodes.size(); ++i)
        os << "  n" << i << " [label=\"" << nodes[i].str() << "\"];\n";
    for (size_t i = 0; i < nodes.size(); ++i)
        if (parent[i] >= 0) os << "  n" << parent[i] << " -> n" << i << ";\n";
    os << "}\n";
    return os.str();
}

DiscTree span_tree(const Field& F, const std::vector<BPoint>& pts) {
    if (pts.empty()) throw validation_error("span_tree of an empty set");
    std::vector<BPoint> nodes;
    auto add = [&](const BPoint& q) {
        for (const auto& n : nodes)
            if (point_eq(F, n, q)) return false;
        nodes.push_back(q);
        return true;
    };
    for (const auto& q : pts) add(q);
    // Close under pairwise joins; a fresh join can only grow the radius, so
    // the loop terminates at the join of the whole family.
    bool grew = true;
    while (grew) {
        grew = false;
        size_t n = nodes.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (add(disc_join(F, nodes[i], nodes[j]))) grew = true;
    }
    std::sort(nodes.begin(), nodes.end(), [](const BPoint& x, const BPoint& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.r < y.r;
    });
    DiscTree tree{nodes, std::vector<int>(nodes.size(), -1)};
    for (size_t i = 0; i < nodes.size(); ++i) {
        int best = -1;
        for (size_t j = 0; j < nodes.size(); ++j) {
            if (i == j || point_eq(F, nodes[i], nodes[j])) continue;
            auto rel = disc_rel(F, nodes[i], nodes[j]);
            if (rel.relation != DiscRelation::XInsideY) continue;
            if (best < 0 || nodes[j].r < nodes[best].r) best = static_cast<int>(j);
        }
        tree.parent[i] = best;
    }
    return tree;
}

} // namespace berk
