#include "berk/normalize.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace berk {

namespace {

// A value strictly between lo and hi in the value group.
Radius between(const Radius& lo, const Radius& hi) {
    if (lo.is_zero() && hi.is_inf()) return Radius::one();
    if (lo.is_zero()) return Radius::exp(hi.exponent() - 1);
    if (hi.is_inf()) return Radius::exp(lo.exponent() + 1);
    return Radius::exp((lo.exponent() + hi.exponent()) / 2);
}

// Truth of the input expression over one sweep strip, as alternating
// level/band cells. levels[0] is always the zero monomial; band k covers the
// open interval between levels[k] and levels[k+1] (the strip cap for the
// last band).
struct Pattern {
    std::vector<Monomial> levels;
    std::vector<char> lt, bt;
};

// Constant-radius transition list of a pattern: the minimal description of
// its truth function when all real transitions sit at constant radii.
struct Canon {
    bool ok = true; // false: a non-constant monomial carries a real transition
    char lt0 = 0, bt0 = 0;
    struct Trans {
        Radius w;
        char lt, bt;
        bool operator==(const Trans& o) const {
            return w == o.w && lt == o.lt && bt == o.bt;
        }
    };
    std::vector<Trans> trans;

    bool matches(const Canon& o) const {
        return ok && o.ok && lt0 == o.lt0 && bt0 == o.bt0 && trans == o.trans;
    }
};

Canon canonicalize(const Pattern& p, const Radius& limit) {
    Canon c;
    c.lt0 = p.lt[0];
    c.bt0 = p.bt[0];
    for (size_t k = 1; k < p.levels.size(); ++k) {
        bool real = p.lt[k] != p.bt[k - 1] || p.bt[k] != p.bt[k - 1];
        if (!real) continue;
        if (!p.levels[k].is_constant()) {
            c.ok = false;
            return c;
        }
        Radius w = p.levels[k].coeff;
        if (!(w < limit)) continue;
        c.trans.push_back({w, p.lt[k], p.bt[k]});
    }
    return c;
}

Canon truncate(Canon c, const Radius& limit) {
    std::vector<Canon::Trans> kept;
    for (auto& t : c.trans)
        if (t.w < limit) kept.push_back(t);
    c.trans = std::move(kept);
    return c;
}

// Run-merging emission: maximal true runs of bands absorb interior true
// levels; remaining true levels come out on their own.
void emit_cells(const std::vector<Monomial>& levels, const std::vector<char>& lt,
                const std::vector<char>& bt, const Monomial& cap,
                const std::function<void(const Monomial&)>& level_cb,
                const std::function<void(const Monomial&, const Monomial&)>& band_cb) {
    size_t n = levels.size();
    for (size_t k = 0; k < n; ++k)
        if (lt[k] && !(k >= 1 && bt[k - 1] && bt[k])) level_cb(levels[k]);
    for (size_t k = 0; k < n;) {
        if (!bt[k]) {
            ++k;
            continue;
        }
        size_t start = k;
        while (k + 1 < n && bt[k + 1] && lt[k + 1]) ++k;
        band_cb(levels[start], k + 1 < n ? levels[k + 1] : cap);
        ++k;
    }
}

struct Region {
    enum class Type { Slab, Shell, Branch };
    Type type;
    int center;
    Radius lo, hi; // slab: open (lo,hi); shell: lo==hi; branch: [0,hi)
    Pattern pat;
    std::vector<Rat> holes; // shell only
    bool consumed = false;
    bool floored = false; // branch only: cells below `floor` already merged
    Radius floor = Radius::zero();
};

struct Normalizer {
    const Field& F;
    const SetExpr& expr;

    std::vector<BasicRadial> leaves;
    std::vector<Rat> centers;
    std::map<Rat, int> cidx;
    std::vector<std::vector<Radius>> d;   // center distance matrix
    std::vector<Radius> cut;              // canonical ownership bound per center
    std::vector<std::vector<Radius>> crit; // per-center sweep criticals (finite, > 0)
    std::vector<Region> regions;
    std::vector<char> center_consumed;
    std::vector<BasicRadial> out;

    Normalizer(const Field& f, const SetExpr& e) : F(f), expr(e) {}

    void collect_leaves(const SetExpr& e) {
        if (e.op == SetExpr::Op::Leaf) {
            leaves.push_back(e.leaf);
            return;
        }
        for (const auto& x : e.args) collect_leaves(x);
    }

    void setup() {
        collect_leaves(expr);
        std::set<Rat> cs;
        for (const auto& p : leaves) {
            cs.insert(p.a);
            for (const auto& b : p.holes) cs.insert(b);
        }
        if (cs.empty()) cs.insert(Rat(0));
        centers.assign(cs.begin(), cs.end());
        for (size_t i = 0; i < centers.size(); ++i)
            cidx[centers[i]] = static_cast<int>(i);
        size_t n = centers.size();
        d.assign(n, std::vector<Radius>(n, Radius::zero()));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                d[i][j] = F.dist(centers[i], centers[j]);
        cut.assign(n, Radius::inf());
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < i; ++j) cut[i] = rmin(cut[i], d[i][j]);
        center_consumed.assign(n, 0);
    }

    void add_crit(std::set<Radius>& s, const Radius& r) {
        if (r.is_finite() && r > Radius::zero()) s.insert(r);
    }

    // Radius bounds a leaf compares r against over off-branch cells. Domain
    // conditions (disc containment/avoidance) never flip in r on those cells
    // and stay out of the arrangement.
    static std::vector<Monomial> leaf_bounds(const BasicRadial& p) {
        using K = BasicRadial::Kind;
        switch (p.kind) {
        case K::R2: return {p.m1};
        case K::R3: return {p.m1, p.m2};
        case K::R4:
        case K::R6: return {Monomial::constant(p.s1)};
        case K::R5:
        case K::R7: {
            std::vector<Monomial> ms{Monomial::constant(p.s1)};
            if (p.s2.is_finite()) ms.push_back(Monomial::constant(p.s2));
            return ms;
        }
        default: return {};
        }
    }

    // All rewritten forms the leaf bounds can take around center i: the
    // function itself (inner case, |x-a| equals the sweep height) and its
    // value at each fixed center distance (outer case).
    std::vector<Monomial> monomial_variants(size_t i) {
        std::vector<Monomial> vars;
        vars.push_back(Monomial::constant(Radius::zero()));
        vars.push_back(Monomial::identity());
        for (const auto& p : leaves) {
            size_t cj = static_cast<size_t>(cidx.at(p.a));
            for (const auto& m : leaf_bounds(p)) {
                vars.push_back(m);
                if (!m.is_constant() && !d[i][cj].is_zero()) {
                    try {
                        vars.push_back(Monomial::constant(m.eval(d[i][cj])));
                    } catch (const domain_error&) {
                    }
                }
            }
        }
        return vars;
    }

    std::vector<Radius> criticals(size_t i) {
        std::set<Radius> s;
        for (size_t j = 0; j < centers.size(); ++j)
            if (j != i) add_crit(s, d[i][j]);
        // domain parameters flip containment conditions at their height
        for (const auto& p : leaves)
            for (const Radius* r : {&p.s, &p.s1, &p.s2}) add_crit(s, *r);
        auto vars = monomial_variants(i);
        for (const auto& m : vars)
            if (m.is_constant() && !m.is_zero()) add_crit(s, m.coeff);
        for (size_t a = 0; a < vars.size(); ++a)
            for (size_t b = a + 1; b < vars.size(); ++b)
                if (auto t = crossing(vars[a], vars[b]))
                    add_crit(s, *t);
        return {s.begin(), s.end()};
    }

    bool eval_at(const DistFn& dist, const Radius& r) {
        return member_core(expr, dist, r);
    }

    // Arrangement monomials for a sweep cell family with distance profile
    // dd (from the sweep point to every center) and cap `cap`; `inner(cj)`
    // says whether a leaf centered at cj sees the sweep height itself.
    Pattern build_pattern(const DistFn& dist, const Radius& v0, const Radius& capval,
                          const std::function<bool(size_t)>& inner) {
        std::vector<Monomial> cand;
        cand.push_back(Monomial::constant(Radius::zero()));
        for (const auto& p : leaves) {
            size_t cj = static_cast<size_t>(cidx.at(p.a));
            for (const auto& m : leaf_bounds(p)) {
                if (m.is_constant() || inner(cj)) {
                    cand.push_back(m);
                } else {
                    try {
                        cand.push_back(Monomial::constant(m.eval(dist(p.a))));
                    } catch (const domain_error&) {
                    }
                }
            }
        }
        // clip to [0, cap) at the sample height and dedupe by sample value
        std::vector<std::pair<Radius, Monomial>> vals;
        for (const auto& m : cand) {
            Radius v;
            try {
                v = m.eval(v0);
            } catch (const domain_error&) {
                continue;
            }
            if (!(v < capval)) continue;
            bool dup = false;
            for (const auto& [w, _] : vals)
                if (w == v) dup = true;
            if (!dup) vals.push_back({v, m});
        }
        std::sort(vals.begin(), vals.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        Pattern pat;
        for (auto& [v, m] : vals) pat.levels.push_back(m);
        size_t n = pat.levels.size();
        pat.lt.resize(n);
        pat.bt.resize(n);
        for (size_t k = 0; k < n; ++k) {
            pat.lt[k] = eval_at(dist, vals[k].first);
            Radius hi = k + 1 < n ? vals[k + 1].first : capval;
            pat.bt[k] = eval_at(dist, between(vals[k].first, hi));
        }
        return pat;
    }

    void build_regions() {
        for (size_t i = 0; i < centers.size(); ++i) {
            crit.push_back(criticals(i));
            const auto& cs = crit.back();

            // branch: eta_{c_i, r} for r in [0, cut_i)
            {
                DistFn dist = [this, i](const Rat& c) {
                    return d[i][static_cast<size_t>(cidx.at(c))];
                };
                Region br{Region::Type::Branch, static_cast<int>(i),
                          Radius::zero(), cut[i]};
                // constant arrangement: pattern cells are split at every
                // critical below the ownership bound
                std::set<Radius> rc;
                for (const auto& u : cs)
                    if (u < cut[i]) rc.insert(u);
                Pattern pat;
                std::vector<Radius> ws{Radius::zero()};
                ws.insert(ws.end(), rc.begin(), rc.end());
                for (size_t k = 0; k < ws.size(); ++k) {
                    pat.levels.push_back(Monomial::constant(ws[k]));
                    pat.lt.push_back(eval_at(dist, ws[k]));
                    Radius hi = k + 1 < ws.size() ? ws[k + 1] : cut[i];
                    pat.bt.push_back(eval_at(dist, between(ws[k], hi)));
                }
                br.pat = std::move(pat);
                regions.push_back(std::move(br));
            }

            // slabs between consecutive criticals below the ownership bound,
            // with a shell region at each critical height
            std::vector<Radius> bounds{Radius::zero()};
            for (const auto& u : cs)
                if (u < cut[i]) bounds.push_back(u);
            for (size_t k = 0; k < bounds.size(); ++k) {
                Radius lo = bounds[k];
                Radius hi = k + 1 < bounds.size() ? bounds[k + 1] : cut[i];
                if (lo < hi) {
                    Radius v0 = between(lo, hi);
                    DistFn dist = [this, i, v0](const Rat& c) {
                        return rmax(v0, d[i][static_cast<size_t>(cidx.at(c))]);
                    };
                    auto inner = [this, i, lo](size_t cj) { return d[i][cj] <= lo; };
                    Region sl{Region::Type::Slab, static_cast<int>(i), lo, hi};
                    sl.pat = build_pattern(dist, v0, v0, inner);
                    regions.push_back(std::move(sl));
                }
                if (k == 0) continue; // bounds[0] = 0 carries no shell
                Radius u = bounds[k];
                DistFn dist = [this, i, u](const Rat& c) {
                    return rmax(u, d[i][static_cast<size_t>(cidx.at(c))]);
                };
                auto inner = [](size_t) { return false; };
                Region sh{Region::Type::Shell, static_cast<int>(i), u, u};
                sh.pat = build_pattern(dist, u, u, inner);
                // excluded directions: the center itself plus one
                // representative per residue disc holding a center at
                // distance exactly u
                sh.holes.push_back(centers[i]);
                for (size_t j = 0; j < centers.size(); ++j) {
                    if (d[i][j] != u) continue;
                    bool seen = false;
                    for (const auto& h : sh.holes)
                        if (F.dist(h, centers[j]) < u) seen = true;
                    if (!seen) sh.holes.push_back(centers[j]);
                }
                regions.push_back(std::move(sh));
            }
        }
    }

    Region* find_branch(size_t i) {
        for (auto& r : regions)
            if (r.type == Region::Type::Branch && r.center == static_cast<int>(i))
                return &r;
        return nullptr;
    }

    bool try_merge(size_t i, const Radius& u, bool closed) {
        if (closed && !(u < cut[i])) return false;
        if (!closed && !(u <= cut[i])) return false;
        std::vector<Region*> used;
        Region* master = find_branch(i);
        if (!master || master->consumed || master->floored) return false;
        for (auto& r : regions) {
            size_t j = static_cast<size_t>(r.center);
            Radius dij = d[i][j];
            bool in_disc = closed ? dij <= u : (j == i || dij < u);
            if (!in_disc) continue;
            if (j != i) {
                if (r.consumed) return false;
                used.push_back(&r);
                continue;
            }
            switch (r.type) {
            case Region::Type::Branch:
                break; // master, handled separately
            case Region::Type::Slab:
                if (r.hi <= u) {
                    if (r.consumed) return false;
                    used.push_back(&r);
                }
                break;
            case Region::Type::Shell:
                if (r.lo < u || (closed && r.lo == u)) {
                    if (r.consumed) return false;
                    used.push_back(&r);
                }
                break;
            }
        }
        Canon P = canonicalize(master->pat, u);
        if (!P.ok) return false;
        for (Region* r : used) {
            Radius limit = r->type == Region::Type::Shell ? r->lo : r->hi;
            limit = rmin(limit, u);
            Canon c = canonicalize(r->pat, limit);
            if (!c.matches(truncate(P, limit))) return false;
        }
        // commit
        for (Region* r : used) {
            r->consumed = true;
            if (r->center != static_cast<int>(i)) center_consumed[r->center] = 1;
        }
        if (u == cut[i] || (master->hi <= u)) {
            master->consumed = true;
        } else {
            master->floored = true;
            master->floor = u;
        }
        // emit merged cylinders over the disc from the canonical pattern
        std::vector<Monomial> lv{Monomial::constant(Radius::zero())};
        std::vector<char> lt{P.lt0}, bt{P.bt0};
        for (const auto& t : P.trans) {
            lv.push_back(Monomial::constant(t.w));
            lt.push_back(t.lt);
            bt.push_back(t.bt);
        }
        Rat a = centers[i];
        if (closed) {
            emit_cells(
                lv, lt, bt, Monomial::constant(u),
                [&](const Monomial& m) {
                    out.push_back(BasicRadial::closed_cyl_level(a, u, {}, m.coeff));
                },
                [&](const Monomial& m1, const Monomial& m2) {
                    out.push_back(
                        BasicRadial::closed_cyl_band(a, u, {}, m1.coeff, m2.coeff));
                });
        } else {
            emit_cells(
                lv, lt, bt, Monomial::constant(u),
                [&](const Monomial& m) {
                    out.push_back(BasicRadial::open_cyl_level(a, u, m.coeff));
                },
                [&](const Monomial& m1, const Monomial& m2) {
                    out.push_back(BasicRadial::open_cyl_band(a, u, m1.coeff, m2.coeff));
                });
        }
        return true;
    }

    void merge_phase() {
        for (size_t i = 0; i < centers.size(); ++i) {
            if (center_consumed[i]) continue;
            if (try_merge(i, Radius::inf(), false)) continue;
            bool done = false;
            for (auto it = crit[i].rbegin(); it != crit[i].rend() && !done; ++it) {
                if (*it > cut[i]) continue;
                if (try_merge(i, *it, true)) done = true;
                else if (try_merge(i, *it, false)) done = true;
            }
        }
    }

    void emit_region(const Region& r) {
        Rat a = centers[static_cast<size_t>(r.center)];
        const Pattern* pat = &r.pat;
        Pattern floored;
        if (r.type == Region::Type::Branch && r.floored) {
            // keep cells at or above the merged disc's radius
            size_t n = r.pat.levels.size();
            size_t k0 = n;
            bool exact = false;
            for (size_t k = 0; k < n; ++k) {
                Radius w = r.pat.levels[k].coeff;
                if (w >= r.floor) {
                    k0 = k;
                    exact = w == r.floor;
                    break;
                }
            }
            if (!exact) {
                // the merge boundary falls inside a band: the boundary point
                // itself survives with the band's truth value
                floored.levels.push_back(Monomial::constant(r.floor));
                floored.lt.push_back(k0 > 0 ? r.pat.bt[k0 - 1] : r.pat.bt.back());
                floored.bt.push_back(k0 > 0 ? r.pat.bt[k0 - 1] : r.pat.bt.back());
            }
            for (size_t k = k0; k < n; ++k) {
                floored.levels.push_back(r.pat.levels[k]);
                floored.lt.push_back(r.pat.lt[k]);
                floored.bt.push_back(r.pat.bt[k]);
            }
            pat = &floored;
        }
        switch (r.type) {
        case Region::Type::Branch:
            emit_cells(
                pat->levels, pat->lt, pat->bt, Monomial::constant(r.hi),
                [&](const Monomial& m) {
                    out.push_back(BasicRadial::point(a, m.coeff));
                },
                [&](const Monomial& m1, const Monomial& m2) {
                    out.push_back(BasicRadial::branch_segment(a, m1.coeff, m2.coeff));
                });
            break;
        case Region::Type::Slab:
            emit_cells(
                pat->levels, pat->lt, pat->bt, Monomial::identity(),
                [&](const Monomial& m) {
                    out.push_back(BasicRadial::annulus_graph(a, r.lo, r.hi, m));
                },
                [&](const Monomial& m1, const Monomial& m2) {
                    out.push_back(BasicRadial::annulus_band(a, r.lo, r.hi, m1, m2));
                });
            break;
        case Region::Type::Shell:
            emit_cells(
                pat->levels, pat->lt, pat->bt, Monomial::constant(r.lo),
                [&](const Monomial& m) {
                    out.push_back(
                        BasicRadial::closed_cyl_level(a, r.lo, r.holes, m.coeff));
                },
                [&](const Monomial& m1, const Monomial& m2) {
                    out.push_back(BasicRadial::closed_cyl_band(a, r.lo, r.holes,
                                                              m1.coeff, m2.coeff));
                });
            break;
        }
    }

    RadialSet run() {
        setup();
        build_regions();
        merge_phase();
        for (const auto& r : regions)
            if (!r.consumed) emit_region(r);
        std::sort(out.begin(), out.end(), [](const BasicRadial& x, const BasicRadial& y) {
            if (x.a != y.a) return x.a < y.a;
            Radius lx = x.kind == BasicRadial::Kind::R0 ? x.s : x.s1;
            Radius ly = y.kind == BasicRadial::Kind::R0 ? y.s : y.s1;
            if (lx != ly) return lx < ly;
            return static_cast<int>(x.kind) < static_cast<int>(y.kind);
        });
        return RadialSet{std::move(out)};
    }
};

} // namespace

RadialSet bool_normalize(const Field& F, const SetExpr& expr) {
    Normalizer n(F, expr);
    return n.run();
}

bool is_empty(const Field& F, const SetExpr& e) {
    return bool_normalize(F, e).pieces.empty();
}

EmptyEq is_empty_equals(const Field& F, const RadialSet& A, const RadialSet& B) {
    EmptyEq r{};
    r.empty_a = bool_normalize(F, A).pieces.empty();
    bool ab = is_empty(F, SetExpr::diff(SetExpr::of(A), SetExpr::of(B)));
    bool ba = is_empty(F, SetExpr::diff(SetExpr::of(B), SetExpr::of(A)));
    r.equal = ab && ba;
    return r;
}

} // namespace berk
