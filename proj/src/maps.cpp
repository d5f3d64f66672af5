#include "berk/maps.hpp"

#include "berk/normalize.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace berk {

namespace {

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a, q = Polynomial::zero();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long k = r.degree() - b.degree();
        Rat c = r.coeffs.back() / b.coeffs.back();
        std::vector<Rat> t(static_cast<size_t>(k) + 1, Rat(0));
        t.back() = c;
        Polynomial mono = Polynomial::of(std::move(t));
        q = q + mono;
        r = r - mono * b;
    }
    return {q, r};
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        Rat lead = a.coeffs.back();
        for (auto& c : a.coeffs) c /= lead;
    }
    return a;
}

// divisors of n > 0, bailing out on large inputs
std::optional<std::vector<Int>> divisors(const Int& n) {
    if (n > Int("1000000000000")) return std::nullopt;
    std::vector<Int> out;
    for (Int i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        out.push_back(i);
        if (i * i != n) out.push_back(n / i);
    }
    return out;
}

} // namespace

RationalRoots rational_roots(const Polynomial& h) {
    RationalRoots out{{}, false};
    if (h.is_zero()) return out;
    Polynomial g = h;
    long ord0 = 0;
    while (g.coeff(0) == 0 && g.degree() >= 1) {
        g.coeffs.erase(g.coeffs.begin());
        ++ord0;
    }
    if (ord0 > 0) out.roots.push_back({Rat(0), ord0});
    if (g.is_constant()) {
        out.complete = true;
        return out;
    }
    // integerize: candidates are num/den with num | a0, den | lead
    Int scale = 1;
    for (const auto& c : g.coeffs) scale = lcm(scale, Int(c.get_den()));
    std::vector<Int> ic;
    for (const auto& c : g.coeffs) ic.push_back(Int(c * scale));
    auto dn = divisors(abs(ic.front()));
    auto dl = divisors(abs(ic.back()));
    if (!dn || !dl) return out; // out of range: give up, incomplete
    std::vector<Rat> candidates;
    for (const auto& n : *dn)
        for (const auto& l : *dl) {
            Rat q(n, l);
            q.canonicalize();
            candidates.push_back(q);
            candidates.push_back(-q);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
        long mult = 0;
        while (!g.is_constant() && g.eval(r) == 0) {
            // deflate by (T - r) synthetically
            std::vector<Rat> q(g.coeffs.size() - 1, Rat(0));
            Rat carry = 0;
            for (long i = g.degree(); i >= 1; --i) {
                carry = g.coeff(i) + carry * r;
                q[i - 1] = carry;
            }
            g = Polynomial{std::move(q)};
            ++mult;
        }
        if (mult > 0) out.roots.push_back({r, mult});
    }
    out.complete = g.is_constant();
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

RationalMap RationalMap::of(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw validation_error("rational map with zero denominator");
    if (num.is_constant() && den.is_constant())
        throw validation_error("constant rational map");
    Polynomial g = poly_gcd(num, den);
    if (g.degree() >= 1) {
        num = poly_divmod(num, g).first;
        den = poly_divmod(den, g).first;
    }
    return {std::move(num), std::move(den)};
}

RationalMap RationalMap::moebius(Rat a, Rat b, Rat c, Rat d) {
    if (a * d - b * c == 0) throw validation_error("degenerate Moebius map");
    return of(Polynomial::of({std::move(b), std::move(a)}),
              Polynomial::of({std::move(d), std::move(c)}));
}

Polynomial RationalMap::as_polynomial() const {
    if (!is_polynomial()) throw domain_error("map is not a polynomial");
    Polynomial h = num;
    for (auto& c : h.coeffs) c /= den.coeff(0);
    return h;
}

std::string RationalMap::str() const {
    if (is_polynomial()) return as_polynomial().str();
    return "(" + num.str() + ") / (" + den.str() + ")";
}

std::string ProjPoint::str() const { return at_infinity ? "infinity" : point.str(); }

namespace {

// image of eta(u, r) under c/T, as a point of P^1
ProjPoint scaled_inversion(const Field& F, const Rat& c, const BPoint& x) {
    Radius au = F.abs(x.a);
    if (au > x.r) return ProjPoint::of({c / x.a, F.abs(c) * x.r * au.pow(-2)});
    if (x.r.is_zero()) return ProjPoint::infinity();
    return ProjPoint::of({0, F.abs(c) * x.r.inverse()});
}

} // namespace

ProjPoint pushforward(const Field& F, const RationalMap& h, const BPoint& x) {
    if (h.is_polynomial())
        return ProjPoint::of(disc_image(F, h.as_polynomial(), x.a, x.r));
    if (h.is_moebius()) {
        // (aT + b)/(cT + d) = A + B/(T - pole), c != 0 here
        Rat a = h.num.coeff(1), b = h.num.coeff(0);
        Rat c = h.den.coeff(1), d = h.den.coeff(0);
        Rat A = a / c, B = (b * c - a * d) / (c * c), pole = -d / c;
        ProjPoint inv = scaled_inversion(F, B, BPoint{x.a - pole, x.r});
        if (inv.at_infinity) return inv;
        return ProjPoint::of({A + inv.point.a, inv.point.r});
    }
    if (h.num.is_constant()) {
        BPoint den_img = disc_image(F, h.den, x.a, x.r);
        return scaled_inversion(F, h.num.coeff(0), den_img);
    }
    throw unsupported_error(
        "pushforward of a rational map with nonconstant numerator and denominator");
}

namespace {

Radius sample_between(const Radius& lo, const Radius& hi) {
    if (lo.is_finite() && hi.is_finite())
        return Radius::exp((lo.exponent() + hi.exponent()) / 2);
    if (lo.is_zero()) return hi.is_inf() ? Radius::one() : Radius::exp(hi.exponent() - 1);
    return Radius::exp(lo.exponent() + 1); // hi = inf
}

// The arrangement of the coefficient absolute values |c_i(a)| r^i over the
// tree of rational critical centers, emitting N_{h,d} as radial pieces.
struct LocusSweep {
    const Field& F;
    const Polynomial H;
    long d;

    // per Taylor index i >= 1: leading |coef| and rational roots w/ multiplicity
    struct Coef {
        long i;
        Radius lead;
        std::vector<std::pair<Rat, long>> roots;
    };
    std::vector<Coef> coefs;
    std::vector<Rat> centers;
    std::vector<Radius> cut;
    std::vector<BasicRadial> out;

    bool prepare() {
        Polynomial deriv = H;
        Rat fact(1);
        for (long i = 1; i <= H.degree(); ++i) {
            deriv = deriv.derivative();
            fact *= i;
            Polynomial ci = deriv;
            for (auto& c : ci.coeffs) c /= fact;
            if (ci.is_zero()) continue;
            auto rr = rational_roots(ci);
            if (!rr.complete) return false;
            coefs.push_back({i, F.abs(ci.coeffs.back()), std::move(rr.roots)});
            for (const auto& [r, m] : coefs.back().roots) centers.push_back(r);
        }
        std::sort(centers.begin(), centers.end());
        centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
        if (centers.empty()) centers.push_back(0);
        for (size_t i = 0; i < centers.size(); ++i) {
            Radius c = Radius::inf();
            for (size_t j = 0; j < i; ++j) c = rmin(c, F.dist(centers[i], centers[j]));
            cut.push_back(c);
        }
        return true;
    }

    // |c_i(a)| as a monomial in t = |a - c| on a slab sampled at ts
    Monomial slab_monomial(const Coef& co, const Rat& c, const Radius& ts) const {
        Radius coeff = co.lead;
        Rat deg(0);
        for (const auto& [r, m] : co.roots) {
            Radius dr = F.dist(c, r);
            if (dr > ts) coeff = coeff * dr.pow(m);
            else deg += m;
        }
        return {coeff, deg};
    }

    // |c_i(a)| for a on the shell |a - c| = tstar minus the root residues
    Radius shell_value(const Coef& co, const Rat& c, const Radius& tstar) const {
        Radius v = co.lead;
        for (const auto& [r, m] : co.roots) v = v * rmax(F.dist(c, r), tstar).pow(m);
        return v;
    }

    // boundary monomials r = mu(t) of the comparison |c_d| r^d vs |c_i| r^i
    static Monomial tie_curve(const Monomial& md, long dd, const Monomial& mi, long i) {
        long diff = dd - i; // positive for lower bounds
        Rat e(1, diff);
        e.canonicalize();
        return {(mi.coeff * md.coeff.inverse()).pow(e), (mi.deg - md.deg) * e};
    }

    void run() {
        for (size_t ci = 0; ci < centers.size(); ++ci) {
            const Rat& c = centers[ci];
            std::vector<Radius> crit;
            for (size_t j = 0; j < centers.size(); ++j) {
                if (j == ci) continue;
                Radius dj = F.dist(c, centers[j]);
                if (dj < cut[ci]) crit.push_back(dj);
            }
            std::sort(crit.begin(), crit.end());
            crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
            // refine with tie-curve crossings inside each slab
            std::vector<Radius> bounds = {Radius::zero()};
            bounds.insert(bounds.end(), crit.begin(), crit.end());
            bounds.push_back(cut[ci]);
            std::vector<Radius> extra;
            for (size_t k = 0; k + 1 < bounds.size(); ++k) {
                if (!(bounds[k] < bounds[k + 1])) continue;
                Radius ts = sample_between(bounds[k], bounds[k + 1]);
                std::vector<Monomial> mus = {Monomial::identity()};
                const Coef* cd = coef_at(d);
                if (!cd) continue;
                Monomial md = slab_monomial(*cd, c, ts);
                for (const auto& co : coefs) {
                    if (co.i == d) continue;
                    mus.push_back(tie_curve(md, d, slab_monomial(co, c, ts), co.i));
                }
                for (size_t x = 0; x < mus.size(); ++x)
                    for (size_t y = x + 1; y < mus.size(); ++y)
                        if (auto t = crossing(mus[x], mus[y]))
                            if (bounds[k] < *t && *t < bounds[k + 1]) extra.push_back(*t);
            }
            crit.insert(crit.end(), extra.begin(), extra.end());
            std::sort(crit.begin(), crit.end());
            crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

            emit_center(ci, crit);
        }
    }

    const Coef* coef_at(long i) const {
        for (const auto& co : coefs)
            if (co.i == i) return &co;
        return nullptr;
    }

    void emit_center(size_t ci, const std::vector<Radius>& crit) {
        const Rat& c = centers[ci];
        const Coef* cd = coef_at(d);
        std::vector<Radius> bounds = {Radius::zero()};
        for (const auto& t : crit)
            if (t < cut[ci]) bounds.push_back(t);
        bounds.push_back(cut[ci]);

        if (cd) {
            // slabs
            for (size_t k = 0; k + 1 < bounds.size(); ++k) {
                if (!(bounds[k] < bounds[k + 1])) continue;
                Radius ts = sample_between(bounds[k], bounds[k + 1]);
                Monomial md = slab_monomial(*cd, c, ts);
                Monomial L = Monomial::constant(Radius::zero());
                Monomial U = Monomial::identity();
                bool ok = true;
                for (const auto& co : coefs) {
                    if (co.i == d) continue;
                    Monomial mu = tie_curve(md, d, slab_monomial(co, c, ts), co.i);
                    if (co.i < d) {
                        if (mu.eval(ts) > L.eval(ts)) L = mu;
                    } else if (mu.eval(ts) < U.eval(ts)) {
                        U = mu;
                    }
                }
                if (L.eval(ts) >= U.eval(ts) || L.eval(ts) >= ts) ok = false;
                if (!ok) continue;
                out.push_back(BasicRadial::annulus_graph(c, bounds[k], bounds[k + 1], L));
                out.push_back(BasicRadial::annulus_band(c, bounds[k], bounds[k + 1], L, U));
            }
            // shells at each critical radius
            for (const auto& tstar : crit) {
                if (!(Radius::zero() < tstar && tstar < cut[ci])) continue;
                std::vector<Rat> holes = {c};
                for (const auto& cj : centers)
                    if (cj != c && F.dist(c, cj) == tstar) {
                        bool dup = false;
                        for (const auto& hb : holes)
                            if (F.dist(hb, cj) < tstar) dup = true;
                        if (!dup) holes.push_back(cj);
                    }
                Radius vd = shell_value(*cd, c, tstar);
                Radius L = Radius::zero(), U = tstar;
                for (const auto& co : coefs) {
                    if (co.i == d) continue;
                    Radius v = shell_value(co, c, tstar);
                    Rat ex(1, d - co.i);
                    ex.canonicalize();
                    Radius b = (v * vd.inverse()).pow(ex);
                    if (co.i < d) L = rmax(L, b);
                    else U = rmin(U, b);
                }
                if (!(L < U) || !(L < tstar)) continue;
                out.push_back(BasicRadial::closed_cyl_level(c, tstar, holes, L));
                out.push_back(BasicRadial::closed_cyl_band(c, tstar, holes, L, U));
            }
        }

        // the branch eta(c, r), 0 <= r < cut
        Polynomial at_c = H.recentered(c);
        std::vector<Monomial> terms(static_cast<size_t>(H.degree()) + 1);
        std::vector<Radius> bcrit;
        for (long i = 1; i <= H.degree(); ++i)
            terms[i] = {F.abs(at_c.coeff(i)), Rat(i)};
        for (long i = 1; i <= H.degree(); ++i)
            for (long j = i + 1; j <= H.degree(); ++j)
                if (auto t = crossing(terms[i], terms[j]))
                    if (*t < cut[ci]) bcrit.push_back(*t);
        std::sort(bcrit.begin(), bcrit.end());
        bcrit.erase(std::unique(bcrit.begin(), bcrit.end()), bcrit.end());
        auto dom = [&](const Radius& r) {
            if (r.is_zero()) {
                for (long i = 1; i <= H.degree(); ++i)
                    if (!terms[i].is_zero()) return i;
            }
            Radius best = Radius::zero();
            for (long i = 1; i <= H.degree(); ++i) best = rmax(best, terms[i].eval(r));
            long w = 0;
            for (long i = 1; i <= H.degree(); ++i)
                if (!terms[i].is_zero() && terms[i].eval(r) == best) w = i;
            return w;
        };
        std::vector<Radius> bb = {Radius::zero()};
        bb.insert(bb.end(), bcrit.begin(), bcrit.end());
        bb.push_back(cut[ci]);
        if (dom(Radius::zero()) == d) out.push_back(BasicRadial::point(c, Radius::zero()));
        for (const auto& w : bcrit)
            if (dom(w) == d) out.push_back(BasicRadial::point(c, w));
        for (size_t k = 0; k + 1 < bb.size(); ++k) {
            if (!(bb[k] < bb[k + 1])) continue;
            if (dom(sample_between(bb[k], bb[k + 1])) == d)
                out.push_back(BasicRadial::branch_segment(c, bb[k], bb[k + 1]));
        }
    }
};

} // namespace

LocusReport multiplicity_locus(const Field& F, const RationalMap& h, long d,
                               const Brick& region) {
    RadialSet region_set = brick_ops(region).as_radial;
    if (!h.is_polynomial()) {
        if (h.is_moebius()) {
            RadialSet locus =
                d == 1 ? bool_normalize(F, region_set) : RadialSet{};
            return {d, std::move(locus), region, false};
        }
        throw unsupported_error("multiplicity locus needs a polynomial chart");
    }
    Polynomial H = h.as_polynomial();
    if (H.is_constant()) throw domain_error("multiplicity locus of a constant map");
    if (d < 1 || d > H.degree()) return {d, {}, region, false};

    LocusSweep sweep{F, H, d};
    if (!sweep.prepare()) return {d, {}, region, true};
    sweep.run();
    RadialSet line_locus{std::move(sweep.out)};
    RadialSet locus = bool_normalize(
        F, SetExpr::intersect({SetExpr::of(line_locus), SetExpr::of(region_set)}));
    return {d, std::move(locus), region, false};
}

Fiber fiber_count(const Field& F, const RationalMap& h, const BPoint& y,
                  const std::vector<Rat>& root_oracle) {
    if (h.is_moebius() && !h.is_polynomial()) {
        Rat a = h.num.coeff(1), b = h.num.coeff(0);
        Rat c = h.den.coeff(1), d = h.den.coeff(0);
        RationalMap inv = RationalMap::of(Polynomial::of({-b, d}), Polynomial::of({a, -c}));
        ProjPoint pre = pushforward(F, inv, y);
        if (pre.at_infinity)
            throw unsupported_error("fiber contains the point at infinity");
        return {1, {pre.point}};
    }
    if (!h.is_polynomial())
        throw unsupported_error("fiber_count needs a polynomial or Moebius map");
    Polynomial H = h.as_polynomial();
    if (H.is_constant()) throw domain_error("fiber of a constant map");

    std::vector<Rat> candidates = root_oracle;
    auto rr = rational_roots(H - Polynomial::of({y.a}));
    for (const auto& [r, m] : rr.roots) candidates.push_back(r);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.empty())
        throw incomplete_oracle_error("no rational preimage centers found for " + y.str());

    std::vector<BPoint> fiber;
    for (const auto& alpha : candidates) {
        if (!(F.dist(H.eval(alpha), y.a) <= y.r))
            throw validation_error("declared center " + rat_to_string(alpha) +
                                   " is not a preimage of " + y.str());
        Radius rstar = Radius::zero();
        if (!y.r.is_zero()) {
            Polynomial at_a = H.recentered(alpha);
            rstar = Radius::inf();
            for (long i = 1; i <= at_a.degree(); ++i) {
                if (at_a.coeff(i) == 0) continue;
                rstar = rmin(rstar, (y.r * F.abs(at_a.coeff(i)).inverse()).pow(Rat(1, i)));
            }
        }
        BPoint pt{alpha, rstar};
        bool seen = false;
        for (const auto& q : fiber)
            if (point_eq(F, q, pt)) seen = true;
        if (!seen) fiber.push_back(std::move(pt));
    }
    long sum = 0;
    for (const auto& pt : fiber) sum += local_degree(F, H, pt);
    if (sum != H.degree())
        throw incomplete_oracle_error(
            "fiber degrees sum to " + std::to_string(sum) + " of " +
            std::to_string(H.degree()) + "; preimage centers are missing or irrational");
    std::sort(fiber.begin(), fiber.end(), [](const BPoint& x, const BPoint& y2) {
        return x.a < y2.a || (x.a == y2.a && x.r < y2.r);
    });
    return {static_cast<long>(fiber.size()), std::move(fiber)};
}

} // namespace berk
