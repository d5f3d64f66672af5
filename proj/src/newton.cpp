#include "berk/newton.hpp"

#include "berk/errors.hpp"

#include <algorithm>
#include <sstream>

namespace berk {

Polynomial Polynomial::of(std::vector<Rat> cs) {
    while (!cs.empty() && cs.back() == 0) cs.pop_back();
    return {std::move(cs)};
}

Rat Polynomial::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::recentered(const Rat& a) const {
    // Taylor shift by repeated synthetic division
    std::vector<Rat> c = coeffs;
    long n = static_cast<long>(c.size());
    for (long k = 0; k + 1 < n; ++k)
        for (long i = n - 2; i >= k; --i) c[i] += a * c[i + 1];
    return {std::move(c)};
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rat> c(std::max(coeffs.size(), o.coeffs.size()), Rat(0));
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] += o.coeffs[i];
    return of(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<Rat> c(std::max(coeffs.size(), o.coeffs.size()), Rat(0));
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] -= o.coeffs[i];
    return of(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<Rat> c(coeffs.size() + o.coeffs.size() - 1, Rat(0));
    for (size_t i = 0; i < coeffs.size(); ++i)
        for (size_t j = 0; j < o.coeffs.size(); ++j) c[i + j] += coeffs[i] * o.coeffs[j];
    return of(std::move(c));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
    Polynomial acc = zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * inner + of({*it});
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<Rat> c;
    for (size_t i = 1; i < coeffs.size(); ++i) c.push_back(Rat(static_cast<long>(i)) * coeffs[i]);
    return of(std::move(c));
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(coeffs[i]);
        if (i == 1) os << "*T";
        else if (i > 1) os << "*T^" << i;
    }
    return os.str();
}

long RootValuations::total() const {
    long t = infinite;
    for (const auto& [v, k] : finite) t += k;
    return t;
}

RootValuations polygon_roots(const Field& F, const Polynomial& h) {
    if (h.is_zero()) throw domain_error("Newton polygon of the zero polynomial");
    std::vector<NewtonPolygon::Vertex> pts;
    long ord0 = -1;
    for (long i = 0; i <= h.degree(); ++i) {
        if (h.coeff(i) == 0) continue;
        if (ord0 < 0) ord0 = i;
        pts.push_back({i, vp(h.coeff(i), F.p())});
    }
    // lower convex hull, dropping points on or above an edge
    std::vector<NewtonPolygon::Vertex> hull;
    for (const auto& q : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // keep b iff it lies strictly below segment a..q
            if ((b.valuation - a.valuation) * (q.index - a.index) <
                (q.valuation - a.valuation) * (b.index - a.index))
                break;
            hull.pop_back();
        }
        hull.push_back(q);
    }
    RootValuations out;
    out.polygon.vertices = hull;
    out.infinite = ord0;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        Rat slope = (hull[k + 1].valuation - hull[k].valuation) /
                    Rat(hull[k + 1].index - hull[k].index);
        out.finite.push_back({-slope, hull[k + 1].index - hull[k].index});
    }
    std::sort(out.finite.begin(), out.finite.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

namespace {

// nonzero recentered coefficients as monomials |c_i| t^i, i >= 1
std::vector<std::pair<long, Monomial>> term_monomials(const Field& F,
                                                      const Polynomial& at_a) {
    std::vector<std::pair<long, Monomial>> ms;
    for (long i = 1; i <= at_a.degree(); ++i)
        if (at_a.coeff(i) != 0) ms.push_back({i, Monomial{F.abs(at_a.coeff(i)), Rat(i)}});
    return ms;
}

Radius image_radius(const std::vector<std::pair<long, Monomial>>& ms, const Radius& r) {
    Radius s = Radius::zero();
    for (const auto& [i, m] : ms) s = rmax(s, m.eval(r));
    return s;
}

long dominating_index(const std::vector<std::pair<long, Monomial>>& ms, const Radius& r) {
    Radius s = image_radius(ms, r);
    long d = 0;
    for (const auto& [i, m] : ms)
        if (m.eval(r) == s) d = std::max(d, i);
    return d;
}

Radius sample_between(const Radius& lo, const Radius& hi) {
    if (lo.is_finite() && hi.is_finite())
        return Radius::exp((lo.exponent() + hi.exponent()) / 2);
    if (lo.is_zero()) return hi.is_inf() ? Radius::one() : Radius::exp(hi.exponent() - 1);
    return Radius::exp(lo.exponent() + 1); // hi = inf
}

} // namespace

BPoint disc_image(const Field& F, const Polynomial& h, const Rat& a, const Radius& r) {
    if (h.is_constant()) throw domain_error("image disc of a constant map is degenerate");
    if (r.is_inf()) throw domain_error("disc_image needs a finite radius");
    Polynomial at_a = h.recentered(a);
    return BPoint{at_a.coeff(0), image_radius(term_monomials(F, at_a), r)};
}

long local_degree(const Field& F, const Polynomial& h, const BPoint& x) {
    if (h.is_constant()) throw domain_error("local degree of a constant map");
    Polynomial at_a = h.recentered(x.a);
    if (x.r.is_zero()) {
        for (long i = 1; i <= at_a.degree(); ++i)
            if (at_a.coeff(i) != 0) return i;
    }
    return dominating_index(term_monomials(F, at_a), x.r);
}

std::vector<SkeletonPiece> skeleton_monomial(const Field& F, const Polynomial& h,
                                             const Rat& a, const Radius& s1,
                                             const Radius& s2) {
    if (h.is_constant()) throw domain_error("skeleton image of a constant map");
    if (!(s1 < s2)) throw validation_error("empty skeleton interval");
    Polynomial at_a = h.recentered(a);
    auto ms = term_monomials(F, at_a);
    std::vector<Radius> cuts = {s1};
    for (size_t i = 0; i < ms.size(); ++i)
        for (size_t j = i + 1; j < ms.size(); ++j)
            if (auto t = crossing(ms[i].second, ms[j].second))
                if (s1 < *t && *t < s2) cuts.push_back(*t);
    cuts.push_back(s2);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<SkeletonPiece> out;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        Radius mid = sample_between(cuts[k], cuts[k + 1]);
        long d = dominating_index(ms, mid);
        Monomial m = Monomial{F.abs(at_a.coeff(d)), Rat(d)};
        if (!out.empty() && out.back().degree == d)
            out.back().hi = cuts[k + 1]; // same dominating term; extend
        else
            out.push_back({cuts[k], cuts[k + 1], at_a.coeff(0), m, d});
    }
    return out;
}

} // namespace berk
