#include "berk/rational.hpp"

namespace berk {

std::string rat_to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw validation_error("empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw validation_error("bad rational literal: " + s);
    if (q.get_den() == 0) throw validation_error("zero denominator: " + s);
    q.canonicalize();
    return q;
}

Rat vp(const Rat& x, const Int& p) {
    if (x == 0) throw domain_error("vp of zero");
    Int num = abs(x.get_num());
    Int den = x.get_den();
    long v = 0;
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    return Rat(v);
}

Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    if (x == 0) {
        if (e < 0) throw domain_error("0 to a negative power");
        return Rat(0);
    }
    Rat base = e > 0 ? x : Rat(1) / x;
    unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                            : static_cast<unsigned long>(-e);
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), k);
    out.canonicalize();
    return out;
}

Int int_pow(const Int& p, unsigned long k) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), k);
    return out;
}

} // namespace berk
