#include "berk/field.hpp"

namespace berk {

Field::Field(Int p) : p_(std::move(p)) {
    if (p_ < 2 || mpz_probab_prime_p(p_.get_mpz_t(), 30) == 0)
        throw validation_error("p must be prime, got " + p_.get_str());
}

Radius Field::abs(const Rat& x) const {
    if (x == 0) return Radius::zero();
    return Radius::exp(-vp(x, p_));
}

Int Field::residue(const Rat& x) const {
    if (abs(x) > Radius::one())
        throw domain_error("residue of an element with |x| > 1");
    // Reduce num/den mod p; den is a unit here.
    Int num = x.get_num() % p_;
    if (num < 0) num += p_;
    Int den = x.get_den() % p_;
    if (den < 0) den += p_;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t()) == 0)
        throw domain_error("denominator not invertible mod p");
    return (num * inv) % p_;
}

} // namespace berk
