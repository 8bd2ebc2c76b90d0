#include "cmbound/bounds.hpp"

#include <mpfr.h>

#include "cmbound/arith.hpp"
#include "cmbound/error.hpp"

namespace cmbound {

namespace {

void require_B(const Integer& B)
{
    if (B < 2)
        fail(ErrorKind::InvalidB, "B = " + to_string(B) + " is invalid: B is an integer and B >= 2");
}

/* pi_lo < pi < pi_hi */
Interval pi_bounds(long bits)
{
    mpfr_t x;
    mpfr_init2(x, bits);
    Interval r;
    mpfr_const_pi(x, MPFR_RNDD);
    mpfr_get_q(r.lo.get_mpq_t(), x);
    mpfr_const_pi(x, MPFR_RNDU);
    mpfr_get_q(r.hi.get_mpq_t(), x);
    mpfr_clear(x);
    return r;
}

}  // namespace

BoundReport bound_from_B(const Integer& B)
{
    require_B(B);
    BoundReport r;
    r.B = B;
    r.threshold = Rational(ipow(B, 10), 8);
    r.threshold.canonicalize();
    r.delta_threshold = delta_bound(B);
    Integer two64 = Integer(1) << 64;
    if (r.threshold < Rational(two64)) {
        Integer p = prev_prime_below(ceil(r.threshold));
        if (p > 0)
            r.largest_possible_bad_prime = p;
    }
    return r;
}

bool certified_good(const Integer& p, const Integer& B)
{
    require_B(B);
    return Rational(p) * 8 >= Rational(ipow(B, 10));
}

Interval delta_bound(const Integer& B)
{
    require_B(B);
    Integer b7 = ipow(B, 7);
    long bits = 40 + static_cast<long>(mpz_sizeinbase(b7.get_mpz_t(), 2));
    Interval r;
    if (is_square(B)) {
        r.lo = r.hi = Rational(b7 * isqrt(B), 4);
    } else {
        r.lo = Rational(b7) * sqrt_lower(Rational(B), bits) / 4;
        r.hi = Rational(b7) * sqrt_upper(Rational(B), bits) / 4;
    }
    r.lo.canonicalize();
    r.hi.canonicalize();
    return r;
}

Integer case1_bound(const Integer& disc)
{
    // largest k with k^3 pi^2 <= 36 |disc|
    Integer target = 36 * abs(disc);
    auto fits = [&](const Integer& k) {
        Rational k3(ipow(k, 3));
        for (long bits = 64;; bits *= 2) {
            Interval p = pi_bounds(bits);
            if (k3 * p.hi * p.hi <= target)
                return true;
            if (k3 * p.lo * p.lo > target)
                return false;
        }
    };
    Integer k;
    Integer scaled = target * 1000000 / 9869605;  // ~ 36|disc| / pi^2
    mpz_root(k.get_mpz_t(), scaled.get_mpz_t(), 3);
    while (fits(k + 1))
        k += 1;
    while (k > 0 && !fits(k))
        k -= 1;
    return k;
}

Integer case2_bound(const Integer& d1, const Integer& dplus)
{
    Integer a = abs(d1);
    return a + isqrt(4 * a * a * abs(dplus));
}

BoundReport intrinsic_bound(const OrderBasis& o0, const CMStructure& cm)
{
    if (cm.field->degree() != 6)
        fail(ErrorKind::UnsupportedDegree, "intrinsic bound needs a sextic CM field");
    OrderBasis o = is_conjugation_stable(o0, cm) ? o0 : conjugation_stable_part(o0, cm);
    Integer b;
    std::string which;
    if (cm.k1_discriminant) {
        b = case2_bound(k1_order_discriminant(o, cm), plus_discriminant(o, cm));
        which = "case2";
    } else {
        b = case1_bound(order_discriminant(o));
        which = "case1";
    }
    BoundReport r = bound_from_B(b);
    r.intrinsic = b;
    r.intrinsic_case = which;
    return r;
}

DiscCheck disc_inequality_check(const MuCertificate& c, const OrderBasis& o)
{
    const FieldElement& mu = c.mu;
    if (mu.field()->degree() != 6)
        fail(ErrorKind::UnsupportedDegree, "discriminant check needs a sextic field");
    if (!o.contains(mu))
        fail(ErrorKind::MalformedInput, "mu is not in the order");
    Poly f = mu.charpoly();
    for (int i = 1; i <= 5; i += 2)
        if (f.coeff(i) != 0)
            fail(ErrorKind::MalformedInput, "mu is not totally imaginary");
    // f(x) = h(x^2) with h having roots -a^2, -b^2, -c^2
    Rational e1 = f.coeff(4), e2 = f.coeff(2), e3 = f.coeff(0);
    Rational dh = e1 * e1 * e2 * e2 - 4 * e2 * e2 * e2 - 4 * e1 * e1 * e1 * e3 + 18 * e1 * e2 * e3 -
                  27 * e3 * e3;
    Rational product = 64 * e3 * dh * dh;
    Rational res = abs(poly_discriminant(f));
    DiscCheck out;
    out.resultant_value = res.get_num();
    out.product_formula_value = product.get_num();
    out.agree = (res == product);
    if (mu.degree() != 6)
        fail(ErrorKind::NotAGenerator,
             "mu does not generate the field (both discriminant formulas give " + to_string(res) + ")");
    if (e1 != Rational(c.B))
        fail(ErrorKind::MalformedInput, "certificate B does not match mu");
    out.rhs = Rational(ipow(2, 18) * ipow(c.B, 15), ipow(3, 15));
    out.rhs.canonicalize();
    out.holds = res < out.rhs;
    return out;
}

}  // namespace cmbound
