#include "cmbound/arith.hpp"

#include <algorithm>

#include "cmbound/error.hpp"

namespace cmbound {

namespace {

const Integer two64 = Integer(1) << 64;

bool miller_rabin(const Integer& n, unsigned long base)
{
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    Integer a(base), x;
    a %= n;
    if (a == 0)
        return true;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n - 1)
            return true;
    }
    return false;
}

Integer brent(const Integer& n, unsigned long c, unsigned long effort)
{
    Integer y(2), x, q(1), g(1), ys;
    unsigned long r = 1, m = 128, spent = 0;
    auto f = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i)
            y = f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                y = f(y);
                Integer diff = abs(x - y);
                q = q * diff % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            spent += lim;
        }
        r *= 2;
        if (spent > effort)
            return 0;
    }
    if (g == n) {
        do {
            ys = f(ys);
            Integer diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void split(const Integer& n, unsigned long effort, Factorization& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.primes[n] += 1;
        if (n >= two64 && std::find(out.probable.begin(), out.probable.end(), n) == out.probable.end())
            out.probable.push_back(n);
        return;
    }
    Integer r;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        split(r, effort, out);
        split(r, effort, out);
        return;
    }
    for (unsigned long c = 1; c < 6; ++c) {
        Integer g = brent(n, c, effort);
        if (g != 0 && g != 1 && g != n) {
            split(g, effort, out);
            split(n / g, effort, out);
            return;
        }
    }
    out.cofactor *= n;
}

int legendre(const Integer& a, const Integer& p)
{
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

}  // namespace

bool is_prime(const Integer& n)
{
    if (n < 2)
        return false;
    static const unsigned long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long p : small) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    for (unsigned long p : small)
        if (!miller_rabin(n, p))
            return false;
    if (n < two64)
        return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_certified_prime(const Integer& n)
{
    return n < two64 && is_prime(n);
}

Factorization factor(Integer n, unsigned long effort)
{
    Factorization out;
    n = abs(n);
    if (n == 0)
        fail(ErrorKind::DegenerateInput, "cannot factor zero");
    for (unsigned long p = 2; p <= 1000000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.primes[Integer(p)] += 1;
            n /= p;
        }
    }
    if (n == 1)
        return out;
    if (n <= Integer(1000000) * 1000000) {
        out.primes[n] += 1;
        return out;
    }
    split(n, effort, out);
    return out;
}

Integer squarefree_part(const Integer& n)
{
    if (n == 0)
        fail(ErrorKind::DegenerateInput, "squarefree part of zero");
    Factorization f = factor(n);
    if (!f.complete())
        fail(ErrorKind::Internal, "could not factor " + to_string(n));
    Integer r = n < 0 ? Integer(-1) : Integer(1);
    for (const auto& [p, e] : f.primes)
        if (e % 2)
            r *= p;
    return r;
}

long ord_p(const Rational& x, const Integer& p)
{
    if (x == 0)
        fail(ErrorKind::DegenerateInput, "valuation of zero");
    Integer num = x.get_num(), den = x.get_den();
    long v = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()));
    v -= static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
    return v;
}

int hilbert_symbol(const Integer& a0, const Integer& b0, const Integer& p)
{
    if (a0 == 0 || b0 == 0)
        fail(ErrorKind::DegenerateInput, "Hilbert symbol of zero");
    if (p == 0)
        return (a0 < 0 && b0 < 0) ? -1 : 1;
    Integer u = a0, v = b0;
    long alpha = static_cast<long>(mpz_remove(u.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t()));
    long beta = static_cast<long>(mpz_remove(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()));
    if (p == 2) {
        auto eps = [](const Integer& w) -> long {
            Integer m = ((w % 4) + 4) % 4;
            return m == 3 ? 1 : 0;
        };
        auto omega = [](const Integer& w) -> long {
            Integer m = ((w % 8) + 8) % 8;
            return (m == 3 || m == 5) ? 1 : 0;
        };
        long e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return (e % 2) ? -1 : 1;
    }
    int s = 1;
    Integer half = (p - 1) / 2;
    if ((alpha * beta) % 2 && half % 2 != 0)
        s = -s;
    if (beta % 2)
        s *= legendre(u, p);
    if (alpha % 2)
        s *= legendre(v, p);
    return s;
}

Integer prev_prime_below(const Integer& n)
{
    Integer k = n - 1;
    while (k >= 2) {
        if (is_prime(k))
            return k;
        k -= 1;
    }
    return 0;
}

}  // namespace cmbound
