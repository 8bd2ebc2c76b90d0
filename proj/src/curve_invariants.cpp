#include "cmbound/curve_invariants.hpp"

#include <algorithm>

#include "cmbound/arith.hpp"
#include "cmbound/error.hpp"

namespace cmbound {

namespace {

Integer factorial(long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer binomial(long n, long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/* d^a/dx^a d^b/dz^b */
BinaryForm partial(const BinaryForm& f, int a, int b)
{
    int m = f.degree();
    if (a + b > m)
        return BinaryForm{{Rational(0)}};
    std::vector<Rational> c(f.c);
    int deg = m;
    for (int t = 0; t < a; ++t) {
        std::vector<Rational> n(static_cast<std::size_t>(deg));
        for (int i = 1; i <= deg; ++i)
            n[static_cast<std::size_t>(i - 1)] = Rational(i) * c[static_cast<std::size_t>(i)];
        c = n;
        --deg;
    }
    for (int t = 0; t < b; ++t) {
        std::vector<Rational> n(static_cast<std::size_t>(deg));
        for (int i = 0; i < deg; ++i)
            n[static_cast<std::size_t>(i)] = Rational(deg - i) * c[static_cast<std::size_t>(i)];
        c = n;
        --deg;
    }
    return BinaryForm{c};
}

BinaryForm form_add(const BinaryForm& f, const BinaryForm& g)
{
    BinaryForm r = f;
    for (std::size_t i = 0; i < g.c.size(); ++i)
        r.c[i] += g.c[i];
    return r;
}

BinaryForm form_power(const BinaryForm& f, int e)
{
    BinaryForm r{{Rational(1)}};
    for (int i = 0; i < e; ++i)
        r = form_mul(r, f);
    return r;
}

Rational constant(const BinaryForm& f)
{
    if (f.degree() != 0)
        fail(ErrorKind::Internal, "transvectant is not an invariant");
    return f.c[0];
}

Poly dehomogenize(const BinaryForm& f)
{
    return Poly(f.c);
}

}  // namespace

bool BinaryForm::is_zero() const
{
    return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
}

BinaryForm form_mul(const BinaryForm& f, const BinaryForm& g)
{
    std::vector<Rational> r(f.c.size() + g.c.size() - 1);
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0)
            continue;
        for (std::size_t j = 0; j < g.c.size(); ++j)
            r[i + j] += f.c[i] * g.c[j];
    }
    return BinaryForm{r};
}

BinaryForm substitute(const BinaryForm& f, const Rational& a, const Rational& b, const Rational& c, const Rational& d)
{
    int m = f.degree();
    BinaryForm u{{b, a}}, v{{d, c}};
    BinaryForm r{std::vector<Rational>(static_cast<std::size_t>(m + 1))};
    for (int i = 0; i <= m; ++i) {
        if (f.c[static_cast<std::size_t>(i)] == 0)
            continue;
        BinaryForm t = form_mul(form_power(u, i), form_power(v, m - i));
        for (auto& x : t.c)
            x *= f.c[static_cast<std::size_t>(i)];
        r = form_add(r, t);
    }
    return r;
}

BinaryForm transvectant(const BinaryForm& f, const BinaryForm& g, int k)
{
    int m = f.degree(), n = g.degree();
    if (k > m || k > n)
        fail(ErrorKind::MalformedInput, "transvectant index exceeds the degree");
    BinaryForm r{std::vector<Rational>(static_cast<std::size_t>(m + n - 2 * k + 1))};
    for (int i = 0; i <= k; ++i) {
        BinaryForm t = form_mul(partial(f, k - i, i), partial(g, i, k - i));
        Rational s(binomial(k, i));
        if (i % 2)
            s = -s;
        for (auto& x : t.c)
            x *= s;
        r = form_add(r, t);
    }
    Rational norm = Rational(factorial(m - k) * factorial(n - k)) / Rational(factorial(m) * factorial(n));
    for (auto& x : r.c)
        x *= norm;
    return r;
}

Rational form_discriminant(const BinaryForm& f)
{
    int m = f.degree();
    if (m < 2)
        fail(ErrorKind::MalformedInput, "discriminant needs degree >= 2");
    if (f.is_zero())
        return 0;
    // z -> z + t x has determinant 1 and moves the form off the point at infinity
    for (long t = 0;; ++t) {
        BinaryForm g = t == 0 ? f : substitute(f, Rational(1), Rational(0), Rational(t), Rational(1));
        if (g.c.back() != 0)
            return poly_discriminant(dehomogenize(g));
    }
}

bool is_squarefree_form(const BinaryForm& f)
{
    Poly p = dehomogenize(f);
    int m = f.degree();
    if (p.degree() < m - 1)
        return false;  // double root at infinity
    return is_squarefree(p);
}

ShiodaInvariants shioda_invariants(const BinaryForm& f)
{
    if (f.degree() != 8)
        fail(ErrorKind::MalformedInput, "Shioda invariants need a binary octic");
    BinaryForm g = transvectant(f, f, 4);
    BinaryForm k = transvectant(f, f, 6);
    BinaryForm h = transvectant(k, k, 2);
    BinaryForm m = transvectant(f, k, 4);
    BinaryForm n = transvectant(f, h, 4);
    BinaryForm p = transvectant(g, k, 4);
    BinaryForm q = transvectant(g, h, 4);
    ShiodaInvariants s;
    s.J[0] = constant(transvectant(f, f, 8));
    s.J[1] = constant(transvectant(f, g, 8));
    s.J[2] = constant(transvectant(k, k, 4));
    s.J[3] = constant(transvectant(m, k, 4));
    s.J[4] = constant(transvectant(k, h, 4));
    s.J[5] = constant(transvectant(m, h, 4));
    s.J[6] = constant(transvectant(p, h, 4));
    s.J[7] = constant(transvectant(n, h, 4));
    s.J[8] = constant(transvectant(q, h, 4));
    for (int i = 2; i <= 10; ++i)
        s.Ip[static_cast<std::size_t>(i - 2)] = s.J[static_cast<std::size_t>(i - 2)] / shioda_content(i);
    s.disc = form_discriminant(f);
    return s;
}

Rational shioda_content(int k)
{
    static const char* contents[] = {
        "1/140",
        "3/137200",
        "1/3687936",
        "1/43025920",
        "1/17348050944",
        "1/202393927680",
        "1/396692098252800",
        "1/952061035806720",
        "1/1866039630181171200",
    };
    if (k < 2 || k > 10)
        fail(ErrorKind::MalformedInput, "Shioda invariants have degree 2..10");
    return parse_rational(contents[k - 2]);
}

const Rational& InvariantVector::operator[](const std::string& name) const
{
    for (const auto& [k, v] : values)
        if (k == name)
            return v;
    fail(ErrorKind::InvalidInvariants, "invariant vector has no entry " + name);
}

InvariantVector hyperelliptic_j(const BinaryForm& f)
{
    ShiodaInvariants s = shioda_invariants(f);
    if (s.disc == 0)
        fail(ErrorKind::SingularCurve, "binary octic has a repeated root");
    const Rational& i2 = s.I(2);
    auto pw = [](const Rational& x, unsigned e) { return qpow(x, e); };
    InvariantVector v;
    v.kind = "hyperelliptic";
    v.disc = s.disc;
    v.values = {{"j1", pw(i2, 7) / s.disc},
                {"j3", pw(i2, 5) * s.I(4) / s.disc},
                {"j5", pw(i2, 4) * s.I(6) / s.disc},
                {"j7", pw(i2, 3) * s.I(8) / s.disc},
                {"j9", pw(i2, 2) * s.I(10) / s.disc}};
    return v;
}

PicardQuartic normalize_quartic(const Poly& f)
{
    if (f.degree() != 4)
        fail(ErrorKind::MalformedInput, "Picard curves need a quartic");
    Poly g = f.monic();
    g = g.shift(-g.coeff(3) / 4);
    return {g.coeff(2), g.coeff(1), g.coeff(0)};
}

Rational picard_discriminant(const PicardQuartic& q)
{
    const Rational &p = q.a2, &s = q.a3, &r = q.a4;
    return 256 * r * r * r - 128 * p * p * r * r + 144 * p * s * s * r - 27 * s * s * s * s + 16 * p * p * p * p * r -
           4 * p * p * p * s * s;
}

InvariantVector picard_invariants(const PicardQuartic& q)
{
    Rational d = picard_discriminant(q);
    if (d == 0)
        fail(ErrorKind::SingularCurve, "quartic has a repeated root");
    const Rational &a2 = q.a2, &a3 = q.a3, &a4 = q.a4;
    InvariantVector v;
    v.kind = "picard";
    v.disc = d;
    v.values = {{"j1", qpow(a2, 6) / d},
                {"j2", qpow(a2, 3) * a3 * a3 / d},
                {"j3", qpow(a2, 4) * a4 / d},
                {"j4", qpow(a3, 4) / d},
                {"j5", qpow(a4, 3) / d},
                {"j6", a2 * a3 * a3 * a4 / d},
                {"j7", a2 * a2 * a4 * a4 / d}};
    return v;
}

PicardModel picard_normal_form(const InvariantVector& v)
{
    if (v.kind != "picard")
        fail(ErrorKind::InvalidInvariants, "not a Picard invariant vector");
    const Rational &j1 = v["j1"], &j2 = v["j2"], &j3 = v["j3"], &j4 = v["j4"], &j5 = v["j5"], &j6 = v["j6"];
    PicardModel m;
    if (j2 != 0) {
        m.case_number = 1;
        m.A = j1 / j2;
        m.B = j1 * j3 / (j2 * j2);
        m.model = {*m.A, *m.A, *m.B};
    } else if (j4 * j5 != 0) {
        m.case_number = 2;
        m.A = j6 / j5;
        m.B = j4 / j5;
        m.model = {*m.A, *m.B, *m.B};
    } else if (j1 != 0) {
        m.case_number = 3;
        m.A = j3 / j1;
        m.model = {Rational(1), Rational(0), *m.A};
    } else if (j5 == 0) {
        m.case_number = 4;
        m.model = {Rational(0), Rational(1), Rational(0)};
    } else if (j4 == 0) {
        m.case_number = 5;
        m.model = {Rational(0), Rational(0), Rational(1)};
    } else {
        fail(ErrorKind::InvalidInvariants, "no normal form applies");
    }
    if (picard_discriminant(m.model) == 0 || !(picard_invariants(m.model) == v))
        fail(ErrorKind::InvalidInvariants, "invariants are not those of a smooth Picard curve");
    return m;
}

BadReduction bad_reduction_certificate(const Rational& j, const Integer& p, const std::string& kind)
{
    if (!is_prime(p))
        fail(ErrorKind::NotPrime, to_string(p) + " is not prime");
    if (kind != "hyperelliptic" && kind != "picard")
        fail(ErrorKind::MalformedInput, "unknown curve kind " + kind);
    BadReduction r;
    r.conjectural = kind == "picard";
    if (j != 0)
        r.valuation = ord_p(j, p);
    if (p == 2 || p == 3) {
        r.reason = "p divides 6";
    } else if (!r.valuation || *r.valuation >= 0) {
        r.reason = "non-negative valuation";
    } else {
        r.certified_bad = true;
        r.inconclusive = false;
        r.reason = "negative valuation at a prime not dividing 6";
    }
    return r;
}

}  // namespace cmbound
