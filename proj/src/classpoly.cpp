#include "cmbound/classpoly.hpp"

#include <algorithm>
#include <cctype>

#include "cmbound/arith.hpp"
#include "cmbound/error.hpp"

namespace cmbound {

namespace {

struct Iv {
    Rational lo, hi;
};

Iv iv_mul(const Iv& a, const Iv& b)
{
    Rational p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Iv iv_add(const Iv& a, const Iv& b)
{
    return {a.lo + b.lo, a.hi + b.hi};
}

Iv iv_neg(const Iv& a)
{
    return {-a.hi, -a.lo};
}

using IvPoly = std::vector<Iv>;

/* p * (X - r) */
IvPoly times_linear(const IvPoly& p, const Iv& r)
{
    IvPoly out(p.size() + 1, Iv{Rational(0), Rational(0)});
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i + 1] = iv_add(out[i + 1], p[i]);
        out[i] = iv_add(out[i], iv_neg(iv_mul(r, p[i])));
    }
    return out;
}

Iv value_interval(const ClassValue& v)
{
    if (v.is_exact()) {
        Rational x = v.exact();
        return {x, x};
    }
    auto [x, r] = parse_decimal(v.text);
    return {x - r, x + r};
}

Rational lcm_den(const Poly& p, const Integer& acc)
{
    Integer l = acc;
    for (int i = 0; i <= p.degree(); ++i)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.coeff(i).get_den_mpz_t());
    return Rational(l);
}

}  // namespace

bool ClassValue::is_exact() const
{
    return text.find_first_of(".eE") == std::string::npos;
}

Rational ClassValue::exact() const
{
    return parse_rational(text);
}

std::pair<Poly, Poly> assemble(const std::vector<std::pair<Rational, Rational>>& entries)
{
    if (entries.empty())
        fail(ErrorKind::MalformedInput, "class polynomial input has no entries");
    Poly h{1};
    for (const auto& e : entries)
        h = h * Poly(std::vector<Rational>{-e.first, Rational(1)});
    Poly hh;
    for (std::size_t c = 0; c < entries.size(); ++c) {
        Poly t(std::vector<Rational>{entries[c].second});
        for (std::size_t d = 0; d < entries.size(); ++d)
            if (d != c)
                t = t * Poly(std::vector<Rational>{-entries[d].first, Rational(1)});
        hh = hh + t;
    }
    return {h, hh};
}

std::pair<Poly, Poly> assemble(const ClassInput& input)
{
    std::vector<std::pair<Rational, Rational>> ex;
    for (const auto& [j, jp] : input.entries) {
        if (!j.is_exact() || !jp.is_exact())
            fail(ErrorKind::MixedInput, "approximate entries need reconstruction before assembly");
        ex.emplace_back(j.exact(), jp.exact());
    }
    return assemble(ex);
}

std::pair<Poly, Poly> assemble_approximate(const ClassInput& input, const Integer& denominator_bound)
{
    if (input.entries.empty())
        fail(ErrorKind::MalformedInput, "class polynomial input has no entries");
    std::vector<std::pair<Iv, Iv>> ent;
    for (const auto& [j, jp] : input.entries)
        ent.emplace_back(value_interval(j), value_interval(jp));
    IvPoly h{Iv{Rational(1), Rational(1)}};
    for (const auto& e : ent)
        h = times_linear(h, e.first);
    IvPoly hh(ent.size(), Iv{Rational(0), Rational(0)});
    for (std::size_t c = 0; c < ent.size(); ++c) {
        IvPoly t{ent[c].second};
        for (std::size_t d = 0; d < ent.size(); ++d)
            if (d != c)
                t = times_linear(t, ent[d].first);
        for (std::size_t i = 0; i < t.size(); ++i)
            hh[i] = iv_add(hh[i], t[i]);
    }
    auto rebuild = [&](const IvPoly& p) {
        std::vector<Rational> c;
        for (const auto& iv : p)
            c.push_back(reconstruct_in_interval(iv.lo, iv.hi, denominator_bound));
        return Poly(c);
    };
    return {rebuild(h), rebuild(hh)};
}

std::pair<Rational, Rational> parse_decimal(const std::string& text)
{
    std::size_t i = 0;
    auto bad = [&]() { fail(ErrorKind::MalformedInput, "not a decimal number: '" + text + "'"); };
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+'))
        neg = text[i++] == '-';
    std::string digits;
    long frac = 0;
    bool point = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            if (point)
                ++frac;
        } else if (ch == '.' && !point) {
            point = true;
        } else {
            break;
        }
    }
    if (digits.empty())
        bad();
    long exp = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E')
            bad();
        std::string e = text.substr(i + 1);
        if (e.empty() || e.find_first_not_of("+-0123456789") != std::string::npos)
            bad();
        try {
            exp = std::stol(e);
        } catch (...) {
            bad();
        }
    }
    Rational m{Integer(digits, 10)};
    if (neg)
        m = -m;
    long scale = exp - frac;
    Rational unit = scale >= 0 ? Rational(ipow(10, static_cast<unsigned long>(scale)))
                               : Rational(Rational(1) / ipow(10, static_cast<unsigned long>(-scale)));
    return {Rational(m * unit), Rational(unit / 2)};
}

Rational simplest_in_interval(const Rational& lo, const Rational& hi)
{
    if (lo > hi)
        fail(ErrorKind::Internal, "empty interval");
    if (lo <= 0 && hi >= 0)
        return 0;
    if (hi < 0)
        return -simplest_in_interval(-hi, -lo);
    Integer fl = floor(lo);
    if (Rational(fl) == lo)
        return lo;
    if (Rational(fl + 1) <= hi)
        return Rational(fl + 1);
    Rational inner = simplest_in_interval(1 / (hi - fl), 1 / (lo - fl));
    return Rational(fl) + 1 / inner;
}

Rational reconstruct_in_interval(const Rational& lo, const Rational& hi, const Integer& denominator_bound)
{
    if (denominator_bound < 1)
        fail(ErrorKind::MalformedInput, "denominator bound must be positive");
    Rational s = simplest_in_interval(lo, hi);
    const Integer& a = s.get_num();
    const Integer& b = s.get_den();
    const Integer& n = denominator_bound;
    if (b > n)
        fail(ErrorKind::AmbiguousReconstruction,
             "no fraction with denominator <= " + to_string(n) + " in the error window");
    // Farey neighbours of a/b of order n
    Integer inv, d0, d1;
    if (b == 1) {
        d0 = 0;
        d1 = 0;
    } else {
        Integer am = ((a % b) + b) % b;
        mpz_invert(inv.get_mpz_t(), am.get_mpz_t(), b.get_mpz_t());
        d1 = inv;                   // a d == 1 mod b
        d0 = (b - inv) % b;         // a d == -1 mod b
    }
    Integer dr = d0 + b * ((n - d0) / b);
    Integer dl = d1 + b * ((n - d1) / b);
    if (dr == 0)
        dr = n;
    if (dl == 0)
        dl = n;
    Rational right = Rational((1 + a * dr) / b) / dr;
    Rational left = Rational((a * dl - 1) / b) / dl;
    if (right <= hi || left >= lo)
        fail(ErrorKind::AmbiguousReconstruction,
             "several fractions with denominator <= " + to_string(n) + " fit the error window of [" +
                 to_string(lo) + ", " + to_string(hi) + "]");
    return s;
}

Rational rational_reconstruct(const std::string& x, const Integer& denominator_bound)
{
    auto [v, r] = parse_decimal(x);
    return reconstruct_in_interval(v - r, v + r, denominator_bound);
}

bool ClasspolyReport::has_violation() const
{
    for (const auto& [p, v] : verdicts)
        if (v == "violation")
            return true;
    return cofactor_verdict == "violation";
}

ClasspolyReport certify_denominators(const Poly& H, const Poly& H_hat, const Integer& B, unsigned long effort)
{
    if (B < 2)
        fail(ErrorKind::InvalidB, "B = " + to_string(B) + " is invalid: B is an integer and B >= 2");
    ClasspolyReport r;
    r.H = H;
    r.H_hat = H_hat;
    r.threshold = Rational(ipow(B, 10)) / 8;
    r.denominator = lcm_den(H_hat, lcm_den(H, 1).get_num()).get_num();
    Factorization f = factor(r.denominator, effort);
    r.denominator_primes = f.primes;
    r.probable_primes = f.probable;
    for (const auto& [p, e] : f.primes)
        r.verdicts[p] = Rational(p) < r.threshold ? "within_bound" : "violation";
    r.cofactor = f.cofactor;
    if (!f.complete()) {
        // every prime factor of the cofactor is at most the cofactor itself
        r.cofactor_verdict = Rational(f.cofactor) < r.threshold ? "within_bound" : "unfactored";
    }
    return r;
}

}  // namespace cmbound
