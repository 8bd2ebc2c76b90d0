#include "cmbound/number_field.hpp"

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <numeric>

#include "cmbound/error.hpp"

namespace cmbound {

namespace {

/* ---- polynomials over Z/p, low degree first ---- */

using ModPoly = std::vector<std::int64_t>;

void trim(ModPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p)
{
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

ModPoly mod_rem(ModPoly a, const ModPoly& m, std::int64_t p)
{
    trim(a);
    std::int64_t inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        std::int64_t t = a.back() * inv % p;
        std::size_t s = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[s + i] = ((a[s + i] - t * m[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

ModPoly mod_div(ModPoly a, const ModPoly& m, std::int64_t p)
{
    trim(a);
    std::int64_t inv = inv_mod(m.back(), p);
    if (a.size() < m.size())
        return {};
    ModPoly q(a.size() - m.size() + 1);
    while (a.size() >= m.size()) {
        std::int64_t t = a.back() * inv % p;
        std::size_t s = a.size() - m.size();
        q[s] = t;
        for (std::size_t i = 0; i < m.size(); ++i)
            a[s + i] = ((a[s + i] - t * m[i]) % p + p) % p;
        trim(a);
    }
    return q;
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::int64_t p)
{
    if (a.empty() || b.empty())
        return {};
    ModPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return mod_rem(std::move(r), m, p);
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::int64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly r = mod_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

ModPoly mod_powx(const ModPoly& base, std::int64_t e, const ModPoly& m, std::int64_t p)
{
    ModPoly r{1}, b = base;
    while (e) {
        if (e & 1)
            r = mod_mul(r, b, m, p);
        b = mod_mul(b, b, m, p);
        e >>= 1;
    }
    return r;
}

/* Degrees of the irreducible factors of a squarefree f mod p. */
std::vector<int> ddf_degrees(ModPoly f, std::int64_t p)
{
    std::vector<int> out;
    ModPoly x{0, 1};
    ModPoly h = mod_rem(x, f, p);
    int i = 0;
    while (static_cast<int>(f.size()) - 1 >= 2 * (i + 1)) {
        ++i;
        h = mod_powx(h, p, f, p);
        ModPoly hx = h;
        if (hx.size() < 2)
            hx.resize(2);
        hx[1] = ((hx[1] - 1) % p + p) % p;
        ModPoly g = mod_gcd(hx, f, p);
        int dg = static_cast<int>(g.size()) - 1;
        if (dg > 0) {
            for (int j = 0; j < dg / i; ++j)
                out.push_back(i);
            f = mod_div(f, g, p);
            h = mod_rem(h, f, p);
        }
    }
    if (f.size() > 1)
        out.push_back(static_cast<int>(f.size()) - 1);
    return out;
}

using DegreeSet = std::bitset<256>;

DegreeSet subset_sums(const std::vector<int>& parts)
{
    DegreeSet s;
    s[0] = true;
    for (int d : parts)
        s |= (s << static_cast<std::size_t>(d));
    return s;
}

bool ball_near_integer(const Ball& b, Integer& out, bool& ambiguous)
{
    // coefficient of a product of root balls: real part near an integer, imaginary part near 0
    if (b.rad >= Rational(1, 4)) {
        ambiguous = true;
        return false;
    }
    Rational shifted = b.mid.re + Rational(1, 2);
    out = floor(shifted);
    Rational dre = b.mid.re - Rational(out);
    return dre * dre + b.mid.im * b.mid.im <= b.rad * b.rad;
}

/* Search for a monic integer factor of degree k among products of root subsets. */
bool has_factor_of_degree(const Poly& f, int k, long& bits)
{
    int d = f.degree();
    for (int attempt = 0; attempt < 6; ++attempt, bits *= 2) {
        auto roots = isolate_roots(f, bits);
        bool ambiguous = false;
        std::vector<int> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<Ball> prod{Ball::exact(Rational(1))};
            for (int j : idx) {
                const Ball& z = roots[static_cast<std::size_t>(j)];
                std::vector<Ball> next(prod.size() + 1, Ball::exact(Rational(0)));
                for (std::size_t i = 0; i < prod.size(); ++i) {
                    next[i + 1] = add(next[i + 1], prod[i]);
                    Ball t = mul(prod[i], z, bits + 16);
                    next[i] = sub(next[i], t);
                }
                prod = std::move(next);
            }
            std::vector<Rational> coeffs;
            bool ok = true;
            for (const auto& c : prod) {
                Integer n;
                if (!ball_near_integer(c, n, ambiguous)) {
                    ok = false;
                    break;
                }
                coeffs.emplace_back(n);
            }
            if (ok) {
                Poly g(coeffs);
                if ((f % g).is_zero())
                    return true;
            }
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d - k + pos)
                --pos;
            if (pos < 0)
                break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int q = pos + 1; q < k; ++q)
                idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
        }
        if (!ambiguous)
            return false;
    }
    fail(ErrorKind::PrecisionExhausted, "irreducibility test could not resolve root products");
}

}  // namespace

bool is_irreducible(const Poly& f)
{
    int d = f.degree();
    if (d < 1)
        return false;
    if (d == 1)
        return true;
    if (!f.has_integer_coeffs())
        fail(ErrorKind::MalformedInput, "irreducibility test expects integer coefficients");
    if (!is_squarefree(f))
        return false;
    Poly g = f.monic();
    if (!g.has_integer_coeffs() || d >= 256) {
        // rescale x -> x / lc to make it monic integral
        Rational lc = f.lc();
        std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
        for (int i = 0; i <= d; ++i)
            c[static_cast<std::size_t>(i)] = f.coeff(i) * qpow(lc, d - 1 - i);
        g = Poly(c);
        if (d >= 256)
            fail(ErrorKind::UnsupportedDegree, "degree too large");
    }
    Integer disc = poly_discriminant(g).get_num();
    DegreeSet possible;
    possible.set();
    int used = 0;
    for (std::int64_t p = 3; p < 2000 && used < 12; p += 2) {
        bool prime = true;
        for (std::int64_t q = 3; q * q <= p; q += 2)
            if (p % q == 0)
                prime = false;
        if (!prime || mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p)))
            continue;
        ModPoly m(static_cast<std::size_t>(d) + 1);
        for (int i = 0; i <= d; ++i) {
            Integer v = g.coeff(i).get_num() % p;
            if (v < 0)
                v += p;
            m[static_cast<std::size_t>(i)] = v.get_si();
        }
        possible &= subset_sums(ddf_degrees(m, p));
        ++used;
        bool any = false;
        for (int k = 1; k < d; ++k)
            any = any || possible[static_cast<std::size_t>(k)];
        if (!any)
            return true;
    }
    long bits = 64;
    for (int k = 1; k <= d / 2; ++k)
        if (possible[static_cast<std::size_t>(k)] && has_factor_of_degree(g, k, bits))
            return false;
    return true;
}

/* ---- NumberField ---- */

NumberField::NumberField(Poly f) : f_(std::move(f))
{
    int d = f_.degree();
    // Newton identities
    sums_.assign(static_cast<std::size_t>(2 * d), Rational(0));
    sums_[0] = d;
    auto a = [&](int i) { return f_.coeff(i); };
    for (int k = 1; k < 2 * d; ++k) {
        Rational s(0);
        for (int i = 1; i < k && i <= d; ++i)
            s += a(d - i) * sums_[static_cast<std::size_t>(k - i)];
        if (k <= d)
            s += Rational(k) * a(d - k);
        sums_[static_cast<std::size_t>(k)] = -s;
    }
    std::vector<Rational> cur(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        cur[static_cast<std::size_t>(i)] = -a(i);
    for (int k = 0; k + 1 < d; ++k) {
        red_.push_back(cur);
        Rational top = cur.back();
        std::vector<Rational> next(static_cast<std::size_t>(d));
        for (int i = d - 1; i >= 1; --i)
            next[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
        for (int i = 0; i < d; ++i)
            next[static_cast<std::size_t>(i)] -= top * a(i);
        cur = std::move(next);
    }
}

Field NumberField::create(const Poly& f)
{
    if (f.degree() < 1)
        fail(ErrorKind::DegenerateInput, "defining polynomial must be nonconstant");
    if (!f.is_monic() || !f.has_integer_coeffs())
        fail(ErrorKind::MalformedInput, "defining polynomial must be monic with integer coefficients");
    if (!is_irreducible(f))
        fail(ErrorKind::NotIrreducible, "defining polynomial " + f.to_string() + " is reducible");
    return Field(new NumberField(f));
}

/* ---- FieldElement ---- */

FieldElement::FieldElement(Field field, std::vector<Rational> coords)
    : k_(std::move(field)), c_(std::move(coords))
{
    if (!k_ || c_.size() != static_cast<std::size_t>(k_->degree()))
        fail(ErrorKind::MalformedInput, "element has the wrong number of coordinates");
}

FieldElement FieldElement::zero(const Field& k)
{
    return FieldElement(k, std::vector<Rational>(static_cast<std::size_t>(k->degree())));
}

FieldElement FieldElement::scalar(const Field& k, const Rational& c)
{
    FieldElement e = zero(k);
    e.c_[0] = c;
    return e;
}

FieldElement FieldElement::one(const Field& k)
{
    return scalar(k, Rational(1));
}

FieldElement FieldElement::generator(const Field& k)
{
    if (k->degree() == 1)
        return scalar(k, -k->poly().coeff(0));
    FieldElement e = zero(k);
    e.c_[1] = 1;
    return e;
}

FieldElement FieldElement::from_poly(const Field& k, const Poly& p)
{
    Poly r = p % k->poly();
    std::vector<Rational> c(static_cast<std::size_t>(k->degree()));
    for (int i = 0; i <= r.degree(); ++i)
        c[static_cast<std::size_t>(i)] = r.coeff(i);
    return FieldElement(k, std::move(c));
}

void require_same_field(const FieldElement& a, const FieldElement& b)
{
    if (a.field() != b.field() && a.field()->poly() != b.field()->poly())
        fail(ErrorKind::MalformedInput, "elements of different fields");
}

bool FieldElement::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

bool FieldElement::is_rational() const
{
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& x) { return x == 0; });
}

FieldElement FieldElement::operator-() const
{
    FieldElement r = *this;
    for (auto& x : r.c_)
        x = -x;
    return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b)
{
    require_same_field(a, b);
    FieldElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] += b.c_[i];
    return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b)
{
    require_same_field(a, b);
    FieldElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] -= b.c_[i];
    return r;
}

FieldElement operator*(const Rational& s, const FieldElement& a)
{
    FieldElement r = a;
    for (auto& x : r.c_)
        x *= s;
    return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b)
{
    require_same_field(a, b);
    std::size_t d = a.c_.size();
    std::vector<Rational> full(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < d; ++j)
            if (b.c_[j] != 0)
                full[i + j] += a.c_[i] * b.c_[j];
    }
    std::vector<Rational> out(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(d));
    const auto& red = a.k_->reductions();
    for (std::size_t k = d; k < 2 * d - 1; ++k) {
        if (full[k] == 0)
            continue;
        const auto& r = red[k - d];
        for (std::size_t i = 0; i < d; ++i)
            out[i] += full[k] * r[i];
    }
    return FieldElement(a.k_, std::move(out));
}

FieldElement FieldElement::pow(unsigned e) const
{
    FieldElement r = one(k_), b = *this;
    while (e) {
        if (e & 1u)
            r = r * b;
        e >>= 1u;
        if (e)
            b = b * b;
    }
    return r;
}

QMatrix FieldElement::mult_matrix() const
{
    std::size_t d = c_.size();
    QMatrix m(d, d);
    FieldElement col = *this;
    FieldElement theta = generator(k_);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i)
            m(i, j) = col.c_[i];
        if (j + 1 < d)
            col = col * theta;
    }
    return m;
}

FieldElement FieldElement::inverse() const
{
    if (is_zero())
        fail(ErrorKind::DegenerateInput, "inverse of zero");
    auto inv = cmbound::inverse(mult_matrix());
    if (!inv)
        fail(ErrorKind::Internal, "singular multiplication matrix");
    std::vector<Rational> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        c[i] = (*inv)(i, 0);
    return FieldElement(k_, std::move(c));
}

Rational FieldElement::trace() const
{
    const auto& s = k_->power_sums();
    Rational t(0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            t += c_[i] * s[i];
    return t;
}

Rational FieldElement::norm() const
{
    return det(mult_matrix());
}

Poly FieldElement::charpoly() const
{
    return cmbound::charpoly(mult_matrix());
}

Poly FieldElement::minpoly() const
{
    std::size_t d = c_.size();
    std::vector<FieldElement> pw{one(k_)};
    for (std::size_t k = 1; k <= d; ++k) {
        pw.push_back(pw.back() * *this);
        QMatrix m(k, d);
        for (std::size_t i = 0; i < k; ++i)
            m.set_row(i, pw[i].c_);
        auto sol = solve_left(m, pw[k].c_);
        if (sol) {
            std::vector<Rational> c(k + 1);
            for (std::size_t i = 0; i < k; ++i)
                c[i] = -(*sol)[i];
            c[k] = 1;
            return Poly(std::move(c));
        }
    }
    fail(ErrorKind::Internal, "minimal polynomial not found");
}

int FieldElement::degree() const
{
    std::size_t d = c_.size();
    QMatrix m(d, d);
    FieldElement p = one(k_);
    for (std::size_t i = 0; i < d; ++i) {
        m.set_row(i, p.c_);
        if (i + 1 < d)
            p = p * *this;
    }
    return static_cast<int>(rank(m));
}

FieldElement evaluate(const Poly& p, const FieldElement& a)
{
    const Field& k = a.field();
    return p.evaluate(a, [&](const Rational& c) { return FieldElement::scalar(k, c); });
}

/* ---- embeddings ---- */

std::size_t EmbeddingSet::conj_index(std::size_t k) const
{
    auto r = static_cast<std::size_t>(real_count);
    auto s = static_cast<std::size_t>(pair_count());
    if (k < r)
        return k;
    if (k < r + s)
        return k + s;
    return k - s;
}

namespace {

bool re_less(const Ball& a, const Ball& b)
{
    Rational gap = a.rad + b.rad;
    Rational dr = a.mid.re - b.mid.re;
    if (dr * dr > gap * gap)
        return a.mid.re < b.mid.re;
    return a.mid.im < b.mid.im;
}

void stable_sort_balls(std::vector<Ball>& v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && re_less(v[j], v[j - 1]); --j)
            std::swap(v[j], v[j - 1]);
}

/* Orders raw roots; false when conjugate pairing is not yet certified. */
bool arrange(std::vector<Ball> raw, EmbeddingSet& out)
{
    std::size_t n = raw.size();
    std::vector<Ball> reals, upper;
    for (std::size_t k = 0; k < n; ++k) {
        Ball c = raw[k].conj();
        std::size_t hits = 0, which = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (c.overlaps(raw[j])) {
                ++hits;
                which = j;
            }
        if (hits != 1)
            return false;
        if (which == k) {
            Ball r = raw[k];
            r.mid.im = 0;
            reals.push_back(r);
        } else {
            int s = raw[k].im_sign();
            if (s == 0)
                return false;
            if (s > 0)
                upper.push_back(raw[k]);
        }
    }
    if (reals.size() + 2 * upper.size() != n)
        return false;
    std::sort(reals.begin(), reals.end(),
              [](const Ball& a, const Ball& b) { return a.mid.re < b.mid.re; });
    stable_sort_balls(upper);
    out.roots = reals;
    for (const auto& b : upper)
        out.roots.push_back(b);
    for (const auto& b : upper)
        out.roots.push_back(b.conj());
    out.real_count = static_cast<int>(reals.size());
    return true;
}

}  // namespace

EmbeddingSet compute_embeddings(const Field& k, long precision_bits)
{
    if (precision_bits < 53)
        fail(ErrorKind::MalformedInput, "precision_bits must be at least 53");
    EmbeddingSet e;
    e.field = k;
    for (long bits = precision_bits; bits <= 16 * precision_bits; bits *= 2) {
        auto raw = isolate_roots(k->poly(), bits);
        if (arrange(std::move(raw), e)) {
            e.precision_bits = precision_bits;
            return e;
        }
    }
    fail(ErrorKind::PrecisionExhausted, "could not pair conjugate roots; retry with higher precision");
}

EmbeddingSet refine_embeddings(const EmbeddingSet& e, long precision_bits)
{
    if (precision_bits < 53)
        fail(ErrorKind::MalformedInput, "precision_bits must be at least 53");
    EmbeddingSet out = e;
    auto roots = refine_roots(e.field->poly(), e.roots, precision_bits);
    auto r = static_cast<std::size_t>(e.real_count);
    auto s = static_cast<std::size_t>(e.pair_count());
    for (std::size_t k = 0; k < r; ++k)
        roots[k].mid.im = 0;
    for (std::size_t k = 0; k < s; ++k) {
        if (roots[r + k].im_sign() <= 0)
            fail(ErrorKind::Internal, "refined root left the upper half-plane");
        roots[r + s + k] = roots[r + k].conj();
    }
    out.roots = std::move(roots);
    out.precision_bits = precision_bits;
    return out;
}

Ball embed(const FieldElement& a, const EmbeddingSet& e, std::size_t k)
{
    return horner(a.coords(), e.roots[k], e.precision_bits + 16);
}

Ball ball_inverse(const Ball& b, long prec)
{
    Rational m2 = b.mid.norm2();
    Rational mlo = sqrt_lower(m2, prec + 8);
    if (mlo <= b.rad)
        fail(ErrorKind::PrecisionExhausted, "inverse of a ball containing zero");
    Complex inv = Complex(Rational(1)) / b.mid;
    Complex r = round_dyadic(inv, prec);
    Rational rad = b.rad / (mlo * (mlo - b.rad));
    if (!(r == inv))
        rad += power_of_two(-prec);
    return Ball{r, ceil_dyadic(rad, prec + 4)};
}

Interpolation interpolate(const EmbeddingSet& e, const std::vector<Ball>& targets, const Integer& scale)
{
    const Poly& f = e.field->poly();
    std::size_t d = static_cast<std::size_t>(f.degree());
    long prec = e.precision_bits + 16;
    std::vector<Ball> coeff(d, Ball::exact(Rational(0)));
    for (std::size_t k = 0; k < d; ++k) {
        const Ball& z = e.roots[k];
        // q = f / (x - z) by synthetic division
        std::vector<Ball> q(d, Ball::exact(Rational(0)));
        q[d - 1] = Ball::exact(f.coeff(static_cast<int>(d)));
        for (std::size_t i = d - 1; i > 0; --i)
            q[i - 1] = add(Ball::exact(f.coeff(static_cast<int>(i))), mul(z, q[i], prec));
        Ball df = q[d - 1];
        for (std::size_t i = d - 1; i > 0; --i)
            df = add(mul(df, z, prec), q[i - 1]);
        Ball w = mul(targets[k], ball_inverse(df, prec), prec);
        for (std::size_t i = 0; i < d; ++i)
            coeff[i] = add(coeff[i], mul(w, q[i], prec));
    }
    Interpolation out;
    std::vector<Rational> c(d);
    Rational quarter(1, 4);
    for (std::size_t i = 0; i < d; ++i) {
        Rational lo = (coeff[i].mid.re - coeff[i].rad) * scale;
        Rational hi = (coeff[i].mid.re + coeff[i].rad) * scale;
        if (hi - lo >= quarter) {
            out.status = InterpStatus::NeedPrecision;
            return out;
        }
        Integer n = floor(coeff[i].mid.re * scale + Rational(1, 2));
        if (Rational(n) < lo || Rational(n) > hi) {
            out.status = InterpStatus::NoElement;
            return out;
        }
        c[i] = Rational(n) / scale;
    }
    out.status = InterpStatus::Found;
    out.element = FieldElement(e.field, std::move(c));
    return out;
}

/* ---- orders ---- */

namespace {

void normalize_den(ZMatrix& b, Integer& den)
{
    Integer g = den;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b(i, j).get_mpz_t());
    if (g > 1) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                b(i, j) /= g;
        den /= g;
    }
}

}  // namespace

OrderBasis OrderBasis::lattice(const Field& k, const std::vector<FieldElement>& gens)
{
    std::size_t d = static_cast<std::size_t>(k->degree());
    Integer den(1);
    for (const auto& g : gens)
        for (const auto& c : g.coords())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZMatrix m(gens.size(), d);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = Rational(gens[i][j] * den).get_num();
    OrderBasis o;
    o.k_ = k;
    o.basis_ = hnf(m);
    o.den_ = den;
    normalize_den(o.basis_, o.den_);
    if (o.basis_.rows() == d) {
        QMatrix q = to_rational(o.basis_);
        auto inv = inverse(q);
        o.inv_ = *inv;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                o.inv_(i, j) *= o.den_;
    }
    return o;
}

OrderBasis OrderBasis::create(const Field& k, const ZMatrix& basis, const Integer& den)
{
    std::size_t d = static_cast<std::size_t>(k->degree());
    if (basis.rows() != d || basis.cols() != d)
        fail(ErrorKind::MalformedInput, "order basis must be a d x d matrix");
    if (den <= 0)
        fail(ErrorKind::MalformedInput, "order denominator must be positive");
    if (cmbound::rank(to_rational(basis)) != d)
        fail(ErrorKind::NotAnOrder, "order basis is not of full rank");
    OrderBasis o;
    o.k_ = k;
    o.basis_ = basis;
    o.den_ = den;
    normalize_den(o.basis_, o.den_);
    o.inv_ = *inverse(to_rational(o.basis_));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            o.inv_(i, j) *= o.den_;
    if (!o.contains(FieldElement::one(k)))
        fail(ErrorKind::NotAnOrder, "lattice does not contain 1");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
            if (!o.contains(o.element(i) * o.element(j)))
                fail(ErrorKind::NotAnOrder, "basis is not closed under multiplication");
    return o;
}

OrderBasis OrderBasis::equation_order(const Field& k)
{
    auto d = static_cast<std::size_t>(k->degree());
    return create(k, ZMatrix::identity(d), Integer(1));
}

FieldElement OrderBasis::element(std::size_t i) const
{
    std::size_t d = basis_.cols();
    std::vector<Rational> c(d);
    for (std::size_t j = 0; j < d; ++j)
        c[j] = Rational(basis_(i, j), den_);
    for (auto& x : c)
        x.canonicalize();
    return FieldElement(k_, std::move(c));
}

FieldElement OrderBasis::combine(const std::vector<Integer>& x) const
{
    std::size_t d = basis_.cols();
    std::vector<Rational> c(d);
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < d; ++j)
            c[j] += Rational(x[i] * basis_(i, j));
    }
    for (auto& v : c)
        v /= den_;
    return FieldElement(k_, std::move(c));
}

std::vector<Rational> OrderBasis::coords(const FieldElement& a) const
{
    std::size_t d = basis_.cols();
    if (basis_.rows() == d) {
        std::vector<Rational> x(d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i)
                if (a[i] != 0)
                    x[j] += a[i] * inv_(i, j);
        return x;
    }
    QMatrix q = to_rational(basis_);
    std::vector<Rational> b(d);
    for (std::size_t i = 0; i < d; ++i)
        b[i] = a[i] * den_;
    auto x = solve_left(q, b);
    if (!x)
        fail(ErrorKind::Internal, "element outside the span of the lattice");
    return *x;
}

bool OrderBasis::contains(const FieldElement& a) const
{
    std::size_t d = basis_.cols();
    if (basis_.rows() != d) {
        QMatrix q = to_rational(basis_);
        std::vector<Rational> b(d);
        for (std::size_t i = 0; i < d; ++i)
            b[i] = a[i] * den_;
        auto x = solve_left(q, b);
        if (!x)
            return false;
        return std::all_of(x->begin(), x->end(), [](const Rational& v) { return v.get_den() == 1; });
    }
    auto x = coords(a);
    return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v.get_den() == 1; });
}

QMatrix trace_gram(const std::vector<FieldElement>& basis)
{
    std::size_t n = basis.size();
    QMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            g(i, j) = (basis[i] * basis[j]).trace();
            g(j, i) = g(i, j);
        }
    return g;
}

Integer order_discriminant(const OrderBasis& o)
{
    std::vector<FieldElement> b;
    for (std::size_t i = 0; i < o.rank(); ++i)
        b.push_back(o.element(i));
    Rational d = det(trace_gram(b));
    if (d.get_den() != 1)
        fail(ErrorKind::NotAnOrder, "trace form is not integral on the basis");
    return d.get_num();
}

}  // namespace cmbound
