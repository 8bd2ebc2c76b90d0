#include "cmbound/poly.hpp"

#include <sstream>

#include "cmbound/error.hpp"

namespace cmbound {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    normalize();
}

Poly::Poly(std::initializer_list<long> coeffs)
{
    for (long v : coeffs)
        c_.emplace_back(v);
    normalize();
}

Poly Poly::constant(const Rational& c)
{
    return Poly(std::vector<Rational>{c});
}

Poly Poly::monomial(const Rational& c, int degree)
{
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::normalize()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Rational Poly::coeff(int i) const
{
    if (i < 0 || i > degree())
        return Rational(0);
    return c_[static_cast<std::size_t>(i)];
}

const Rational& Poly::lc() const
{
    if (c_.empty())
        fail(ErrorKind::DegenerateInput, "leading coefficient of the zero polynomial");
    return c_.back();
}

bool Poly::has_integer_coeffs() const
{
    for (const auto& c : c_)
        if (c.get_den() != 1)
            return false;
    return true;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    normalize();
    return *this;
}

Poly& Poly::operator*=(const Poly& o)
{
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    normalize();
    return *this;
}

Poly& Poly::operator*=(const Rational& s)
{
    for (auto& c : c_)
        c *= s;
    normalize();
    return *this;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const
{
    if (divisor.is_zero())
        fail(ErrorKind::DegenerateInput, "polynomial division by zero");
    Poly rem = *this;
    int dd = divisor.degree();
    if (rem.degree() < dd)
        return {Poly(), rem};
    std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - dd) + 1);
    const Rational& lead = divisor.lc();
    while (!rem.is_zero() && rem.degree() >= dd) {
        int shift = rem.degree() - dd;
        Rational t = rem.lc() / lead;
        q[static_cast<std::size_t>(shift)] = t;
        for (int i = 0; i <= dd; ++i)
            rem.c_[static_cast<std::size_t>(i + shift)] -= t * divisor.c_[static_cast<std::size_t>(i)];
        rem.normalize();
    }
    return {Poly(std::move(q)), rem};
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1)
        return Poly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(d));
}

Poly Poly::monic() const
{
    if (c_.empty())
        return *this;
    return *this * (Rational(1) / lc());
}

Poly Poly::pow(unsigned e) const
{
    Poly result = Poly::constant(Rational(1));
    Poly base = *this;
    while (e) {
        if (e & 1u)
            result *= base;
        e >>= 1u;
        if (e)
            base *= base;
    }
    return result;
}

Poly Poly::compose(const Poly& g) const
{
    Poly acc;
    for (int i = degree(); i >= 0; --i) {
        acc *= g;
        acc += Poly::constant(c_[static_cast<std::size_t>(i)]);
    }
    return acc;
}

Poly Poly::shift(const Rational& t) const
{
    return compose(Poly(std::vector<Rational>{t, Rational(1)}));
}

Rational Poly::operator()(const Rational& x) const
{
    Rational acc(0);
    for (int i = degree(); i >= 0; --i)
        acc = acc * x + c_[static_cast<std::size_t>(i)];
    return acc;
}

std::string Poly::to_string(const char* var) const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c == 0)
            continue;
        Rational a = abs(c);
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        bool unit = (a == 1);
        if (!unit || i == 0)
            os << cmbound::to_string(a);
        if (i > 0) {
            if (!unit)
                os << "*";
            os << var;
            if (i > 1)
                os << "^" << i;
        }
    }
    return os.str();
}

Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Rational resultant(const Poly& f, const Poly& g)
{
    if (f.is_zero() || g.is_zero())
        return Rational(0);
    int m = f.degree();
    int n = g.degree();
    if (n == 0)
        return qpow(g.lc(), m);
    if (m == 0)
        return qpow(f.lc(), n);
    Poly r = f % g;
    if (r.is_zero())
        return Rational(0);
    Rational s = ((m * n) % 2) ? Rational(-1) : Rational(1);
    return s * qpow(g.lc(), m - r.degree()) * resultant(g, r);
}

Rational poly_discriminant(const Poly& f)
{
    int d = f.degree();
    if (d < 1)
        fail(ErrorKind::DegenerateInput, "discriminant of a constant polynomial");
    Rational r = resultant(f, f.derivative()) / f.lc();
    if ((d * (d - 1) / 2) % 2)
        r = -r;
    return r;
}

bool is_squarefree(const Poly& f)
{
    if (f.degree() < 1)
        return true;
    return gcd(f, f.derivative()).degree() == 0;
}

namespace {

int sign_changes(const std::vector<Poly>& seq, int which)
{
    // which: +1 evaluates at +inf, -1 at -inf
    int changes = 0;
    int prev = 0;
    for (const auto& p : seq) {
        if (p.is_zero())
            continue;
        int s = sgn(p.lc());
        if (which < 0 && (p.degree() % 2))
            s = -s;
        if (prev != 0 && s != prev)
            ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

int count_real_roots(const Poly& f)
{
    if (f.degree() < 1)
        return 0;
    Poly sq = f / gcd(f, f.derivative());
    std::vector<Poly> seq{sq, sq.derivative()};
    while (!seq.back().is_zero()) {
        Poly r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero())
            break;
        seq.push_back(-r);
    }
    return sign_changes(seq, -1) - sign_changes(seq, +1);
}

}  // namespace cmbound
