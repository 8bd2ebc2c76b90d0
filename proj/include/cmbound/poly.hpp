#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "cmbound/rational.hpp"

namespace cmbound {

/* Univariate polynomial over Q, coefficients stored low degree first.
 * Always normalized: no trailing zero coefficients, so the zero polynomial
 * has an empty coefficient list and degree -1. */
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    Poly(std::initializer_list<long> coeffs);

    static Poly constant(const Rational& c);
    static Poly monomial(const Rational& c, int degree);
    static Poly x() { return monomial(Rational(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    const Rational& lc() const;

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool has_integer_coeffs() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /* Euclidean division; divisor must be nonzero. */
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    Poly operator%(const Poly& divisor) const { return divmod(divisor).second; }
    Poly operator/(const Poly& divisor) const { return divmod(divisor).first; }

    Poly derivative() const;
    Poly monic() const;
    Poly pow(unsigned e) const;
    /* this(g(x)) */
    Poly compose(const Poly& g) const;
    /* this(x + t) */
    Poly shift(const Rational& t) const;

    Rational operator()(const Rational& x) const;

    /* Generic Horner evaluation for any ring with +, * and construction from Rational. */
    template <class T, class FromRational>
    T evaluate(const T& x, FromRational&& lift) const
    {
        if (c_.empty())
            return lift(Rational(0));
        T acc = lift(c_.back());
        for (int i = degree() - 1; i >= 0; --i)
            acc = acc * x + lift(c_[static_cast<std::size_t>(i)]);
        return acc;
    }

    std::string to_string(const char* var = "x") const;

private:
    void normalize();
    std::vector<Rational> c_;
};

Poly gcd(Poly a, Poly b);  // monic gcd, zero if both zero

/* Res(f, g) over Q via the Euclidean algorithm. */
Rational resultant(const Poly& f, const Poly& g);

/* disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f). */
Rational poly_discriminant(const Poly& f);

bool is_squarefree(const Poly& f);

/* Real roots counted exactly by a Sturm sequence. */
int count_real_roots(const Poly& f);

}  // namespace cmbound
