#pragma once

#include <vector>

#include "cmbound/poly.hpp"
#include "cmbound/rational.hpp"

namespace cmbound {

struct Complex {
    Rational re, im;

    Complex() = default;
    Complex(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

    Complex conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b)
    {
        Rational d = b.norm2();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

Complex round_dyadic(const Complex& z, long bits);

/* Closed disk {z : |z - mid| <= rad}, with dyadic midpoint and radius. */
struct Ball {
    Complex mid;
    Rational rad;

    static Ball exact(const Rational& x) { return Ball{Complex(x), Rational(0)}; }

    Ball conj() const { return Ball{mid.conj(), rad}; }

    bool contains(const Complex& z) const;
    bool overlaps(const Ball& other) const;
    /* True when the ball lies inside `outer`. */
    bool inside(const Ball& outer) const;
    bool contains_zero() const { return contains(Complex()); }

    /* Certified signs of the real / imaginary part; 0 when the ball straddles. */
    int re_sign() const;
    int im_sign() const;

    /* Upper bound on |z| for z in the ball, and a lower bound (>= 0). */
    Rational abs_upper() const;
    Rational abs_lower() const;
};

/* Ball operations keep midpoints on a 2^-prec grid and absorb rounding into the radius. */
Ball add(const Ball& a, const Ball& b);
Ball sub(const Ball& a, const Ball& b);
Ball mul(const Ball& a, const Ball& b, long prec);
Ball scale(const Ball& a, const Rational& s, long prec);
/* Sum_i coeffs[i] * x^i. */
Ball horner(const std::vector<Rational>& coeffs, const Ball& x, long prec);

/* Rough log2 |x| (0 maps to a very negative value). */
long approx_log2(const Rational& x);

/* Certified isolation of the complex roots of a squarefree polynomial.
 * Every returned ball contains exactly one root, the balls are pairwise
 * disjoint, and each radius is at most 2^-precision_bits. */
std::vector<Ball> isolate_roots(const Poly& f, long precision_bits);
/* Same, starting from existing approximations (keeps the root order). */
std::vector<Ball> refine_roots(const Poly& f, const std::vector<Ball>& approx, long precision_bits);

}  // namespace cmbound
