#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmbound/poly.hpp"
#include "cmbound/rational.hpp"

namespace cmbound {

/* Binary form sum c[i] x^i z^(m-i) of degree m = c.size() - 1. */
struct BinaryForm {
    std::vector<Rational> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const;
    friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.c == b.c; }
};

BinaryForm form_mul(const BinaryForm& f, const BinaryForm& g);
/* F(a x + b z, c x + d z). */
BinaryForm substitute(const BinaryForm& f, const Rational& a, const Rational& b, const Rational& c, const Rational& d);
/* (f, g)_k = (m-k)!(n-k)!/(m!n!) sum_i (-1)^i C(k,i) d^k f/dx^(k-i)dz^i d^k g/dx^i dz^(k-i) */
BinaryForm transvectant(const BinaryForm& f, const BinaryForm& g, int k);

/* Discriminant of the form, as disc F(x,1) when the x^m coefficient is nonzero;
 * invariant under SL2. */
Rational form_discriminant(const BinaryForm& f);
/* No repeated linear factor over the algebraic closure (resultant test). */
bool is_squarefree_form(const BinaryForm& f);

struct ShiodaInvariants {
    std::array<Rational, 9> J;  // J2 .. J10 in the transvectant normalization
    std::array<Rational, 9> Ip; // J_k divided by its content: primitive integral polynomials
    Rational disc;
    const Rational& I(int k) const { return Ip[static_cast<std::size_t>(k - 2)]; }
};

/* Content of J_k as a polynomial in the coefficients of F. */
Rational shioda_content(int k);

/* Shioda's J2..J10 via the covariants g = (f,f)_4, k = (f,f)_6, h = (k,k)_2,
 * m = (f,k)_4, n = (f,h)_4, p = (g,k)_4, q = (g,h)_4:
 * J2 = (f,f)_8, J3 = (f,g)_8, J4 = (k,k)_4, J5 = (m,k)_4, J6 = (k,h)_4,
 * J7 = (m,h)_4, J8 = (p,h)_4, J9 = (n,h)_4, J10 = (q,h)_4.
 * I_k = J_k / content(J_k) has coprime integer coefficients. */
ShiodaInvariants shioda_invariants(const BinaryForm& f);

struct InvariantVector {
    std::string kind;  // "hyperelliptic" or "picard"
    std::vector<std::pair<std::string, Rational>> values;
    Rational disc;

    const Rational& operator[](const std::string& name) const;
    friend bool operator==(const InvariantVector& a, const InvariantVector& b)
    {
        return a.kind == b.kind && a.values == b.values;
    }
};

/* j1 = I2^7/D, j3 = I2^5 I4/D, j5 = I2^4 I6/D, j7 = I2^3 I8/D, j9 = I2^2 I10/D. */
InvariantVector hyperelliptic_j(const BinaryForm& f);

struct PicardQuartic {
    Rational a2, a3, a4;
};

/* Monic, depressed model of y^3 = f(x) for a quartic f. */
PicardQuartic normalize_quartic(const Poly& f);
Rational picard_discriminant(const PicardQuartic& q);
InvariantVector picard_invariants(const PicardQuartic& q);

struct PicardModel {
    int case_number = 0;
    std::optional<Rational> A, B;
    PicardQuartic model;
};

PicardModel picard_normal_form(const InvariantVector& v);

struct BadReduction {
    bool certified_bad = false;
    bool inconclusive = true;
    bool conjectural = false;
    std::optional<long> valuation;  // absent for j = 0
    std::string reason;
};

/* kind "picard" reports are labelled conjectural. */
BadReduction bad_reduction_certificate(const Rational& j, const Integer& p, const std::string& kind = "hyperelliptic");

}  // namespace cmbound
