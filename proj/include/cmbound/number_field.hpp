#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cmbound/ball.hpp"
#include "cmbound/linalg.hpp"
#include "cmbound/poly.hpp"

namespace cmbound {

class NumberField;
using Field = std::shared_ptr<const NumberField>;

/* Q[x]/(f) for a monic irreducible integer polynomial f. */
class NumberField {
public:
    /* Validates f (monic, integral, irreducible over Q). */
    static Field create(const Poly& f);

    const Poly& poly() const { return f_; }
    int degree() const { return f_.degree(); }
    /* Newton power sums s_k = sum of theta_i^k, k < 2d. */
    const std::vector<Rational>& power_sums() const { return sums_; }
    /* Coordinates of x^(d+k), k = 0..d-2. */
    const std::vector<std::vector<Rational>>& reductions() const { return red_; }

private:
    explicit NumberField(Poly f);
    Poly f_;
    std::vector<Rational> sums_;
    std::vector<std::vector<Rational>> red_;
};

/* Irreducibility over Q of a nonconstant integer polynomial. */
bool is_irreducible(const Poly& f);

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(Field field, std::vector<Rational> coords);

    static FieldElement zero(const Field& k);
    static FieldElement one(const Field& k);
    static FieldElement scalar(const Field& k, const Rational& c);
    static FieldElement generator(const Field& k);  // theta
    static FieldElement from_poly(const Field& k, const Poly& p);

    const Field& field() const { return k_; }
    const std::vector<Rational>& coords() const { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    Poly as_poly() const { return Poly(c_); }

    bool is_zero() const;
    bool is_rational() const;

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const Rational& s, const FieldElement& a);
    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement pow(unsigned e) const;
    FieldElement inverse() const;

    Rational trace() const;
    Rational norm() const;
    /* Column j holds the coordinates of a * theta^j. */
    QMatrix mult_matrix() const;
    Poly charpoly() const;
    Poly minpoly() const;
    /* Degree of Q(a) over Q. */
    int degree() const;

private:
    Field k_;
    std::vector<Rational> c_;
};

void require_same_field(const FieldElement& a, const FieldElement& b);

/* p(a) */
FieldElement evaluate(const Poly& p, const FieldElement& a);

/* Certified complex embeddings. Roots are ordered: real roots ascending,
 * then the upper half-plane roots (by real part), then their conjugates in
 * the same order. */
struct EmbeddingSet {
    Field field;
    std::vector<Ball> roots;
    long precision_bits = 0;
    int real_count = 0;

    int pair_count() const { return (static_cast<int>(roots.size()) - real_count) / 2; }
    /* Index of the complex-conjugate embedding. */
    std::size_t conj_index(std::size_t k) const;
};

EmbeddingSet compute_embeddings(const Field& k, long precision_bits);
EmbeddingSet refine_embeddings(const EmbeddingSet& e, long precision_bits);

/* Ball containing phi_k(a). */
Ball embed(const FieldElement& a, const EmbeddingSet& e, std::size_t k);

Ball ball_inverse(const Ball& b, long prec);

enum class InterpStatus { Found, NoElement, NeedPrecision };

struct Interpolation {
    InterpStatus status = InterpStatus::NoElement;
    FieldElement element;
};

/* Looks for the element a with phi_k(a) in targets[k] for every k, under the
 * assumption that scale * a has integral power-basis coordinates. A Found
 * result is only a candidate; callers verify it exactly. */
Interpolation interpolate(const EmbeddingSet& e, const std::vector<Ball>& targets, const Integer& scale);

/* Z-lattice of full rank in a number field: rows of `basis` over `den`. */
class OrderBasis {
public:
    /* Validates: full rank, contains 1, closed under multiplication. */
    static OrderBasis create(const Field& k, const ZMatrix& basis, const Integer& den);
    /* Z[theta]. */
    static OrderBasis equation_order(const Field& k);
    /* Lattice spanned by the given elements, without the ring checks. */
    static OrderBasis lattice(const Field& k, const std::vector<FieldElement>& gens);

    const Field& field() const { return k_; }
    const ZMatrix& basis() const { return basis_; }
    const Integer& den() const { return den_; }
    std::size_t rank() const { return basis_.rows(); }

    FieldElement element(std::size_t i) const;
    /* Element with the given integer coordinates in this basis. */
    FieldElement combine(const std::vector<Integer>& x) const;
    /* Rational coordinates in this basis (full-rank lattices only). */
    std::vector<Rational> coords(const FieldElement& a) const;
    bool contains(const FieldElement& a) const;

private:
    Field k_;
    ZMatrix basis_;
    Integer den_ = 1;
    QMatrix inv_;
};

/* det(Tr(e_i e_j)); the basis must be a ring. */
Integer order_discriminant(const OrderBasis& o);

/* Exact Gram matrix Tr(e_i e_j) of any lattice basis. */
QMatrix trace_gram(const std::vector<FieldElement>& basis);

}  // namespace cmbound
