#pragma once

#include <array>
#include <string>
#include <vector>

#include "cmbound/linalg.hpp"
#include "cmbound/number_field.hpp"
#include "cmbound/poly.hpp"

namespace cmbound {

/* (a, b | Q): i^2 = a, j^2 = b, ij = -ji = k. */
struct QuatAlgebra {
    Integer p;
    Integer a, b;

    /* Standard presentation of B_{p,inf}, with the ramification verified. */
    static QuatAlgebra for_prime(const Integer& p);
    /* Validates a, b < 0 and that the algebra ramifies exactly at p and infinity. */
    static QuatAlgebra create(const Integer& p, const Integer& a, const Integer& b);

    /* Finite primes where (a, b)_l = -1. */
    std::vector<Integer> ramified_primes() const;

    friend bool operator==(const QuatAlgebra& x, const QuatAlgebra& y)
    {
        return x.p == y.p && x.a == y.a && x.b == y.b;
    }
};

class QuatElement {
public:
    QuatElement() = default;
    QuatElement(const QuatAlgebra& alg, std::array<Rational, 4> coords);

    static QuatElement scalar(const QuatAlgebra& alg, const Rational& c);
    static QuatElement basis(const QuatAlgebra& alg, int k);  // 1, i, j, k

    const QuatAlgebra& algebra() const { return alg_; }
    const std::array<Rational, 4>& coords() const { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const;
    bool is_scalar() const;

    QuatElement operator-() const;
    friend QuatElement operator+(const QuatElement& x, const QuatElement& y);
    friend QuatElement operator-(const QuatElement& x, const QuatElement& y);
    friend QuatElement operator*(const QuatElement& x, const QuatElement& y);
    friend QuatElement operator*(const Rational& s, const QuatElement& x);
    friend bool operator==(const QuatElement& x, const QuatElement& y);
    friend bool operator!=(const QuatElement& x, const QuatElement& y) { return !(x == y); }

    QuatElement conj() const;
    Rational norm() const;
    Rational trace() const;
    QuatElement inverse() const;

private:
    QuatAlgebra alg_;
    std::array<Rational, 4> c_;
};

std::string to_string(const QuatElement& x);

/* Full-rank lattice in a quaternion algebra given by 4 elements. */
class QuatOrder {
public:
    static QuatOrder create(const QuatAlgebra& alg, std::vector<QuatElement> basis);

    const QuatAlgebra& algebra() const { return alg_; }
    const std::vector<QuatElement>& basis() const { return basis_; }

    std::vector<Rational> coords(const QuatElement& x) const;
    bool contains(const QuatElement& x) const;
    QuatElement combine(const std::vector<Integer>& x) const;
    /* Gram matrix of the reduced norm: N(sum x_i e_i) = x^T G x. */
    QMatrix norm_gram() const;
    /* det(Tr(e_i e_j^v)). */
    Rational trace_discriminant() const;
    bool is_order() const;

    /* Every nonzero element with N(x) <= bound. */
    std::vector<QuatElement> elements_up_to(const Rational& bound) const;

private:
    QuatAlgebra alg_;
    std::vector<QuatElement> basis_;
    QMatrix inv_;
};

/* A maximal order of B_{p,inf} in the standard presentation. */
QuatOrder maximal_order(const Integer& p);

struct CommuteReport {
    Rational norms_product;
    Rational threshold;  // p / 4
    bool must_commute = false;
    bool do_commute = false;
    bool contradiction = false;
};

CommuteReport commute_criterion(const QuatElement& x, const QuatElement& y, const QuatOrder& order);

using QuatMatrix = std::array<std::array<QuatElement, 3>, 3>;

QuatMatrix quat_matrix_mul(const QuatMatrix& x, const QuatMatrix& y);
/* Conjugate transpose. */
QuatMatrix quat_matrix_dual(const QuatMatrix& x);

struct EmbeddingCertificate {
    QuatAlgebra algebra;
    QuatMatrix M;
    Integer alpha;
    QuatElement beta;
    Integer gamma;
    Integer n;
    Integer B;
    Poly f;
};

/* Entries of M: x, a, b in the first row, c and d with M[1][2] = c/n, M[2][2] = d/n. */
struct CertificateEntries {
    QuatElement x, a, b, c, d;
};

/* Checks n = alpha gamma - N(beta) > 0 and alpha, gamma > 0; the column shape of M
 * is reported by verify_certificate instead. */
CertificateEntries certificate_entries(const EmbeddingCertificate& cert);

/* The polarization matrix [[1,0,0],[0,alpha,beta],[0,beta^v,gamma]]. */
QuatMatrix polarization_matrix(const EmbeddingCertificate& cert);

struct CheckResult {
    std::string check;
    bool pass = false;
    std::string details;
};

struct CheckReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    const CheckResult& operator[](const std::string& name) const;
};

/* Runs every check (no short-circuit): shape, polynomial, rosati, identities,
 * trace_d, trace_decomposition, bounds, commuting. */
CheckReport verify_certificate(const EmbeddingCertificate& cert);

/* Certificate with the required identities built from x, beta, d (trace zero),
 * alpha > 0 and gamma > N(beta)/alpha. f is left empty. */
EmbeddingCertificate make_certificate(const QuatAlgebra& alg, const QuatElement& x, const Integer& alpha,
                                      const QuatElement& beta, const Integer& gamma, const QuatElement& d);

/* Eigen-splitting of M with M^2 = -delta I over Q(sqrt(-delta)). */
struct SplitResult {
    Field field;  // Q[s]/(s^2 + delta)
    int m_plus = 0;
    int m_minus = 0;
    /* 3x3; columns are eigenvectors for +s, then for -s. */
    std::vector<std::vector<FieldElement>> P;
};

using QuadMatrix = std::vector<std::vector<FieldElement>>;

SplitResult conjugation_split(const QuadMatrix& M, const Integer& delta);

QuadMatrix quad_matrix_mul(const QuadMatrix& x, const QuadMatrix& y);
/* Inverse of a square matrix over a number field; throws when singular. */
QuadMatrix quad_matrix_inverse(const QuadMatrix& m);

}  // namespace cmbound
