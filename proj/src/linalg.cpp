#include "cmbound/linalg.hpp"

#include <utility>

#include "cmbound/error.hpp"

namespace cmbound {

QMatrix to_rational(const ZMatrix& m)
{
    QMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rational(m(i, j));
    return r;
}

namespace {

/* In-place reduced row echelon form; returns pivot columns. */
std::vector<std::size_t> rref(QMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        Rational inv = Rational(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rational det(QMatrix m)
{
    if (m.rows() != m.cols())
        fail(ErrorKind::Internal, "determinant of a non-square matrix");
    std::size_t n = m.rows();
    Rational d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0)
            ++p;
        if (p == n)
            return Rational(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0)
                continue;
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

std::size_t rank(QMatrix m)
{
    return rref(m).size();
}

std::optional<QMatrix> inverse(const QMatrix& m)
{
    std::size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        return std::nullopt;
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

std::optional<std::vector<Rational>> solve_left(const QMatrix& a, const std::vector<Rational>& b)
{
    // x A = b  <=>  A^T x^T = b^T
    std::size_t n = a.rows();
    QMatrix aug(a.cols(), n + 1);
    for (std::size_t i = 0; i < a.cols(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(j, i);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == n)
        return std::nullopt;
    if (piv.size() < n)
        return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < piv.size(); ++r)
        x[piv[r]] = aug(r, n);
    return x;
}

QMatrix kernel(const QMatrix& a)
{
    QMatrix m = a;
    auto piv = rref(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : piv)
        is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(a.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    QMatrix k(basis.size(), a.cols());
    for (std::size_t i = 0; i < basis.size(); ++i)
        k.set_row(i, basis[i]);
    return k;
}

Poly charpoly(const QMatrix& a)
{
    // Faddeev-LeVerrier: c_{n-k} = -(1/k) tr(A M_k), M_{k+1} = A M_k + c_{n-k} I
    std::size_t n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    QMatrix mk = QMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        QMatrix am = a * mk;
        Rational tr(0);
        for (std::size_t i = 0; i < n; ++i)
            tr += am(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
        mk = am;
        for (std::size_t i = 0; i < n; ++i)
            mk(i, i) += c[n - k];
    }
    return Poly(std::move(c));
}

ZMatrix clear_row_denominators(const QMatrix& m)
{
    ZMatrix z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l(1);
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational v = m(i, j) * l;
            z(i, j) = v.get_num();
        }
    }
    return z;
}

ZMatrix integer_kernel(const ZMatrix& a)
{
    // Column operations A -> A U with U unimodular; the columns of U that end
    // up under zero columns of A U span the integer kernel.
    std::size_t m = a.rows(), n = a.cols();
    ZMatrix w = a;
    ZMatrix u = ZMatrix::identity(n);
    std::size_t col = 0;  // first column not yet fixed as a pivot column
    for (std::size_t r = 0; r < m && col < n; ++r) {
        // gcd-combine columns col..n-1 on row r into column col
        for (std::size_t j = col + 1; j < n; ++j) {
            if (w(r, j) == 0)
                continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), w(r, col).get_mpz_t(),
                       w(r, j).get_mpz_t());
            Integer p = w(r, col) / g;
            Integer q = w(r, j) / g;
            // [col, j] <- [s*col + t*j, -q*col + p*j], determinant s*p + t*q = 1
            for (std::size_t i = 0; i < m; ++i) {
                Integer x = w(i, col), y = w(i, j);
                w(i, col) = s * x + t * y;
                w(i, j) = -q * x + p * y;
            }
            for (std::size_t i = 0; i < n; ++i) {
                Integer x = u(i, col), y = u(i, j);
                u(i, col) = s * x + t * y;
                u(i, j) = -q * x + p * y;
            }
        }
        if (w(r, col) != 0)
            ++col;
    }
    ZMatrix k(n - col, n);
    for (std::size_t j = col; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            k(j - col, i) = u(i, j);
    return hnf(k);
}

ZMatrix saturate(const QMatrix& v)
{
    // Z^n intersected with span(rows of v) = integer kernel of a matrix whose
    // kernel is exactly that span.
    QMatrix perp = kernel(v);  // rows span the orthogonal complement
    if (perp.rows() == 0)
        return ZMatrix::identity(v.cols());
    return integer_kernel(clear_row_denominators(perp));
}

ZMatrix hnf(ZMatrix m)
{
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // bring gcd of column c (rows r..) into row r
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m(i, c) == 0)
                continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m(r, c).get_mpz_t(),
                       m(i, c).get_mpz_t());
            Integer p = m(r, c) / g;
            Integer q = m(i, c) / g;
            for (std::size_t j = 0; j < cols; ++j) {
                Integer x = m(r, j), y = m(i, j);
                m(r, j) = s * x + t * y;
                m(i, j) = -q * x + p * y;
            }
        }
        if (m(r, c) == 0)
            continue;
        if (m(r, c) < 0)
            for (std::size_t j = 0; j < cols; ++j)
                m(r, j) = -m(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Integer f;
            mpz_fdiv_q(f.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
            if (f != 0)
                for (std::size_t j = 0; j < cols; ++j)
                    m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    ZMatrix out(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            out(i, j) = m(i, j);
    return out;
}

}  // namespace cmbound
