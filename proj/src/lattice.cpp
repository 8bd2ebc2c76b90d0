#include "cmbound/lattice.hpp"

#include <algorithm>

#include "cmbound/error.hpp"

namespace cmbound {

Rational quad_form(const QMatrix& g, const std::vector<Integer>& x)
{
    Rational q(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        Rational row(0);
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0)
                row += g(i, j) * x[j];
        q += row * x[i];
    }
    return q;
}

namespace {

Integer round_nearest(const Rational& r)
{
    return floor(r + Rational(1, 2));
}

void gso(const QMatrix& g, QMatrix& mu, std::vector<Rational>& b)
{
    std::size_t n = g.rows();
    mu = QMatrix(n, n);
    b.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rational s = g(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= mu(j, k) * mu(i, k) * b[k];
            mu(i, j) = s / b[j];
        }
        Rational s = g(i, i);
        for (std::size_t k = 0; k < i; ++k)
            s -= mu(i, k) * mu(i, k) * b[k];
        b[i] = s;
        if (b[i] <= 0)
            fail(ErrorKind::Internal, "Gram matrix is not positive definite");
    }
}

/* Row operation b_k <- b_k - r b_j on both U and the Gram matrix. */
void reduce_row(QMatrix& g, ZMatrix& u, std::size_t k, std::size_t j, const Integer& r)
{
    std::size_t n = g.rows();
    for (std::size_t c = 0; c < n; ++c)
        u(k, c) -= r * u(j, c);
    Rational rq(r);
    Rational gkk = g(k, k) - 2 * rq * g(k, j) + rq * rq * g(j, j);
    for (std::size_t c = 0; c < n; ++c)
        if (c != k)
            g(k, c) -= rq * g(j, c);
    g(k, k) = gkk;
    for (std::size_t c = 0; c < n; ++c)
        g(c, k) = g(k, c);
}

void swap_rows(QMatrix& g, ZMatrix& u, std::size_t a, std::size_t b)
{
    std::size_t n = g.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::swap(u(a, c), u(b, c));
        std::swap(g(a, c), g(b, c));
    }
    for (std::size_t c = 0; c < n; ++c)
        std::swap(g(c, a), g(c, b));
}

}  // namespace

ZMatrix lll_gram(const QMatrix& gram)
{
    std::size_t n = gram.rows();
    ZMatrix u = ZMatrix::identity(n);
    if (n < 2)
        return u;
    QMatrix g = gram;
    QMatrix mu;
    std::vector<Rational> b;
    const Rational delta(3, 4);
    std::size_t k = 1;
    std::size_t guard = 0;
    while (k < n) {
        if (++guard > 100000)
            fail(ErrorKind::Internal, "LLL did not terminate");
        gso(g, mu, b);
        for (std::size_t j = k; j-- > 0;) {
            Integer r = round_nearest(mu(k, j));
            if (r != 0) {
                reduce_row(g, u, k, j, r);
                gso(g, mu, b);
            }
        }
        if (b[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * b[k - 1]) {
            ++k;
        } else {
            swap_rows(g, u, k, k - 1);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return u;
}

namespace {

struct Enumerator {
    std::size_t n;
    QMatrix q;  // q(i,i) > 0, q(i,j) for j > i
    const LatticeVisitor& visit;
    const ZMatrix& u;
    std::vector<Integer> y;
    bool stop = false;

    void run(std::size_t i, const Rational& remaining, const Rational& used)
    {
        Rational c(0);
        for (std::size_t j = i + 1; j < n; ++j)
            if (y[j] != 0)
                c -= q(i, j) * y[j];
        Rational r = sqrt_upper(remaining / q(i, i), 8);
        Integer lo = ceil(c - r) - 1, hi = floor(c + r) + 1;
        for (Integer x = lo; x <= hi && !stop; ++x) {
            Rational t = Rational(x) - c;
            Rational part = q(i, i) * t * t;
            if (part > remaining)
                continue;
            y[i] = x;
            if (i == 0) {
                bool zero = std::all_of(y.begin(), y.end(), [](const Integer& v) { return v == 0; });
                if (zero)
                    continue;
                std::vector<Integer> out(n);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        if (y[a] != 0)
                            out[b] += y[a] * u(a, b);
                if (!visit(out, used + part))
                    stop = true;
            } else {
                run(i - 1, remaining - part, used + part);
            }
        }
        y[i] = 0;
    }
};

}  // namespace

void enumerate_short(const QMatrix& gram, const Rational& bound, const LatticeVisitor& visit)
{
    std::size_t n = gram.rows();
    if (n == 0 || bound < 0)
        return;
    ZMatrix u = lll_gram(gram);
    QMatrix g = to_rational(u) * gram * to_rational(u).transpose();
    QMatrix q = g;
    for (std::size_t i = 0; i < n; ++i) {
        if (q(i, i) <= 0)
            fail(ErrorKind::Internal, "Gram matrix is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) {
            q(j, i) = q(i, j);
            q(i, j) = q(i, j) / q(i, i);
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l)
                q(k, l) -= q(k, i) * q(i, l);
    }
    Enumerator e{n, q, visit, u, std::vector<Integer>(n)};
    e.run(n - 1, bound, Rational(0));
}

std::vector<std::vector<Integer>> short_vectors(const QMatrix& gram, const Rational& bound)
{
    std::vector<std::vector<Integer>> out;
    enumerate_short(gram, bound, [&](const std::vector<Integer>& x, const Rational&) {
        out.push_back(x);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cmbound
