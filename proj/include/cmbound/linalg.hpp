#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cmbound/poly.hpp"
#include "cmbound/rational.hpp"

namespace cmbound {

/* Dense row-major matrix. */
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    void set_row(std::size_t i, const std::vector<T>& v)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = v[j];
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r(i, j) += x * b(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        for (std::size_t i = 0; i < a.a_.size(); ++i)
            a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        for (std::size_t i = 0; i < a.a_.size(); ++i)
            a.a_[i] -= b.a_[i];
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

QMatrix to_rational(const ZMatrix& m);

Rational det(QMatrix m);
std::size_t rank(QMatrix m);
std::optional<QMatrix> inverse(const QMatrix& m);
/* Solves x * A = b for a row vector x (A square, invertible). */
std::optional<std::vector<Rational>> solve_left(const QMatrix& a, const std::vector<Rational>& b);
/* Rows form a basis of {x : A x = 0}. */
QMatrix kernel(const QMatrix& a);

/* Characteristic polynomial det(xI - A) (monic). */
Poly charpoly(const QMatrix& a);

/* Rows form a Z-basis of {x in Z^n : A x = 0}. */
ZMatrix integer_kernel(const ZMatrix& a);
/* Rows form a Z-basis of Z^n intersected with the Q-span of the rows of v. */
ZMatrix saturate(const QMatrix& v);
/* Row Hermite normal form; zero rows dropped. */
ZMatrix hnf(ZMatrix m);

/* Clears denominators row by row: returns an integer matrix with the same row spans. */
ZMatrix clear_row_denominators(const QMatrix& m);

}  // namespace cmbound
