#pragma once

#include <vector>

#include "wgeo/errors.hpp"

namespace wgeo {

// Dense matrix over an exact field-like type (Rational or RatFunc).
// T must provide +, -, *, /, unary -, ==, is_zero().
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int r, int c, const T& fill) : rows_(r), cols_(c), d_(static_cast<std::size_t>(r) * c, fill) {}

    static Matrix identity(int n, const T& one, const T& zero) {
        Matrix m(n, n, zero);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& at(int i, int j) { return d_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& at(int i, int j) const { return d_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : d_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.d_) x = -x;
        return r;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix r = a;
        for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] = r.d_[i] + b.d_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix r = a;
        for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] = r.d_[i] - b.d_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.rows_, "ShapeMismatch", "matrix product shape mismatch");
        require(a.rows_ > 0 && b.cols_ > 0 && a.cols_ > 0, "ShapeMismatch", "empty matrix product");
        Matrix r(a.rows_, b.cols_, a.d_[0] - a.d_[0]);  // zero of the right kind
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const T& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + aik * bkj;
                }
            }
        return r;
    }
    Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
    Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

    Matrix scaled(const T& c) const {
        Matrix r = *this;
        for (auto& x : r.d_) x = x * c;
        return r;
    }

    Matrix transposed() const {
        require(rows_ > 0 && cols_ > 0, "ShapeMismatch", "transpose of empty matrix");
        Matrix r(cols_, rows_, d_[0]);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // Gauss-Jordan inverse over the entry field
    Matrix inverse() const {
        require(rows_ == cols_, "NonsquareMatrix", "inverse of nonsquare matrix");
        int n = rows_;
        require(n > 0, "ShapeMismatch", "inverse of empty matrix");
        T zero = d_[0] - d_[0];
        Matrix work = *this;
        Matrix inv = identity(n, unit_like(d_[0]), zero);
        for (int c = 0; c < n; ++c) {
            int p = -1;
            for (int i = c; i < n; ++i)
                if (!work.at(i, c).is_zero()) {
                    p = i;
                    break;
                }
            require(p >= 0, "SingularMatrix", "matrix is singular");
            work.swap_rows(c, p);
            inv.swap_rows(c, p);
            T pv = work.at(c, c);
            for (int j = 0; j < n; ++j) {
                work.at(c, j) = work.at(c, j) / pv;
                inv.at(c, j) = inv.at(c, j) / pv;
            }
            for (int i = 0; i < n; ++i) {
                if (i == c || work.at(i, c).is_zero()) continue;
                T f = work.at(i, c);
                for (int j = 0; j < n; ++j) {
                    work.at(i, j) = work.at(i, j) - f * work.at(c, j);
                    inv.at(i, j) = inv.at(i, j) - f * inv.at(c, j);
                }
            }
        }
        return inv;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

    std::vector<T> row(int i) const {
        std::vector<T> r;
        r.reserve(cols_);
        for (int j = 0; j < cols_; ++j) r.push_back(at(i, j));
        return r;
    }

private:
    void check_same_shape(const Matrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "ShapeMismatch", "matrix shape mismatch");
    }
    int rows_, cols_;
    std::vector<T> d_;
};

} // namespace wgeo
