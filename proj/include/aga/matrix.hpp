#pragma once

// Minimal dense matrix for the low-dimensional games handled here (d <= ~50).

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace aga {

using Vec = std::vector<double>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Vec apply(std::span<const double> x) const {
        if (x.size() != cols_) throw std::invalid_argument("matrix/vector size mismatch");
        Vec y(rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * x[c];
            y[r] = s;
        }
        return y;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] + b.a_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] - b.a_[i];
        return m;
    }
    friend Matrix operator*(double k, const Matrix& a) {
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = k * a.a_[i];
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : a_)
            if (std::abs(x) > m) m = std::abs(x);
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec a_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace aga
