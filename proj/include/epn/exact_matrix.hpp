#pragma once

// Dense matrices over Q(sqrt2, sqrt3) with exact Gaussian elimination.
// Desk-scale only (N <= ~30); no pivoting strategy beyond first nonzero.

#include "epn/exact.hpp"

#include <Eigen/Dense>
#include <vector>

namespace epn {

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    ExactScalar& operator()(int i, int j) { return data_[i * cols_ + j]; }
    const ExactScalar& operator()(int i, int j) const { return data_[i * cols_ + j]; }

    static ExactMatrix identity(int n) {
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = ExactScalar(1);
        return m;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        ExactMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }
    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        ExactMatrix c(a.rows_, a.cols_);
        for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i];
        return c;
    }
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
        ExactMatrix c(a.rows_, a.cols_);
        for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
        return c;
    }
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd m(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).value();
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<ExactScalar> data_;
};

/// Rank by exact row reduction.
int exact_rank(ExactMatrix m);

/// Determinant (square input) by exact elimination.
ExactScalar exact_det(ExactMatrix m);

/// Columns form a basis of the right null space.
ExactMatrix exact_nullspace(ExactMatrix m);

} // namespace epn
