#include "epn/exact_matrix.hpp"

namespace epn {

namespace {

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(ExactMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(p, j));
        ExactScalar inv = m(row, col).inverse();
        for (int j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            ExactScalar f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

int exact_rank(ExactMatrix m) { return static_cast<int>(rref(m).size()); }

ExactScalar exact_det(ExactMatrix m) {
    const int n = m.rows();
    ExactScalar det(1);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (!m(i, col).is_zero()) { p = i; break; }
        if (p < 0) return ExactScalar(0);
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(m(col, j), m(p, j));
            det = -det;
        }
        det *= m(col, col);
        ExactScalar inv = m(col, col).inverse();
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            ExactScalar f = m(i, col) * inv;
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

ExactMatrix exact_nullspace(ExactMatrix m) {
    const int cols = m.cols();
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;

    ExactMatrix basis(cols, cols - static_cast<int>(pivots.size()));
    int k = 0;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        basis(free, k) = ExactScalar(1);
        for (size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(static_cast<int>(r), free);
        ++k;
    }
    return basis;
}

} // namespace epn
