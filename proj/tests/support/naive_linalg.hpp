#pragma once

// Independent brute-force linear algebra used only as a test oracle. Shares no
// code with the library implementation: forward elimination only, bottom-up
// pivot choice, no normalization, no echelon conventions.

#include <homdec/matrix.hpp>

namespace homdec::oracle {

// Rank via destructive forward elimination with the *last* usable row as pivot.
template <Field F>
std::size_t naive_rank(Matrix<F> m) {
    std::size_t r = 0;
    std::vector<bool> used(m.rows(), false);
    for (std::size_t col = 0; col < m.cols(); ++col) {
        std::size_t pick = m.rows();
        for (std::size_t i = m.rows(); i-- > 0;) {
            if (!used[i] && !m.at(i, col).is_zero()) { pick = i; break; }
        }
        if (pick == m.rows()) continue;
        used[pick] = true;
        ++r;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == pick || used[i] || m.at(i, col).is_zero()) continue;
            F c = m.at(i, col) / m.at(pick, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - c * m.at(pick, j);
        }
    }
    return r;
}

// Consistency of m x = b by the rank criterion.
template <Field F>
bool naive_solvable(const Matrix<F>& m, const Vec<F>& b) {
    Matrix<F> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    return naive_rank(aug) == naive_rank(m);
}

}  // namespace homdec::oracle
