#pragma once

// Cyclic Jacobi eigensolver for dense real symmetric matrices, with exact
// deflation of all-zero rows/columns before the sweeps. Matrices arising from
// partial transposes of truncated pure states are mostly empty, so deflation
// routinely shrinks the working block by an order of magnitude.

#include <cmath>
#include <cstddef>
#include <vector>

#include "qvx/errors.hpp"

namespace qvx {

// Row-major square matrix, minimal on purpose.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // n*n, row-major

    explicit SymMatrix(std::size_t dim = 0) : n(dim), a(dim * dim, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

namespace detail {

inline double offdiag_frobenius(const SymMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j) s += 2.0 * m.at(i, j) * m.at(i, j);
    return std::sqrt(s);
}

// One Jacobi rotation zeroing a_pq; updates rows/columns p and q in place.
inline void rotate(SymMatrix& m, std::size_t p, std::size_t q) {
    const double apq = m.at(p, q);
    if (apq == 0.0) return;
    const double tau = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const double app = m.at(p, p), aqq = m.at(q, q);
    m.at(p, p) = app - t * apq;
    m.at(q, q) = aqq + t * apq;
    m.at(p, q) = 0.0;
    m.at(q, p) = 0.0;
    double* rp = &m.a[p * m.n];
    double* rq = &m.a[q * m.n];
    for (std::size_t i = 0; i < m.n; ++i) {
        if (i == p || i == q) continue;
        const double aip = rp[i], aiq = rq[i];
        rp[i] = c * aip - s * aiq;
        rq[i] = s * aip + c * aiq;
        m.a[i * m.n + p] = rp[i];
        m.a[i * m.n + q] = rq[i];
    }
}

}  // namespace detail

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi sweeps. Returns the
/// unsorted spectrum; throws ConvergenceError if the off-diagonal Frobenius
/// norm is still above `threshold` after `max_sweeps` sweeps.
inline std::vector<double> jacobi_eigenvalues(SymMatrix m, int max_sweeps = 30,
                                              double threshold = 1e-12) {
    const std::size_t n = m.n;
    if (n == 0) return {};

    // Deflate rows/columns that are exactly zero (diagonal included): each
    // contributes an exact eigenvalue 0 and never mixes under rotations.
    std::vector<std::size_t> live;
    live.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < n && zero; ++j) zero = (m.at(i, j) == 0.0);
        if (!zero) live.push_back(i);
    }
    SymMatrix w(live.size());
    for (std::size_t i = 0; i < live.size(); ++i)
        for (std::size_t j = 0; j < live.size(); ++j) w.at(i, j) = m.at(live[i], live[j]);

    const std::size_t nw = w.n;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const double off = detail::offdiag_frobenius(w);
        if (off <= threshold) break;
        // Skip rotations on entries already negligible this sweep.
        const double skip = off / (double(nw) * double(nw) + 1.0) * 1e-4;
        for (std::size_t p = 0; p + 1 < nw; ++p)
            for (std::size_t q = p + 1; q < nw; ++q)
                if (std::abs(w.at(p, q)) > skip) detail::rotate(w, p, q);
        if (sweep == max_sweeps - 1 && detail::offdiag_frobenius(w) > threshold)
            throw ConvergenceError("Jacobi eigensolver exceeded its sweep budget");
    }

    std::vector<double> eig(n, 0.0);
    for (std::size_t i = 0; i < nw; ++i) eig[i] = w.at(i, i);
    return eig;
}

}  // namespace qvx
