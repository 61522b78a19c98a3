#pragma once

// Negativity and log-negativity of Schmidt-ladder states, computed three ways:
//   * closed form  eps = 2 log2(sum_n c_n)   (valid for normalized ladders),
//   * analytic partial-transpose spectrum from the 2x2 block structure,
//   * dense brute-force oracle: build rho = |psi><psi|, partially transpose
//     mode b, diagonalize with cyclic Jacobi.
// Plus the entanglement ratio against the two-mode squeezed vacuum, emitted
// both as the literal formula (sum c_n e^{-r})^2 and as the ratio of the two
// log-negativities.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "qvx/fock.hpp"
#include "qvx/jacobi.hpp"

namespace qvx {

inline constexpr std::size_t kDMax = 1600;            // dim_a * dim_b cap for the dense oracle
inline constexpr double kNegEigenFloor = -1e-10;      // eigenvalues above this count as zero

struct EntanglementReport {
    double sum_c = 0.0;           // sum_n c_n
    double negativity = 0.0;      // N, modulus of the negative PT eigenvalue sum
    double log_negativity = 0.0;  // eps = log2(1 + 2N), base 2
    double ratio_eq16 = 0.0;      // (sum_n c_n e^{-r})^2
    std::optional<double> ratio_of_logs;  // eps / eps_tmsv; empty at r = 0
    double tail_rel = 0.0;        // truncation contribution bound
};

struct DenseTwoModeState {
    std::size_t dim_a = 0, dim_b = 0;
    std::vector<std::complex<double>> amps;  // dim_a x dim_b, row-major, <m,n|psi>

    std::complex<double>& at(std::size_t m, std::size_t n) { return amps[m * dim_b + n]; }
    std::complex<double> at(std::size_t m, std::size_t n) const { return amps[m * dim_b + n]; }
};

/// Expand a ladder state into an explicit (renormalized) two-mode amplitude
/// matrix: amps[n+k][n] = c_n e^{i n theta}.
inline DenseTwoModeState densify(const SchmidtLadderState& state, std::size_t dim) {
    const std::size_t need = state.mags.size() + std::size_t(state.offset_k);
    if (dim < need)
        throw DimensionError("dense dimension too small for the stored coefficients");
    DenseTwoModeState d;
    d.dim_a = dim;
    d.dim_b = dim;
    d.amps.assign(dim * dim, {0.0, 0.0});
    double ss = 0.0;
    for (double c : state.mags) ss += c * c;
    const double inv = 1.0 / std::sqrt(ss);
    for (std::size_t n = 0; n < state.mags.size(); ++n) {
        const double phase = double(n) * state.theta;
        d.at(n + state.offset_k, n) =
            state.mags[n] * inv * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return d;
}

struct PtOracleResult {
    double negativity = 0.0;
    std::vector<double> spectrum;  // full PT spectrum, ascending
};

/// Brute-force negativity: rho = |psi><psi| over the product basis, partial
/// transpose on mode b, dense Jacobi eigensolve. Independent of the ladder
/// closed forms; this is the oracle everything else is checked against.
inline PtOracleResult pt_negativity_oracle(const DenseTwoModeState& dense) {
    const std::size_t D = dense.dim_a * dense.dim_b;
    if (D > kDMax) throw SizeError("dense oracle limited to dim_a*dim_b <= 1600");

    // rho^PT[(m,n),(p,q)] = psi_{m,q} conj(psi_{p,n})  (transpose on mode b).
    const std::size_t db = dense.dim_b;
    std::vector<std::complex<double>> pt(D * D);
    bool real_valued = true;
    for (std::size_t m = 0; m < dense.dim_a; ++m)
        for (std::size_t n = 0; n < db; ++n)
            for (std::size_t p = 0; p < dense.dim_a; ++p)
                for (std::size_t q = 0; q < db; ++q) {
                    const auto v = dense.at(m, q) * std::conj(dense.at(p, n));
                    pt[(m * db + n) * D + (p * db + q)] = v;
                    if (std::abs(v.imag()) > 1e-14) real_valued = false;
                }

    std::vector<double> eig;
    if (real_valued) {
        SymMatrix s(D);
        for (std::size_t i = 0; i < D * D; ++i) s.a[i] = pt[i].real();
        eig = jacobi_eigenvalues(std::move(s));
    } else {
        // Hermitian case: real symmetric embedding [[Re, -Im], [Im, Re]]
        // doubles every eigenvalue; keep one representative per pair.
        SymMatrix s(2 * D);
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < D; ++j) {
                const auto v = pt[i * D + j];
                s.at(i, j) = v.real();
                s.at(i + D, j + D) = v.real();
                s.at(i + D, j) = v.imag();
                s.at(i, j + D) = -v.imag();
            }
        std::vector<double> doubled = jacobi_eigenvalues(std::move(s));
        std::sort(doubled.begin(), doubled.end());
        eig.reserve(D);
        for (std::size_t i = 0; i < doubled.size(); i += 2)
            eig.push_back(0.5 * (doubled[i] + doubled[i + 1]));
    }

    std::sort(eig.begin(), eig.end());
    PtOracleResult out;
    out.spectrum = std::move(eig);
    for (double l : out.spectrum)
        if (l < kNegEigenFloor) out.negativity -= l;
    return out;
}

struct SpectralLine {
    double eigenvalue = 0.0;
    std::size_t multiplicity = 0;
};

/// Analytic PT spectrum from the block structure: +c_n^2 for each diagonal
/// pair and +-c_m c_n for each unordered pair m < n.
inline std::vector<SpectralLine> pt_spectrum_structural(const SchmidtLadderState& state) {
    const auto& c = state.mags;
    std::vector<SpectralLine> lines;
    lines.reserve(c.size() * c.size());
    for (std::size_t n = 0; n < c.size(); ++n) lines.push_back({c[n] * c[n], 1});
    for (std::size_t m = 0; m < c.size(); ++m)
        for (std::size_t n = m + 1; n < c.size(); ++n) {
            lines.push_back({c[m] * c[n], 1});
            lines.push_back({-c[m] * c[n], 1});
        }
    return lines;
}

/// Closed-form report: eps = 2 log2(sum c_n), negativity back-computed.
inline EntanglementReport log_negativity_closed(const SchmidtLadderState& state) {
    const auto ls = log_sum_coefficients(state);
    EntanglementReport rep;
    rep.sum_c = std::exp(ls.log_sum);
    rep.log_negativity = 2.0 * ls.log_sum / std::numbers::ln2;
    rep.negativity = 0.5 * std::expm1(2.0 * ls.log_sum);  // ((sum c)^2 - 1)/2
    rep.tail_rel = ls.tail_rel;
    const double r = state.params.r;
    rep.ratio_eq16 = std::exp(2.0 * (ls.log_sum - r));
    if (r > 0.0) rep.ratio_of_logs = ls.log_sum / r;
    return rep;
}

struct RatioResult {
    double ratio_eq16 = 1.0;
    std::optional<double> ratio_of_logs;  // empty at r = 0
};

/// Entanglement relative to the TMSV at the same r: the literal formula
/// (sum c_n e^{-r})^2 and the ratio of the two log-negativities (the TMSV
/// log-negativity is 2r/ln 2, so the latter is log(sum c_n)/r).
inline RatioResult entanglement_ratio(const SchmidtLadderState& state) {
    const auto ls = log_sum_coefficients(state);
    RatioResult out;
    out.ratio_eq16 = std::exp(2.0 * (ls.log_sum - state.params.r));
    if (state.params.r > 0.0) out.ratio_of_logs = ls.log_sum / state.params.r;
    return out;
}

}  // namespace qvx
