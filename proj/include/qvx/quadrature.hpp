#pragma once

// Quadrature-space wavefunctions of Schmidt-ladder states and vortex (phase
// winding) detection. Conventions: a = (x_a + i y_a)/sqrt(2), fields live on
// rectangular (x_a, x_b) grids, loops are traversed counterclockwise in the
// (x_a, x_b) plane with positive winding = increasing phase.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qvx/fock.hpp"

namespace qvx {

inline constexpr int kMMax = 400;          // highest oscillator level
inline constexpr double kGridLimit = 8.0;  // quadrature grid must lie in [-8, 8]
inline constexpr double kMagFloor = 1e-12;

/// Harmonic-oscillator eigenfunction psi_m(x) via the normalized three-term
/// recurrence psi_{m+1} = x sqrt(2/(m+1)) psi_m - sqrt(m/(m+1)) psi_{m-1}.
inline double oscillator_eigenfunction(int m, double x) {
    if (m < 0 || m > kMMax) throw RangeError("oscillator level m out of [0, M_MAX]");
    const double pi_quarter = std::pow(std::numbers::pi, -0.25);
    double prev = 0.0;
    double cur = pi_quarter * std::exp(-0.5 * x * x);
    for (int j = 0; j < m; ++j) {
        const double next =
            x * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(double(j) / (j + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

struct Axis {
    double lo = -4.0, hi = 4.0;
    std::size_t points = 81;

    double step() const { return (hi - lo) / double(points - 1); }
    double at(std::size_t i) const { return lo + double(i) * step(); }
};

struct QuadratureField {
    Axis xa_axis, xb_axis;
    std::vector<std::complex<double>> values;  // row-major: [i_xa * nb + i_xb]
    std::string meta;

    std::complex<double> at(std::size_t ia, std::size_t ib) const {
        return values[ia * xb_axis.points + ib];
    }
    /// Riemann-sum probability mass over the grid.
    double mass() const {
        double s = 0.0;
        for (const auto& v : values) s += std::norm(v);
        return s * xa_axis.step() * xb_axis.step();
    }
};

namespace detail {

inline void check_axis(const Axis& ax) {
    if (ax.points < 2 || !(ax.lo < ax.hi)) throw RangeError("axis needs lo < hi and >= 2 points");
    if (ax.lo < -kGridLimit || ax.hi > kGridLimit)
        throw RangeError("quadrature grid must lie within [-8, 8]");
}

// All oscillator levels 0..m_max at one point, single recurrence pass.
inline std::vector<double> oscillator_column(int m_max, double x) {
    std::vector<double> psi(m_max + 1);
    psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    for (int j = 0; j < m_max; ++j)
        psi[j + 1] = x * std::sqrt(2.0 / (j + 1)) * psi[j] -
                     (j > 0 ? std::sqrt(double(j) / (j + 1)) * psi[j - 1] : 0.0);
    return psi;
}

}  // namespace detail

/// Series evaluation Psi(x_a, x_b) = sum_n c_n e^{i n theta} psi_{n+k}(x_a) psi_n(x_b).
inline QuadratureField wavefunction_series(const SchmidtLadderState& state, Axis xa, Axis xb) {
    detail::check_axis(xa);
    detail::check_axis(xb);
    const int k = state.offset_k;
    const int n_max = int(state.mags.size()) - 1;
    if (n_max + k > kMMax) throw RangeError("state too long for M_MAX oscillator levels");

    std::vector<std::vector<double>> psi_a(xa.points), psi_b(xb.points);
    for (std::size_t i = 0; i < xa.points; ++i)
        psi_a[i] = detail::oscillator_column(n_max + k, xa.at(i));
    for (std::size_t i = 0; i < xb.points; ++i)
        psi_b[i] = detail::oscillator_column(n_max, xb.at(i));

    std::vector<std::complex<double>> phase(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        phase[n] = std::polar(state.mags[n], double(n) * state.theta);

    QuadratureField f;
    f.xa_axis = xa;
    f.xb_axis = xb;
    f.values.assign(xa.points * xb.points, {0.0, 0.0});
    for (std::size_t ia = 0; ia < xa.points; ++ia)
        for (std::size_t ib = 0; ib < xb.points; ++ib) {
            std::complex<double> acc{0.0, 0.0};
            for (int n = 0; n <= n_max; ++n)
                acc += phase[n] * psi_a[ia][n + k] * psi_b[ib][n];
            f.values[ia * xb.points + ib] = acc;
        }
    return f;
}

/// Closed-form single-subtraction wavefunction with kappa = tanh r e^{i theta}:
///   sqrt(2) e^{i theta} (x_a - kappa x_b) / ((1-kappa^2)^{3/2} sqrt(pi) cosh^2 r)
///   * exp[ (2 x_a x_b kappa - (x_a^2 + x_b^2) kappa^2) / (1 - kappa^2)
///          - (x_a^2 + x_b^2)/2 ].
inline QuadratureField wavefunction_k1_closed(const SqueezeParams& params, Axis xa, Axis xb) {
    detail::check_axis(xa);
    detail::check_axis(xb);
    if (!(params.r >= 0.0) || params.r >= kRMax)
        throw RangeError("squeeze magnitude r out of [0, R_MAX)");
    const std::complex<double> kappa = std::polar(std::tanh(params.r), params.theta);
    const std::complex<double> one_minus_k2 = 1.0 - kappa * kappa;
    if (std::abs(one_minus_k2) < 1e-12)
        throw SingularityError("1 - kappa^2 vanishes; closed form undefined");

    const std::complex<double> pref =
        std::sqrt(2.0) * std::polar(1.0, params.theta) /
        (std::pow(one_minus_k2, 1.5) * std::sqrt(std::numbers::pi) *
         std::cosh(params.r) * std::cosh(params.r));

    QuadratureField f;
    f.xa_axis = xa;
    f.xb_axis = xb;
    f.values.assign(xa.points * xb.points, {0.0, 0.0});
    for (std::size_t ia = 0; ia < xa.points; ++ia) {
        const double x = xa.at(ia);
        for (std::size_t ib = 0; ib < xb.points; ++ib) {
            const double y = xb.at(ib);
            const std::complex<double> expo =
                (2.0 * x * y * kappa - (x * x + y * y) * kappa * kappa) / one_minus_k2 -
                0.5 * (x * x + y * y);
            f.values[ia * xb.points + ib] = pref * (x - kappa * y) * std::exp(expo);
        }
    }
    return f;
}

/// Axis-aligned rectangular loop given by grid indices (inclusive corners).
struct LoopRect {
    std::size_t ia_lo = 0, ia_hi = 0;
    std::size_t ib_lo = 0, ib_hi = 0;
};

/// Smallest grid-aligned loop covering [-half, half]^2 around the origin.
inline LoopRect loop_around_origin(const QuadratureField& f, double half) {
    auto clamp_index = [](const Axis& ax, double x) {
        double idx = (x - ax.lo) / ax.step();
        long i = std::lround(idx);
        return std::size_t(std::clamp<long>(i, 0, long(ax.points) - 1));
    };
    LoopRect l;
    l.ia_lo = clamp_index(f.xa_axis, -half);
    l.ia_hi = clamp_index(f.xa_axis, half);
    l.ib_lo = clamp_index(f.xb_axis, -half);
    l.ib_hi = clamp_index(f.xb_axis, half);
    return l;
}

/// Topological charge: (1/2pi) * sum of wrapped phase differences along the
/// counterclockwise loop. Integer by construction for a closed loop.
inline int winding_number(const QuadratureField& f, const LoopRect& loop) {
    if (loop.ia_lo >= loop.ia_hi || loop.ib_lo >= loop.ib_hi)
        throw RangeError("degenerate winding loop");

    std::vector<std::complex<double>> samples;
    for (std::size_t ia = loop.ia_lo; ia <= loop.ia_hi; ++ia)  // bottom edge, +x_a
        samples.push_back(f.at(ia, loop.ib_lo));
    for (std::size_t ib = loop.ib_lo + 1; ib <= loop.ib_hi; ++ib)  // right edge, +x_b
        samples.push_back(f.at(loop.ia_hi, ib));
    for (std::size_t ia = loop.ia_hi; ia-- > loop.ia_lo;)  // top edge, -x_a
        samples.push_back(f.at(ia, loop.ib_hi));
    for (std::size_t ib = loop.ib_hi; ib-- > loop.ib_lo;)  // left edge, -x_b
        samples.push_back(f.at(loop.ia_lo, ib));
    samples.push_back(samples.front());  // close the loop

    double total = 0.0;
    double prev_phase = std::arg(samples.front());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (std::abs(samples[i]) < kMagFloor)
            throw MagnitudeError("field magnitude below floor on the loop; phase undefined");
        if (i == 0) continue;
        double d = std::arg(samples[i]) - prev_phase;
        if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
        if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
        if (std::abs(d) >= 0.9 * std::numbers::pi)
            throw PhaseStepError("wrapped phase step >= 0.9 pi; refine the grid");
        total += d;
        prev_phase = std::arg(samples[i]);
    }
    return int(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace qvx
