#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qvx/entanglement.hpp"
#include "qvx/fock.hpp"

using namespace qvx;

namespace {

SchmidtLadderState bell_like() {
    SchmidtLadderState s;
    s.offset_k = 0;
    s.mags = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    return s;
}

// Fit a ladder state into a dense cutoff: keep at most dim - k coefficients
// so both the closed form and the dense oracle see the same state.
SchmidtLadderState fit_to_dim(const SchmidtLadderState& s, std::size_t dim) {
    return truncated_to(s, dim - std::size_t(s.offset_k));
}

std::vector<double> sorted_structural(const SchmidtLadderState& s, std::size_t pad_to) {
    std::vector<double> v;
    for (const auto& line : pt_spectrum_structural(s))
        v.insert(v.end(), line.multiplicity, line.eigenvalue);
    v.resize(pad_to, 0.0);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("jacobi recovers a known spectrum") {
    // Q D Q^T with Q a Householder reflection of a fixed vector
    const std::size_t n = 40;
    std::vector<double> d(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = std::sin(7.3 * double(i)) * 2.0 - 0.5;
        v[i] = std::cos(3.1 * double(i)) + 1.2;
    }
    double vn = 0.0;
    for (double x : v) vn += x * x;
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double qik = (i == k ? 1.0 : 0.0) - 2.0 * v[i] * v[k] / vn;
                const double qjk = (j == k ? 1.0 : 0.0) - 2.0 * v[j] * v[k] / vn;
                s += qik * d[k] * qjk;
            }
            m.at(i, j) = s;
        }
    auto eig = jacobi_eigenvalues(m);
    std::sort(eig.begin(), eig.end());
    std::sort(d.begin(), d.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(eig[i] == doctest::Approx(d[i]).epsilon(1e-11));
}

TEST_CASE("densify places the ladder on the shifted diagonal") {
    SchmidtLadderState s;
    s.offset_k = 1;
    s.mags = {1.0};
    const auto d = densify(s, 3);
    for (std::size_t m = 0; m < 3; ++m)
        for (std::size_t n = 0; n < 3; ++n)
            CHECK(std::abs(d.at(m, n)) == ((m == 1 && n == 0) ? doctest::Approx(1.0)
                                                              : doctest::Approx(0.0)));
}

TEST_CASE("densify renormalizes to unit norm") {
    const auto d = densify(truncated_to(tmsv_coefficients({0.5, 0.0}, 1e-12), 30), 30);
    double nrm = 0.0;
    for (const auto& a : d.amps) nrm += std::norm(a);
    CHECK(std::abs(nrm - 1.0) < 1e-10);
}

TEST_CASE("densify agrees with the b^2-operator construction") {
    // oracle: apply the dense annihilation matrix b twice to the dense TMSV
    const int dim = 34;
    const auto tmsv = densify(tmsv_coefficients({0.3, 0.0}, 1e-14), dim);
    std::vector<std::complex<double>> amps = tmsv.amps;
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<std::complex<double>> next(amps.size(), {0.0, 0.0});
        for (int m = 0; m < dim; ++m)
            for (int n = 1; n < dim; ++n)
                next[m * dim + (n - 1)] = std::sqrt(double(n)) * amps[m * dim + n];
        amps = std::move(next);
    }
    double nrm = 0.0;
    for (const auto& a : amps) nrm += std::norm(a);
    nrm = std::sqrt(nrm);

    const auto d = densify(subtracted_coefficients(2, {0.3, 0.0}, 1e-14), dim);
    for (std::size_t i = 0; i < amps.size(); ++i)
        CHECK(std::abs(d.amps[i] - amps[i] / nrm) < 1e-10);
}

TEST_CASE("densify rejects too-small dimensions") {
    const auto s = tmsv_coefficients({0.5, 0.0}, 1e-12);
    CHECK_THROWS_AS((void)densify(s, 2), DimensionError);
}

TEST_CASE("product state has zero negativity") {
    SchmidtLadderState s;
    s.offset_k = 1;
    s.mags = {1.0};
    const auto res = pt_negativity_oracle(densify(s, 3));
    CHECK(res.negativity == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("oracle rejects oversized problems") {
    SchmidtLadderState s;
    s.offset_k = 0;
    s.mags = {1.0};
    CHECK_THROWS_AS((void)pt_negativity_oracle(densify(s, 41)), SizeError);
}

TEST_CASE("bell-like state: N = 1/2, eps = 1") {
    const auto res = pt_negativity_oracle(densify(bell_like(), 2));
    CHECK(res.negativity == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::log2(1.0 + 2.0 * res.negativity) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("dense oracle against the closed TMSV result at r = 1") {
    // Both routes on the same truncated state agree to eigensolver precision;
    // the truncated value itself sits within the truncation error of 2/ln 2.
    const auto s = fit_to_dim(tmsv_coefficients({1.0, 0.0}, 1e-12), 38);
    const auto res = pt_negativity_oracle(densify(s, 38));
    const double eps_dense = std::log2(1.0 + 2.0 * res.negativity);
    CHECK(eps_dense == doctest::Approx(log_negativity_closed(s).log_negativity).epsilon(1e-8));
    CHECK(eps_dense == doctest::Approx(2.0 / std::numbers::ln2).epsilon(5e-4));
    double trace = 0.0;
    for (double l : res.spectrum) trace += l;
    CHECK(std::abs(trace - 1.0) < 1e-8);
}

TEST_CASE("structural spectrum basics") {
    SchmidtLadderState one;
    one.mags = {1.0};
    const auto lines = pt_spectrum_structural(one);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].eigenvalue == 1.0);

    SchmidtLadderState ab;
    ab.mags = {0.8, 0.6};
    auto v = sorted_structural(ab, 4);
    const std::vector<double> expect = {-0.48, 0.36, 0.48, 0.64};
    for (std::size_t i = 0; i < 4; ++i) CHECK(v[i] == doctest::Approx(expect[i]).epsilon(1e-14));
}

TEST_CASE("structural spectrum equals the dense spectrum") {
    const std::size_t dim = 24;
    const auto s = fit_to_dim(tmsv_coefficients({0.5, 0.0}, 1e-12), dim);
    const auto dense = pt_negativity_oracle(densify(s, dim));
    const auto structural = sorted_structural(s, dense.spectrum.size());
    for (std::size_t i = 0; i < structural.size(); ++i)
        CHECK(std::abs(structural[i] - dense.spectrum[i]) < 1e-7);
}

TEST_CASE("dense spectrum is theta-independent") {
    const std::size_t dim = 14;
    auto s0 = fit_to_dim(subtracted_coefficients(1, {0.4, 0.0}, 1e-12), dim);
    auto s1 = s0;
    s1.theta = std::numbers::pi / 3.0;
    const auto a = pt_negativity_oracle(densify(s0, dim));
    const auto b = pt_negativity_oracle(densify(s1, dim));
    REQUIRE(a.spectrum.size() == b.spectrum.size());
    for (std::size_t i = 0; i < a.spectrum.size(); ++i)
        CHECK(std::abs(a.spectrum[i] - b.spectrum[i]) < 1e-8);
}

TEST_CASE("closed-form log negativity") {
    CHECK(log_negativity_closed(subtracted_coefficients(1, {0.0, 0.0}, 1e-12)).log_negativity ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_negativity_closed(tmsv_coefficients({1.2, 0.0}, 1e-13)).log_negativity ==
          doctest::Approx(2.4 / std::numbers::ln2).epsilon(1e-9));
    CHECK(log_negativity_closed(subtracted_coefficients(1, {0.5, 0.0}, 1e-13)).log_negativity ==
          doctest::Approx(1.86281497437504).epsilon(1e-9));
}

TEST_CASE("report internal consistency") {
    for (int k : {0, 1, 3}) {
        for (double r : {0.2, 0.8, 1.5}) {
            const auto rep = log_negativity_closed(detail::ladder_coefficients(k, {r, 0.0}, 1e-13));
            CHECK(rep.log_negativity ==
                  doctest::Approx(std::log2(1.0 + 2.0 * rep.negativity)).epsilon(1e-12));
            // ratio_eq16 = 2^eps * e^{-2r}
            CHECK(rep.ratio_eq16 ==
                  doctest::Approx(std::exp2(rep.log_negativity) * std::exp(-2.0 * r))
                      .epsilon(1e-10));
        }
    }
}

TEST_CASE("entanglement ratio values") {
    const auto at0 = entanglement_ratio(subtracted_coefficients(1, {0.0, 0.0}, 1e-12));
    CHECK(at0.ratio_eq16 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(!at0.ratio_of_logs.has_value());

    const auto mid = entanglement_ratio(subtracted_coefficients(1, {0.5, 0.0}, 1e-13));
    CHECK(mid.ratio_eq16 == doctest::Approx(1.33803878341111).epsilon(1e-9));
    REQUIRE(mid.ratio_of_logs.has_value());
    CHECK(*mid.ratio_of_logs == doctest::Approx(0.645602473696454 / 0.5).epsilon(1e-9));

    const auto deep = entanglement_ratio(subtracted_coefficients(1, {4.0, 0.0}, 1e-13));
    CHECK(deep.ratio_eq16 == doctest::Approx(std::numbers::pi / 2.0).epsilon(0.01));
}

TEST_CASE("tmsv self-ratio is identically one") {
    for (double r : {0.1, 0.7, 1.9, 3.0}) {
        const auto ratio = entanglement_ratio(tmsv_coefficients({r, 0.0}, 1e-13));
        CHECK(ratio.ratio_eq16 == doctest::Approx(1.0).epsilon(1e-10));
        REQUIRE(ratio.ratio_of_logs.has_value());
        CHECK(*ratio.ratio_of_logs == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("coefficient sum is strictly increasing in r") {
    for (int k : {0, 1, 2, 4}) {
        double prev = -1.0;
        for (double r = 0.0; r <= 3.001; r += 0.1) {
            const double s =
                std::exp(log_sum_coefficients(detail::ladder_coefficients(k, {r, 0.0}, 1e-12))
                             .log_sum);
            CHECK(s > prev);
            prev = s;
        }
    }
}
