#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "wgqed/linalg.hpp"

using namespace wgqed;
using linalg::cplx;

TEST(DenseSolve, NeedsPivoting) {
    // Zero leading entry forces a row swap.
    std::array<std::array<cplx, 3>, 3> a{{{0.0, 2.0, 1.0}, {1.0, 1.0, 0.0}, {2.0, 0.0, cplx(0.0, 1.0)}}};
    const std::array<cplx, 3> x_true{cplx(1.0, -1.0), cplx(0.5, 2.0), cplx(-3.0, 0.25)};
    std::array<cplx, 3> b{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i] += a[i][j] * x_true[j];
    const auto x = linalg::solve_dense(a, b);
    for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(x[i] - x_true[i]), 1e-14);
}

TEST(DenseSolve, SingularReportsPivot) {
    std::array<std::array<cplx, 2>, 2> a{{{1.0, 2.0}, {2.0, 4.0}}};
    try {
        linalg::solve_dense(a, {1.0, 1.0});
        FAIL() << "expected singularity_error";
    } catch (const singularity_error& e) {
        EXPECT_LT(e.pivot(), 1e-12);
    }
}

TEST(BandedSolve, MatchesResidualOnRandomSystems) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t size : {5u, 17u, 60u}) {
        linalg::BandMatrix m(size, 3, 2);
        std::vector<std::vector<cplx>> dense(size, std::vector<cplx>(size));
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = (i >= 3 ? i - 3 : 0); j < std::min(size, i + 3); ++j) {
                // Weak diagonal so pivoting actually happens.
                const cplx v(n(rng), n(rng));
                m(i, j) = v;
                dense[i][j] = v;
            }
        std::vector<cplx> b(size);
        for (auto& v : b) v = cplx(n(rng), n(rng));
        const auto x = linalg::solve_banded(m, b);
        for (std::size_t i = 0; i < size; ++i) {
            cplx s{};
            for (std::size_t j = 0; j < size; ++j) s += dense[i][j] * x[j];
            EXPECT_LT(std::abs(s - b[i]), 1e-9) << "size " << size << " row " << i;
        }
    }
}

TEST(BandedSolve, SingularThrows) {
    linalg::BandMatrix m(4, 1, 1);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(3, 3) = 1.0;  // row 2 left empty
    EXPECT_THROW(linalg::solve_banded(m, {1.0, 1.0, 1.0, 1.0}), singularity_error);
}
