#pragma once

// Small complex linear solvers: dense Gaussian elimination and a banded variant,
// both with row partial pivoting.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "wgqed/errors.hpp"

namespace wgqed::linalg {

using cplx = std::complex<double>;

/// Pivots below `pivot_rtol * max|A_ij|` are treated as singular.
inline constexpr double pivot_rtol = 1e-13;

/// Solves A x = b for a fixed-size system.
template <std::size_t N>
std::array<cplx, N> solve_dense(std::array<std::array<cplx, N>, N> a, std::array<cplx, N> b) {
    double scale = 0.0;
    for (const auto& row : a)
        for (const auto& v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw singularity_error("solve_dense: zero matrix", 0.0);

    for (std::size_t k = 0; k < N; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < N; ++i)
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        const double piv = std::abs(a[p][k]);
        if (piv <= pivot_rtol * scale)
            throw singularity_error("solve_dense: singular system at column " + std::to_string(k), piv);
        if (p != k) {
            std::swap(a[p], a[k]);
            std::swap(b[p], b[k]);
        }
        for (std::size_t i = k + 1; i < N; ++i) {
            const cplx m = a[i][k] / a[k][k];
            if (m == cplx{}) continue;
            for (std::size_t j = k; j < N; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    std::array<cplx, N> x{};
    for (std::size_t k = N; k-- > 0;) {
        cplx s = b[k];
        for (std::size_t j = k + 1; j < N; ++j) s -= a[k][j] * x[j];
        x[k] = s / a[k][k];
    }
    return x;
}

/// Square band matrix with `lower` sub- and `upper` super-diagonals. Each row
/// keeps room for `lower` extra columns of fill produced by pivoting.
class BandMatrix {
public:
    BandMatrix(std::size_t n, std::size_t lower, std::size_t upper)
        : n_(n), kl_(lower), ku_(upper), width_(2 * lower + upper + 1), data_(n * width_) {}

    std::size_t size() const noexcept { return n_; }
    std::size_t lower() const noexcept { return kl_; }
    std::size_t upper() const noexcept { return ku_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[slot(i, j)]; }
    cplx operator()(std::size_t i, std::size_t j) const { return data_[slot(i, j)]; }

    bool in_band(std::size_t i, std::size_t j) const noexcept {
        return j + kl_ >= i && j <= i + ku_ + kl_;
    }

private:
    std::size_t slot(std::size_t i, std::size_t j) const { return i * width_ + (j + kl_ - i); }

    std::size_t n_, kl_, ku_, width_;
    std::vector<cplx> data_;
};

/// Solves A x = b in place of copies of A and b; O(n (kl+ku) kl).
inline std::vector<cplx> solve_banded(BandMatrix a, std::vector<cplx> b) {
    const std::size_t n = a.size();
    const std::size_t kl = a.lower();
    const std::size_t ku = a.upper();
    if (b.size() != n) throw parameter_error("solve_banded: rhs size mismatch");

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i > kl ? i - kl : 0); j < std::min(n, i + ku + 1); ++j)
            scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) throw singularity_error("solve_banded: zero matrix", 0.0);

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t last_row = std::min(n - 1, k + kl);
        const std::size_t last_col = std::min(n - 1, k + ku + kl);
        std::size_t p = k;
        for (std::size_t i = k + 1; i <= last_row; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        const double piv = std::abs(a(p, k));
        if (piv <= pivot_rtol * scale)
            throw singularity_error("solve_banded: singular system at row " + std::to_string(k), piv);
        if (p != k) {
            for (std::size_t j = k; j <= last_col; ++j) std::swap(a(k, j), a(p, j));
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i <= last_row; ++i) {
            const cplx m = a(i, k) / a(k, k);
            if (m == cplx{}) continue;
            a(i, k) = cplx{};
            for (std::size_t j = k + 1; j <= last_col; ++j) a(i, j) -= m * a(k, j);
            b[i] -= m * b[k];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t k = n; k-- > 0;) {
        cplx s = b[k];
        const std::size_t last_col = std::min(n - 1, k + ku + kl);
        for (std::size_t j = k + 1; j <= last_col; ++j) s -= a(k, j) * x[j];
        x[k] = s / a(k, k);
    }
    return x;
}

}  // namespace wgqed::linalg
