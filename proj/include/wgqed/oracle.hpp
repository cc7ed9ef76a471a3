#pragma once

// Independent numerical solutions of the single-excitation scattering problem
// for a Λ emitter point-coupled (at x = 0, rotating-wave) to a chiral pair of
// waveguide channels. Both solvers return the flux-conserving sign of r.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "wgqed/core.hpp"
#include "wgqed/linalg.hpp"

namespace wgqed {

struct ScatteringSolution {
    ComplexAmplitude r;
    ComplexAmplitude t;
    ComplexAmplitude e_k;  ///< excited-state amplitude
    ComplexAmplitude f_k;  ///< metastable-state amplitude
    double fit_residual = 0.0;  ///< lattice only: plane-wave fit residual
};

/// Boundary-matching solution of H|E_k⟩ = E_k|E_k⟩ with the step-function ansatz
///
///   φ_R(x) = e^{ikx}[θ(−x) + t θ(x)],   φ_L(x) = r e^{−ikx} θ(−x),
///
/// fields at x = 0 taken as the midpoint average. Integrating the two channel
/// equations across the origin and keeping the two emitter equations gives the
/// 4×4 system in (r, t, e_k, f_k) assembled below (V = Γ, v = v_g):
///
///   r + (iV/v) e                                  = 0
///   t + (iV/v) e                                  = 1
///   (V/2) r + (V/2) t − (x + iΓ′) e + (Ω/2) f     = −V/2
///   (Ω/2) e − (x + δ + iΓ₂) f                     = 0
inline ScatteringSolution solve_stationary_system(const LambdaParams& p, PhotonDetuning x) {
    p.validate();
    using namespace std::complex_literals;
    using linalg::cplx;
    const double V = p.coupling;
    const double hop = V / p.v_g;
    const double half_rabi = p.rabi / 2.0;
    const double xv = x.value;

    std::array<std::array<cplx, 4>, 4> a{{
        {1.0, 0.0, 1i * hop, 0.0},
        {0.0, 1.0, 1i * hop, 0.0},
        {V / 2.0, V / 2.0, -(xv + 1i * p.gamma_prime), half_rabi},
        {0.0, 0.0, half_rabi, -(xv + p.delta + 1i * p.gamma2)},
    }};
    std::array<cplx, 4> b{0.0, 1.0, -V / 2.0, 0.0};

    const auto s = linalg::solve_dense(a, b);
    return {s[0], s[1], s[2], s[3], 0.0};
}

/// Tight-binding discretization of the waveguide.
struct LatticeSpec {
    double spacing = 0.05;                       ///< lattice constant a
    std::size_t half_length = 200;               ///< sites on each side of the emitter
    double anchor_phase = std::numbers::pi / 2;  ///< k₀a where the chain's group velocity equals v_g

    void validate() const {
        if (!(spacing > 0.0) || !std::isfinite(spacing)) throw parameter_error("LatticeSpec: spacing must be > 0");
        if (half_length < 100) throw parameter_error("LatticeSpec: half_length must be >= 100");
        if (!(anchor_phase > 0.0 && anchor_phase < std::numbers::pi))
            throw parameter_error("LatticeSpec: anchor phase k0*a must lie strictly inside (0, pi)");
    }
};

/// Plane-wave fits with residual above this are rejected.
inline constexpr double lattice_fit_threshold = 1e-8;

namespace detail {

// Least-squares fit ψ_n ≈ A e^{iθn} + B e^{−iθn} over the given sites.
struct PlaneWaveFit {
    linalg::cplx forward, backward;
    double rms;
};

inline PlaneWaveFit fit_plane_waves(std::span<const linalg::cplx> psi, std::span<const long> sites, double theta) {
    using linalg::cplx;
    std::array<std::array<cplx, 2>, 2> normal{};
    std::array<cplx, 2> rhs{};
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const double ph = theta * static_cast<double>(sites[i]);
        const std::array<cplx, 2> basis{std::polar(1.0, ph), std::polar(1.0, -ph)};
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) normal[r][c] += std::conj(basis[r]) * basis[c];
            rhs[r] += std::conj(basis[r]) * psi[i];
        }
    }
    const auto coef = linalg::solve_dense(normal, rhs);
    double ss = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const double ph = theta * static_cast<double>(sites[i]);
        ss += std::norm(psi[i] - coef[0] * std::polar(1.0, ph) - coef[1] * std::polar(1.0, -ph));
    }
    return {coef[0], coef[1], std::sqrt(ss / static_cast<double>(sites.size()))};
}

}  // namespace detail

/// Scattering off the emitter attached to site 0 of a nearest-neighbour chain.
///
/// Hopping J = v_g / (2a sin k₀a) fixes the group velocity at k₀; the on-site
/// energy places E(k₀) at ω₁; the emitter coupling V/√a reproduces the guided
/// rate Γ²/v_g as a → 0. Both chain ends carry exact outgoing-wave closures, the
/// left one with a unit incoming wave. Emitter amplitudes are rescaled by √a to
/// the continuum normalization of solve_stationary_system.
inline ScatteringSolution lattice_scatter(const LambdaParams& p, PhotonDetuning x, const LatticeSpec& spec) {
    p.validate();
    spec.validate();
    using namespace std::complex_literals;
    using linalg::cplx;

    const double a = spec.spacing;
    const double c0 = std::cos(spec.anchor_phase);
    const double J = p.v_g / (2.0 * a * std::sin(spec.anchor_phase));
    const double cos_ka = c0 - x.value / (2.0 * J);
    if (!(std::abs(cos_ka) < 1.0))
        throw band_edge_error("lattice_scatter: x = " + std::to_string(x.value) +
                              " lies outside the band of a chain with spacing " + std::to_string(a));
    const double theta = std::acos(cos_ka);  // ka in (0, π)
    const double sin_ka = std::sin(theta);

    const long N = static_cast<long>(spec.half_length);
    const std::size_t n_sites = static_cast<std::size_t>(2 * N + 1);
    const std::size_t n = n_sites + 2;

    // Unknown layout: ψ_{−N} … ψ_0, e, f, ψ_1 … ψ_N  (bandwidth 3 either side).
    auto site_index = [N](long site) -> std::size_t {
        return site <= 0 ? static_cast<std::size_t>(site + N) : static_cast<std::size_t>(site + N + 2);
    };
    const std::size_t ie = static_cast<std::size_t>(N) + 1;
    const std::size_t if_ = static_cast<std::size_t>(N) + 2;

    const double onsite = x.value - 2.0 * J * c0;  // E − ε
    const double v_site = p.coupling / std::sqrt(a);
    const cplx closure = J * std::polar(1.0, theta);

    linalg::BandMatrix m(n, 3, 3);
    std::vector<cplx> rhs(n);
    for (long s = -N; s <= N; ++s) {
        const std::size_t row = site_index(s);
        cplx diag = onsite;
        if (s == -N || s == N) diag += closure;
        m(row, row) = diag;
        if (s > -N) m(row, site_index(s - 1)) = J;
        if (s < N) m(row, site_index(s + 1)) = J;
    }
    rhs[site_index(-N)] = 2.0i * J * sin_ka * std::polar(1.0, -theta * static_cast<double>(N));
    m(site_index(0), ie) = -v_site;

    m(ie, site_index(0)) = v_site;
    m(ie, ie) = -(x.value + 1i * p.gamma_prime);
    m(ie, if_) = p.rabi / 2.0;
    m(if_, ie) = p.rabi / 2.0;
    m(if_, if_) = -(x.value + p.delta + 1i * p.gamma2);

    const auto sol = linalg::solve_banded(std::move(m), std::move(rhs));

    // Fit the outer quarter of each side.
    const long fit_count = std::max<long>(N / 4, 2);
    std::vector<long> left_sites, right_sites;
    std::vector<cplx> left_psi, right_psi;
    for (long s = -N; s < -N + fit_count; ++s) {
        left_sites.push_back(s);
        left_psi.push_back(sol[site_index(s)]);
    }
    for (long s = N - fit_count + 1; s <= N; ++s) {
        right_sites.push_back(s);
        right_psi.push_back(sol[site_index(s)]);
    }
    const auto left = detail::fit_plane_waves(left_psi, left_sites, theta);
    const auto right = detail::fit_plane_waves(right_psi, right_sites, theta);

    const double residual =
        std::max({left.rms, right.rms, std::abs(left.forward - 1.0), std::abs(right.backward)});
    if (!(residual <= lattice_fit_threshold))
        throw extraction_error("lattice_scatter: plane-wave fit residual " + std::to_string(residual) +
                               " above threshold");

    const double to_continuum = std::sqrt(a);
    return {left.backward, right.forward, sol[ie] * to_continuum, sol[if_] * to_continuum, residual};
}

struct ConvergenceReport {
    std::vector<double> spacings;
    std::vector<double> errors;  ///< |R_lattice − R_closed_form| per spacing
    double order = 0.0;          ///< least-squares slope of log(error) vs log(spacing)
};

/// Least-squares slope of log(y) against log(x); NaN when fewer than two
/// positive samples are available.
inline double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++k;
    }
    if (k < 2) return std::numeric_limits<double>::quiet_NaN();
    const double kd = static_cast<double>(k);
    return (kd * sxy - sx * sy) / (kd * sxx - sx * sx);
}

inline ConvergenceReport convergence_study(const LambdaParams& p, PhotonDetuning x, std::span<const double> spacings,
                                           std::size_t half_length = 200) {
    if (spacings.size() < 3) throw parameter_error("convergence_study: need at least 3 spacings");
    for (std::size_t i = 1; i < spacings.size(); ++i)
        if (!(spacings[i] < spacings[i - 1]))
            throw parameter_error("convergence_study: spacings must be strictly decreasing");

    const double reference = reflectance(lls_reflection(p, x));
    ConvergenceReport out;
    for (double a : spacings) {
        LatticeSpec spec;
        spec.spacing = a;
        spec.half_length = half_length;
        const auto sol = lattice_scatter(p, x, spec);
        out.spacings.push_back(a);
        out.errors.push_back(std::abs(reflectance(sol.r) - reference));
    }
    out.order = loglog_slope(out.spacings, out.errors);
    return out;
}

}  // namespace wgqed
