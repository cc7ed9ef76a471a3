#pragma once

// Inverse design of the control field (δ, Ω) that places the narrow ΛLS line at
// a requested center with a requested width.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "wgqed/lambda_line.hpp"

namespace wgqed {

/// Rates held fixed during design.
struct FixedRates {
    double coupling = 0.0;
    double v_g = 1.0;
    double gamma_prime = 0.0;
    double gamma2 = 0.0;
    double omega1 = 0.0;

    LambdaParams with(double delta, double rabi) const {
        return {coupling, v_g, omega1, delta, rabi, gamma_prime, gamma2};
    }
};

struct DesignTarget {
    double center = 0.0;  ///< photon detuning x of the narrow line
    double fwhm = 0.0;
};

struct DesignResult {
    double delta = 0.0;
    double rabi = 0.0;
    double achieved_center = 0.0;
    double achieved_fwhm = 0.0;
    int iterations = 0;
};

struct DesignOptions {
    double tolerance = 1e-6;  ///< on both residuals, in units of the target width
    int max_iterations = 100;
    double fd_step = 1e-6;    ///< relative finite-difference step
};

/// Forward map (δ, Ω) → (center, fwhm) of the narrow line.
inline std::array<double, 2> narrow_line(const FixedRates& rates, double delta, double rabi) {
    const auto peak = narrow_peak(rates.with(delta, rabi));
    return {peak.center, peak.fwhm};
}

/// Inverts the far-detuned width law and the dressed-root condition by a short
/// fixed-point iteration; used as the Newton starting point.
inline std::array<double, 2> design_initial_guess(const FixedRates& rates, const DesignTarget& target) {
    const double s = rates.coupling * rates.coupling / rates.v_g + rates.gamma_prime;
    const double w = target.fwhm;
    double delta = -target.center;
    double rabi = 0.0;
    for (int i = 0; i < 8; ++i) {
        // w = s Ω² / (2|δ| √(δ² + Ω²)) solved for Ω².
        const double om2 = 2.0 * w * delta * delta * (w + std::sqrt(w * w + s * s)) / (s * s);
        rabi = std::sqrt(om2);
        // x(x + δ) = Ω²/4 at x = center.
        const double next = om2 / (4.0 * target.center) - target.center;
        if (!std::isfinite(next) || next * delta <= 0.0) break;
        delta = next;
    }
    return {delta, rabi};
}

/// Damped Newton iteration on F(δ, Ω) = (center − c*, fwhm − w*) / w* with a
/// forward-difference Jacobian. Steps are limited to a relative trust radius
/// that halves whenever a step crosses δ = 0, makes Ω non-positive, fails to
/// evaluate, or does not reduce |F|.
inline DesignResult design_control_field(const DesignTarget& target, const FixedRates& rates,
                                         const DesignOptions& opt = {}) {
    if (!(target.fwhm > 0.0) || !std::isfinite(target.fwhm))
        throw parameter_error("design_control_field: target fwhm must be > 0");
    if (!std::isfinite(target.center)) throw parameter_error("design_control_field: target center must be finite");
    rates.with(1.0, 1.0).validate();
    const double s = rates.coupling * rates.coupling / rates.v_g + rates.gamma_prime;
    if (std::abs(target.center) < 4.0 * s)
        throw parameter_error("design_control_field: target center lies within the broad-line neighbourhood |x| < " +
                              std::to_string(4.0 * s));

    const double scale = target.fwhm;
    auto residual = [&](double d, double om) {
        const auto line = narrow_line(rates, d, om);
        return std::array<double, 2>{(line[0] - target.center) / scale, (line[1] - target.fwhm) / scale};
    };
    auto norm = [](const std::array<double, 2>& v) { return std::max(std::abs(v[0]), std::abs(v[1])); };

    auto [delta, rabi] = design_initial_guess(rates, target);
    auto F = residual(delta, rabi);
    double radius = 0.5;
    int it = 0;
    while (norm(F) >= opt.tolerance) {
        if (++it > opt.max_iterations || radius < 1e-14)
            throw infeasible_target_error("design_control_field: no convergence after " + std::to_string(it - 1) +
                                              " iterations",
                                          F[0] * scale, F[1] * scale);
        const double hd = opt.fd_step * std::abs(delta);
        const double ho = opt.fd_step * rabi;
        const auto Fd = residual(delta + hd, rabi);
        const auto Fo = residual(delta, rabi + ho);
        const double j00 = (Fd[0] - F[0]) / hd, j01 = (Fo[0] - F[0]) / ho;
        const double j10 = (Fd[1] - F[1]) / hd, j11 = (Fo[1] - F[1]) / ho;
        const double det = j00 * j11 - j01 * j10;
        if (det == 0.0 || !std::isfinite(det)) {
            radius *= 0.5;
            continue;
        }
        double step_d = -(j11 * F[0] - j01 * F[1]) / det;
        double step_o = -(-j10 * F[0] + j00 * F[1]) / det;
        const double limit = std::max(std::abs(step_d) / (radius * std::abs(delta)), std::abs(step_o) / (radius * rabi));
        if (limit > 1.0) {
            step_d /= limit;
            step_o /= limit;
        }
        const double nd = delta + step_d;
        const double no = rabi + step_o;
        if (nd * delta <= 0.0 || !(no > 0.0)) {
            radius *= 0.5;
            continue;
        }
        std::array<double, 2> Fn;
        try {
            Fn = residual(nd, no);
        } catch (const error&) {
            radius *= 0.5;
            continue;
        }
        if (!(norm(Fn) < norm(F))) {
            radius *= 0.5;
            continue;
        }
        delta = nd;
        rabi = no;
        F = Fn;
        radius = std::min(2.0 * radius, 0.5);
    }
    const auto line = narrow_line(rates, delta, rabi);
    return {delta, rabi, line[0], line[1], it};
}

}  // namespace wgqed
