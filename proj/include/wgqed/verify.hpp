#pragma once

// Self-contained consistency battery: closed form vs. boundary-matching oracle,
// flux accounting, and lattice agreement. Deterministic (fixed seed).

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "wgqed/figures.hpp"
#include "wgqed/oracle.hpp"

namespace wgqed {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;      ///< largest deviation seen
    double tolerance = 0.0;
};

inline std::vector<LambdaParams> verification_battery() {
    std::vector<LambdaParams> out;
    for (const auto& id : {"fig3", "fig4", "fig5"})
        for (const auto& c : figure_preset(id).curves)
            if (const auto* p = std::get_if<LambdaParams>(&c.model)) out.push_back(*p);
    out.push_back({1.0, 10.0, 0.0, 5.0, 2.0, 0.1, 0.01});
    out.push_back({0.7, 2.0, 0.3, -3.0, 1.5, 0.05, 0.02});
    return out;
}

inline std::vector<CheckResult> run_verification() {
    std::vector<CheckResult> results;

    // |r| from the oracle against the closed form on a 201-point grid per parameter set.
    {
        CheckResult c{"oracle-closed-form agreement", true, 0.0, 1e-10};
        for (const auto& p : verification_battery()) {
            const auto roots = dressed_resonances(p);
            const double lo = std::min(roots.minus, roots.plus) - 3.0;
            const double hi = std::max(roots.minus, roots.plus) + 3.0;
            const GridSpec g{lo, hi, 201};
            for (std::size_t i = 0; i < g.points; ++i) {
                const PhotonDetuning x{g.node(i)};
                const double d = std::abs(std::abs(solve_stationary_system(p, x).r) - std::abs(lls_reflection(p, x)));
                c.worst = std::max(c.worst, d);
            }
        }
        c.passed = c.worst < c.tolerance;
        results.push_back(c);
    }

    std::mt19937_64 rng(20140611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    {
        CheckResult c{"lossless flux conservation", true, 0.0, 1e-10};
        CheckResult re{"lossless Re r = -|r|^2", true, 0.0, 1e-10};
        for (int i = 0; i < 50; ++i) {
            LambdaParams p{0.05 + unit(rng), 0.5 + 2.0 * unit(rng), 0.0, -10.0 + 20.0 * unit(rng),
                           3.0 * unit(rng), 0.0, 0.0};
            const PhotonDetuning x{-12.0 + 24.0 * unit(rng)};
            const auto s = solve_stationary_system(p, x);
            c.worst = std::max(c.worst, std::abs(std::norm(s.r) + std::norm(s.t) - 1.0));
            re.worst = std::max(re.worst, std::abs(s.r.real() + std::norm(s.r)));
        }
        c.passed = c.worst < c.tolerance;
        re.passed = re.worst < re.tolerance;
        results.push_back(c);
        results.push_back(re);
    }

    {
        CheckResult c{"lossy flux bound", true, 0.0, 1e-10};
        for (int i = 0; i < 50; ++i) {
            LambdaParams p{0.05 + unit(rng), 0.5 + 2.0 * unit(rng), 0.0, -10.0 + 20.0 * unit(rng),
                           3.0 * unit(rng), 0.5 * unit(rng), 0.1 * unit(rng)};
            const PhotonDetuning x{-12.0 + 24.0 * unit(rng)};
            const auto s = solve_stationary_system(p, x);
            c.worst = std::max(c.worst, std::norm(s.r) + std::norm(s.t) - 1.0);
        }
        c.passed = c.worst <= c.tolerance;
        c.worst = std::max(c.worst, 0.0);
        results.push_back(c);
    }

    {
        // Lattice reflectance within 1e-3 of the closed form at spacing 0.002.
        CheckResult c{"lattice agreement", true, 0.0, 1e-3};
        LatticeSpec spec;
        spec.spacing = 0.002;
        for (const auto& p : verification_battery()) {
            for (double x : {narrow_root(p), broad_root(p), -p.delta + 0.5}) {
                const auto s = lattice_scatter(p, PhotonDetuning{x}, spec);
                c.worst = std::max(c.worst, std::abs(std::norm(s.r) - reflectance(lls_reflection(p, PhotonDetuning{x}))));
            }
        }
        c.passed = c.worst < c.tolerance;
        results.push_back(c);
    }
    return results;
}

}  // namespace wgqed
