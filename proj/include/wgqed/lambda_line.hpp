#pragma once

// Structure of the ΛLS reflection spectrum: dressed resonances, the
// two-photon transparency dip, the far-detuned effective model, and a peak
// analysis that windows each dressed line separately.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "wgqed/core.hpp"
#include "wgqed/peaks.hpp"

namespace wgqed {

/// Real roots of x(x + δ) = Ω²/4, x± = (−δ ± √(δ² + Ω²)) / 2.
struct DressedResonances {
    double plus = 0.0;
    double minus = 0.0;
};

inline DressedResonances dressed_resonances(const LambdaParams& p) {
    const double d = p.delta;
    const double q = p.rabi * p.rabi / 4.0;
    const double root = std::sqrt(d * d + p.rabi * p.rabi);
    if (d == 0.0) return {root / 2.0, -root / 2.0};
    // The large-magnitude root is cancellation-free; Vieta gives the other.
    if (d > 0.0) {
        const double minus = (-d - root) / 2.0;
        return {-q / minus, minus};
    }
    const double plus = (-d + root) / 2.0;
    return {plus, -q / plus};
}

/// The dressed root on the two-photon side (nearer x = −δ); x₋ for δ > 0.
inline double narrow_root(const LambdaParams& p) {
    const auto r = dressed_resonances(p);
    return std::abs(r.minus + p.delta) <= std::abs(r.plus + p.delta) ? r.minus : r.plus;
}

/// The dressed root on the bare-resonance side; x₊ for δ > 0.
inline double broad_root(const LambdaParams& p) {
    const auto r = dressed_resonances(p);
    return std::abs(r.minus + p.delta) <= std::abs(r.plus + p.delta) ? r.plus : r.minus;
}

struct DipReport {
    double location = 0.0;      ///< x of the local minimum
    double residual = 0.0;      ///< R at the minimum
    double closed_form = 0.0;   ///< R at x = −δ from the closed-form dip expression
};

/// R at x = −δ: g²Γ₂² / [(Ω²/4 + Γ₂(Γ′ + g))² + δ²Γ₂²].
inline double dip_closed_form(const LambdaParams& p) {
    const double g = guided_rate(p);
    const double a = p.rabi * p.rabi / 4.0 + p.gamma2 * (p.gamma_prime + g);
    const double b = p.delta * p.gamma2;
    return g * g * p.gamma2 * p.gamma2 / (a * a + b * b);
}

inline DipReport dip_report(const LambdaParams& p) {
    p.validate();
    if (!(p.rabi > 0.0)) throw parameter_error("dip_report: no transparency dip without a control field (rabi = 0)");
    auto refl = [&p](double x) { return reflectance(lls_reflection(p, PhotonDetuning{x})); };
    const double closed = dip_closed_form(p);
    if (p.gamma2 == 0.0) {
        const double x = -p.delta;
        return {x, refl(x), closed};
    }
    const auto roots = dressed_resonances(p);
    const double lo = std::min(roots.plus, roots.minus);
    const double hi = std::max(roots.plus, roots.minus);
    const double x = golden_section(refl, lo, hi, -1.0);
    DipReport out{x, refl(x), closed};
    // R(−δ) equals the closed form, so the true minimum cannot lie above it.
    if (out.residual > closed * (1.0 + 1e-9) + 1e-300)
        throw error("dip_report: located minimum exceeds the closed-form value at x = -delta");
    return out;
}

struct EffectiveModel {
    double stark_shift = 0.0;       ///< Ω²/(4δ)
    double predicted_center = 0.0;  ///< exact dressed root on the two-photon side
    double predicted_fwhm = 0.0;    ///< (g + Γ′) Ω² / (2|δ| √(δ² + Ω²))
    double validity = 0.0;          ///< Ω / (2|δ|); relative error of the width is O(validity²)

    double error_bound() const noexcept { return validity * validity; }
};

inline EffectiveModel effective_model(const LambdaParams& p) {
    p.validate();
    if (p.delta == 0.0) throw parameter_error("effective_model: undefined for delta = 0");
    const double g = guided_rate(p);
    const double ad = std::abs(p.delta);
    const double om2 = p.rabi * p.rabi;
    EffectiveModel m;
    m.stark_shift = om2 / (4.0 * p.delta);
    m.predicted_center = narrow_root(p);
    m.predicted_fwhm = (g + p.gamma_prime) * om2 / (2.0 * ad * std::sqrt(p.delta * p.delta + om2));
    m.validity = p.rabi / (2.0 * ad);
    return m;
}

struct LambdaLineReport {
    std::vector<PeakReport> peaks;     ///< sorted by center
    std::optional<std::size_t> narrow;  ///< index of the two-photon-side peak
    std::optional<std::size_t> broad;
    std::optional<DipReport> dip;
};

namespace detail {

// Leading-order FWHM of the line at a dressed root: with h(x) = x − Ω²/(4(x+δ)),
// R = g²/(h² + (g+Γ′)²) near the root, so the width is 2(g+Γ′)/h'(root).
inline double line_width_estimate(const LambdaParams& p, double root) {
    const double s = guided_rate(p) + p.gamma_prime;
    const double u = root + p.delta;
    const double slope = u == 0.0 ? 1.0 : 1.0 + p.rabi * p.rabi / (4.0 * u * u);
    return 2.0 * s / slope + 2.0 * p.gamma2;
}

inline std::size_t coarse_count(double length, double width) {
    const double n = std::ceil(length / (width / 8.0)) + 1.0;
    return static_cast<std::size_t>(std::clamp(n, 64.0, 4.0e6));
}

}  // namespace detail

/// Locates and measures both dressed lines (one line when Ω = 0).
///
/// With Ω > 0 the axis is split at the two-photon point x = −δ; each side gets a
/// window reaching 20 estimated widths past its dressed root, sampled at 8
/// nodes per estimated width.
inline LambdaLineReport analyze_lambda(const LambdaParams& p) {
    p.validate();
    auto f = lambda_evaluator(p);
    LambdaLineReport out;

    if (p.rabi == 0.0) {
        const double w = detail::line_width_estimate(p, 0.0);
        out.peaks = analyze_peaks(f, -20.0 * w, 20.0 * w, detail::coarse_count(40.0 * w, w));
        if (!out.peaks.empty()) out.broad = 0;
        return out;
    }

    const auto roots = dressed_resonances(p);
    const double split = -p.delta;
    for (double root : {roots.minus, roots.plus}) {
        const double w = detail::line_width_estimate(p, root);
        const double outer = root < split ? root - 20.0 * w : root + 20.0 * w;
        const double lo = std::min(split, outer);
        const double hi = std::max(split, outer);
        auto found = analyze_peaks(f, lo, hi, detail::coarse_count(hi - lo, w));
        out.peaks.insert(out.peaks.end(), found.begin(), found.end());
    }
    std::sort(out.peaks.begin(), out.peaks.end(), [](const auto& a, const auto& b) { return a.center < b.center; });

    auto nearest = [&out](double target) -> std::optional<std::size_t> {
        if (out.peaks.empty()) return std::nullopt;
        std::size_t best = 0;
        for (std::size_t i = 1; i < out.peaks.size(); ++i)
            if (std::abs(out.peaks[i].center - target) < std::abs(out.peaks[best].center - target)) best = i;
        return best;
    };
    out.narrow = nearest(narrow_root(p));
    out.broad = nearest(broad_root(p));
    out.dip = dip_report(p);
    return out;
}

/// The measured two-photon-side peak; throws if it could not be located.
inline PeakReport narrow_peak(const LambdaParams& p) {
    if (!(p.rabi > 0.0)) throw parameter_error("narrow_peak: requires rabi > 0");
    const auto rep = analyze_lambda(p);
    if (!rep.narrow) throw error("narrow_peak: no peak found on the two-photon side");
    return rep.peaks[*rep.narrow];
}

}  // namespace wgqed
