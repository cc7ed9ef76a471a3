#pragma once

// Peak location (coarse scan + golden-section refinement) and half-maximum
// width measurement (outward bracketing + bisection) for reflection spectra.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "wgqed/spectrum.hpp"

namespace wgqed {

struct PeakReport {
    double center = 0.0;     ///< refined detuning of the maximum
    double amplitude = 0.0;  ///< R at center
    double fwhm = std::numeric_limits<double>::quiet_NaN();
    double half_left = std::numeric_limits<double>::quiet_NaN();
    double half_right = std::numeric_limits<double>::quiet_NaN();
    double window_lo = 0.0;  ///< sub-window the peak was found in
    double window_hi = 0.0;

    bool measured() const noexcept { return std::isfinite(fwhm); }
};

inline constexpr double golden_rtol = 1e-10;
inline constexpr double bisection_rtol = 1e-12;

/// Golden-section search for the maximum (sign = +1) or minimum (sign = −1) of
/// a unimodal function on [lo, hi]. Stops once the bracket is below
/// golden_rtol times the smaller of the initial bracket and |center|.
template <class F>
double golden_section(F&& f, double lo, double hi, double sign = 1.0) {
    constexpr double inv_phi = 0.6180339887498949;
    const double scale0 = hi - lo;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = sign * f(c);
    double fd = sign * f(d);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double scale = std::abs(mid) > 0.0 ? std::min(scale0, std::abs(mid)) : scale0;
        if (b - a <= golden_rtol * scale) break;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = sign * f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = sign * f(d);
        }
    }
    return fc >= fd ? c : d;
}

/// Finds every interior maximum of R over [lo, hi].
///
/// The window is sampled at `coarse_points` nodes; interior coarse minima split
/// it into sub-windows, each contributing its coarse argmax, which is then
/// refined by golden section between its neighbouring nodes. The coarse grid
/// must resolve the narrowest line of interest. Widths are left unmeasured.
template <class Eval>
std::vector<PeakReport> locate_peaks(Eval&& f, double lo, double hi, std::size_t coarse_points) {
    if (coarse_points < 32) throw parameter_error("locate_peaks: at least 32 coarse points required");
    const GridSpec grid{lo, hi, coarse_points};
    grid.validate();

    std::vector<double> xs(coarse_points), ys(coarse_points);
    for (std::size_t i = 0; i < coarse_points; ++i) {
        xs[i] = grid.node(i);
        try {
            ys[i] = evaluate_reflectance(f, xs[i]);
        } catch (const error& e) {
            throw evaluation_error(xs[i], e.what());
        }
    }

    // Split points: interior local minima, plus both ends.
    std::vector<std::size_t> splits{0};
    for (std::size_t i = 1; i + 1 < coarse_points; ++i)
        if (ys[i] < ys[i - 1] && ys[i] <= ys[i + 1]) splits.push_back(i);
    splits.push_back(coarse_points - 1);

    auto refl = [&f](double v) { return evaluate_reflectance(f, v); };

    std::vector<PeakReport> peaks;
    for (std::size_t s = 0; s + 1 < splits.size(); ++s) {
        const std::size_t first = splits[s];
        const std::size_t last = splits[s + 1];
        std::size_t best = first;
        for (std::size_t i = first; i <= last; ++i)
            if (ys[i] > ys[best]) best = i;
        // Only interior maxima count.
        if (best == 0 || best == coarse_points - 1) continue;
        if (!(ys[best] > ys[best - 1] || ys[best] > ys[best + 1])) continue;
        if (!(ys[best] >= ys[best - 1] && ys[best] >= ys[best + 1])) continue;

        double center = golden_section(refl, xs[best - 1], xs[best + 1]);
        double amp = refl(center);
        if (amp < ys[best]) {
            center = xs[best];
            amp = ys[best];
        }
        PeakReport p;
        p.center = center;
        p.amplitude = amp;
        p.window_lo = xs[first];
        p.window_hi = xs[last];
        peaks.push_back(p);
    }
    std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) { return a.center < b.center; });
    return peaks;
}

/// Measures the full width at half maximum of `peak`.
///
/// From the center, probes outward at geometrically growing offsets until R
/// drops below amplitude/2, then bisects the bracket down to bisection_rtol
/// times the window width. Gives up beyond 10 window widths.
template <class Eval>
PeakReport measure_fwhm(Eval&& f, PeakReport peak) {
    if (!(peak.amplitude > 0.0)) throw parameter_error("measure_fwhm: peak amplitude must be > 0");
    const double window = peak.window_hi - peak.window_lo;
    if (!(window > 0.0)) throw parameter_error("measure_fwhm: empty peak window");
    const double half = 0.5 * peak.amplitude;
    const double tol = bisection_rtol * window;
    auto refl = [&f](double v) { return evaluate_reflectance(f, v); };

    auto crossing = [&](double dir) {
        double inner = 0.0;
        double outer = 1e-6 * window;
        while (refl(peak.center + dir * outer) >= half) {
            inner = outer;
            outer *= 2.0;
            if (outer > 10.0 * window)
                throw bracketing_error("measure_fwhm: half maximum not bracketed on the " +
                                       std::string(dir < 0 ? "left" : "right") + " of " +
                                       std::to_string(peak.center));
        }
        while (outer - inner > tol) {
            const double mid = 0.5 * (inner + outer);
            if (refl(peak.center + dir * mid) >= half)
                inner = mid;
            else
                outer = mid;
        }
        return 0.5 * (inner + outer);
    };

    const double left = crossing(-1.0);
    const double right = crossing(1.0);
    peak.half_left = peak.center - left;
    peak.half_right = peak.center + right;
    peak.fwhm = left + right;
    return peak;
}

/// locate_peaks followed by measure_fwhm on each peak.
template <class Eval>
std::vector<PeakReport> analyze_peaks(Eval&& f, double lo, double hi, std::size_t coarse_points) {
    auto peaks = locate_peaks(f, lo, hi, coarse_points);
    for (auto& p : peaks) p = measure_fwhm(f, p);
    return peaks;
}

}  // namespace wgqed
