#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "wgqed/core.hpp"

namespace wgqed {

/// Which detuning a grid is laid out on.
enum class Axis {
    detuning,  ///< Δ = ω₁ − ck
    photon,    ///< x = E_k − ω₁
};

inline const char* axis_name(Axis a) noexcept { return a == Axis::detuning ? "delta" : "x"; }

struct GridSpec {
    double min = -1.0;
    double max = 1.0;
    std::size_t points = 2;

    void validate() const {
        if (points < 2) throw parameter_error("GridSpec: at least 2 points required");
        if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
            throw parameter_error("GridSpec: range must be finite with min < max");
    }

    /// i-th node; the last node is exactly `max`.
    double node(std::size_t i) const noexcept {
        if (i + 1 == points) return max;
        return min + (max - min) * (static_cast<double>(i) / static_cast<double>(points - 1));
    }
};

struct SpectrumGrid {
    Axis axis = Axis::photon;
    std::vector<double> points;
    std::vector<double> R;
    std::vector<ComplexAmplitude> amp;

    std::size_t size() const noexcept { return points.size(); }
};

/// Raised when an evaluator fails inside a sweep; names the failing point.
class evaluation_error : public error {
public:
    evaluation_error(double point, const std::string& cause)
        : error("evaluation failed at detuning " + std::to_string(point) + ": " + cause), point_(point) {}

    double point() const noexcept { return point_; }

private:
    double point_;
};

/// Reflectance of whatever an evaluator returns: |r|² for amplitudes, the value
/// itself for real-valued evaluators.
template <class Eval>
double evaluate_reflectance(Eval&& f, double v) {
    using Result = std::decay_t<std::invoke_result_t<Eval, double>>;
    if constexpr (std::is_same_v<Result, ComplexAmplitude>)
        return reflectance(f(v));
    else
        return static_cast<double>(f(v));
}

/// Samples `f` (detuning → complex amplitude) once per node of a uniform grid.
template <class Eval>
SpectrumGrid sample_spectrum(Eval&& f, const GridSpec& grid, Axis axis) {
    grid.validate();
    SpectrumGrid out;
    out.axis = axis;
    out.points.reserve(grid.points);
    out.R.reserve(grid.points);
    out.amp.reserve(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double v = grid.node(i);
        ComplexAmplitude a;
        try {
            a = f(v);
        } catch (const error& e) {
            throw evaluation_error(v, e.what());
        }
        out.points.push_back(v);
        out.amp.push_back(a);
        out.R.push_back(reflectance(a));
    }
    return out;
}

/// TLS evaluator on the Δ axis.
inline auto tls_evaluator(const TwoLevelParams& p) {
    p.validate();
    return [p](double delta) { return tls_reflection(p, Detuning{delta}); };
}

/// TLS evaluator on the x axis (Δ = −x).
inline auto tls_evaluator_photon(const TwoLevelParams& p) {
    p.validate();
    return [p](double x) { return tls_reflection(p, Detuning{-x}); };
}

/// ΛLS evaluator on the x axis.
inline auto lambda_evaluator(const LambdaParams& p) {
    p.validate();
    return [p](double x) { return lls_reflection(p, PhotonDetuning{x}); };
}

}  // namespace wgqed
