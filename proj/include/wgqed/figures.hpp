#pragma once

// Parameter presets for the published TLS/ΛLS reflection figures, emitted as
// plot-ready CSV datasets plus a JSON peak/dip report per figure.
//
// ΛLS curves come in two readings of the printed coupling Γ:
//   "direct": v_g = 1 and Γ as printed, so g = Γ²;
//   "rate":   g equal to the printed Γ (coupling √Γ, v_g = 1).
// Each reading is written to its own file set, labelled by suffix.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wgqed/io.hpp"
#include "wgqed/lambda_line.hpp"
#include "wgqed/spectrum.hpp"

namespace wgqed {

using CurveModel = std::variant<TwoLevelParams, LambdaParams>;

struct Curve {
    std::string label;
    CurveModel model;
    std::string reading;  ///< "tls", "direct" or "rate"
};

struct FigurePreset {
    std::string id;
    std::vector<Curve> curves;
    bool subtract_center = true;  ///< delta_norm uses (Δ − f_c) rather than Δ
    std::size_t default_points = 4001;
};

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"fig2", "fig3", "fig4", "fig5"};
    return ids;
}

namespace detail {

inline LambdaParams lambda_reading(double printed_gamma, double delta, bool rate_reading) {
    LambdaParams p;
    p.coupling = rate_reading ? std::sqrt(printed_gamma) : printed_gamma;
    p.v_g = 1.0;
    p.delta = delta;
    p.rabi = 2.0;
    p.gamma_prime = 0.1;
    p.gamma2 = 0.0;
    return p;
}

inline void add_both_readings(FigurePreset& fig, const std::string& stem, double printed_gamma, double delta) {
    fig.curves.push_back({stem + "_direct", lambda_reading(printed_gamma, delta, false), "direct"});
    fig.curves.push_back({stem + "_rate", lambda_reading(printed_gamma, delta, true), "rate"});
}

}  // namespace detail

inline FigurePreset figure_preset(const std::string& id) {
    FigurePreset fig;
    fig.id = id;
    if (id == "fig2") {
        for (auto [gamma, label] : {std::pair{0.1, "tls_gamma_0.1"}, std::pair{0.5, "tls_gamma_0.5"},
                                    std::pair{1.0, "tls_gamma_1"}, std::pair{5.0, "tls_gamma_5"}})
            fig.curves.push_back({label, TwoLevelParams{gamma, 0.1, 0.0}, "tls"});
    } else if (id == "fig3") {
        detail::add_both_readings(fig, "lambda_gamma_0.05", 0.05, 0.0);
        detail::add_both_readings(fig, "lambda_gamma_0.2", 0.2, 0.0);
        detail::add_both_readings(fig, "lambda_gamma_0.5", 0.5, 0.0);
    } else if (id == "fig4") {
        fig.curves.push_back({"tls", TwoLevelParams{0.1, 0.1, 0.0}, "tls"});
        detail::add_both_readings(fig, "lambda_delta_0", 0.1, 0.0);
        detail::add_both_readings(fig, "lambda_delta_5", 0.1, 5.0);
    } else if (id == "fig5") {
        fig.subtract_center = false;
        detail::add_both_readings(fig, "lambda_delta_5", 0.1, 5.0);
        detail::add_both_readings(fig, "lambda_delta_10", 0.1, 10.0);
        detail::add_both_readings(fig, "lambda_delta_15", 0.1, 15.0);
    } else {
        throw parameter_error("unknown figure id '" + id + "' (expected fig2, fig3, fig4 or fig5)");
    }
    return fig;
}

/// Peaks, dip and reference center of one curve. Peak positions are on the x axis.
struct CurveAnalysis {
    std::vector<PeakReport> peaks;
    std::optional<std::size_t> narrow;
    std::optional<DipReport> dip;
    double f_c = 0.0;         ///< reference center, Δ units (0 for TLS and for δ = 0)
    double norm_scale = 1.0;  ///< Γ′, or 1 when Γ′ = 0
};

inline CurveAnalysis analyze_model(const CurveModel& model) {
    CurveAnalysis out;
    if (const auto* tls = std::get_if<TwoLevelParams>(&model)) {
        tls->validate();
        const double w = tls->gamma + tls->gamma_prime;
        out.peaks = analyze_peaks(tls_evaluator_photon(*tls), -20.0 * w, 20.0 * w, 257);
        out.norm_scale = tls->gamma_prime > 0.0 ? tls->gamma_prime : 1.0;
        return out;
    }
    const auto& p = std::get<LambdaParams>(model);
    auto rep = analyze_lambda(p);
    out.peaks = std::move(rep.peaks);
    out.dip = rep.dip;
    if (p.rabi > 0.0 && p.delta != 0.0) {
        out.narrow = rep.narrow;
        if (rep.narrow) out.f_c = -out.peaks[*rep.narrow].center;
    }
    out.norm_scale = p.gamma_prime > 0.0 ? p.gamma_prime : 1.0;
    return out;
}

inline SpectrumGrid sample_model(const CurveModel& model, const GridSpec& grid, Axis axis) {
    if (const auto* tls = std::get_if<TwoLevelParams>(&model)) {
        return axis == Axis::detuning ? sample_spectrum(tls_evaluator(*tls), grid, axis)
                                      : sample_spectrum(tls_evaluator_photon(*tls), grid, axis);
    }
    const auto& p = std::get<LambdaParams>(model);
    if (axis == Axis::detuning) {
        auto f = [p](double d) { return lls_reflection(p, PhotonDetuning{-d}); };
        return sample_spectrum(f, grid, axis);
    }
    return sample_spectrum(lambda_evaluator(p), grid, axis);
}

/// Window on the x axis holding every peak with 10 half-widths (of the broadest
/// peak) of margin on either side.
inline std::pair<double, double> curve_window(const CurveAnalysis& a) {
    if (a.peaks.empty()) return {-1.0, 1.0};
    double lo = a.peaks.front().center, hi = lo, half = 0.0;
    for (const auto& p : a.peaks) {
        lo = std::min(lo, p.center);
        hi = std::max(hi, p.center);
        if (p.measured()) half = std::max(half, 0.5 * p.fwhm);
    }
    if (half == 0.0) half = 0.5;
    return {lo - 10.0 * half, hi + 10.0 * half};
}

/// CSV with header `x,delta,delta_norm,R,re_r,im_r`; delta = −x and
/// delta_norm = (delta − center) / scale.
inline std::string spectrum_csv(const SpectrumGrid& grid, double center, double scale) {
    std::ostringstream os;
    os << "x,delta,delta_norm,R,re_r,im_r\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = grid.points[i];
        const double x = grid.axis == Axis::photon ? v : -v;
        const double delta = -x;
        os << io::format_double(x) << ',' << io::format_double(delta) << ','
           << io::format_double((delta - center) / scale) << ',' << io::format_double(grid.R[i]) << ','
           << io::format_double(grid.amp[i].real()) << ',' << io::format_double(grid.amp[i].imag()) << '\n';
    }
    return os.str();
}

inline nlohmann::ordered_json params_json(const CurveModel& model) {
    nlohmann::ordered_json j;
    if (const auto* t = std::get_if<TwoLevelParams>(&model)) {
        j["gamma"] = t->gamma;
        j["gamma_prime"] = t->gamma_prime;
        j["omega1"] = t->omega1;
    } else {
        const auto& p = std::get<LambdaParams>(model);
        j["coupling"] = p.coupling;
        j["v_g"] = p.v_g;
        j["guided_rate"] = guided_rate(p);
        j["omega1"] = p.omega1;
        j["delta"] = p.delta;
        j["rabi"] = p.rabi;
        j["gamma_prime"] = p.gamma_prime;
        j["gamma2"] = p.gamma2;
    }
    return j;
}

inline nlohmann::ordered_json peak_json(const PeakReport& p) {
    nlohmann::ordered_json j;
    j["center"] = p.center;
    j["center_delta"] = -p.center;
    j["amplitude"] = p.amplitude;
    j["fwhm"] = p.fwhm;
    j["half_left"] = p.half_left;
    j["half_right"] = p.half_right;
    j["window"] = {p.window_lo, p.window_hi};
    return j;
}

inline nlohmann::ordered_json analysis_json(const CurveAnalysis& a) {
    nlohmann::ordered_json j;
    j["axis"] = "x";
    j["f_c"] = a.f_c;
    auto peaks = nlohmann::ordered_json::array();
    for (const auto& p : a.peaks) peaks.push_back(peak_json(p));
    j["peaks"] = std::move(peaks);
    j["narrow_peak"] = a.narrow ? nlohmann::ordered_json(*a.narrow) : nlohmann::ordered_json(nullptr);
    if (a.dip) {
        j["dip"] = {{"location", a.dip->location},
                    {"location_delta", -a.dip->location},
                    {"residual", a.dip->residual},
                    {"closed_form", a.dip->closed_form}};
    } else {
        j["dip"] = nullptr;
    }
    return j;
}

struct RenderResult {
    std::vector<std::filesystem::path> datasets;
    std::filesystem::path report;
};

/// Writes `<id>_<label>.csv` per curve and `<id>_report.json` into `sink`.
inline RenderResult render_figure(const std::string& id, const std::optional<GridSpec>& grid_override,
                                  const std::filesystem::path& sink) {
    const auto fig = figure_preset(id);
    if (grid_override) grid_override->validate();

    std::error_code ec;
    std::filesystem::create_directories(sink, ec);
    if (ec || !std::filesystem::is_directory(sink)) throw error("output directory " + sink.string() + " is not usable");

    std::vector<CurveAnalysis> analyses;
    analyses.reserve(fig.curves.size());
    for (const auto& c : fig.curves) analyses.push_back(analyze_model(c.model));

    GridSpec grid;
    if (grid_override) {
        grid = *grid_override;
    } else {
        auto [lo, hi] = curve_window(analyses.front());
        for (const auto& a : analyses) {
            const auto w = curve_window(a);
            lo = std::min(lo, w.first);
            hi = std::max(hi, w.second);
        }
        grid = {lo, hi, fig.default_points};
    }

    RenderResult out;
    nlohmann::ordered_json report;
    report["figure"] = fig.id;
    report["axis"] = "x = E_k - omega1; delta = -x";
    report["delta_norm"] = fig.subtract_center ? "(delta - f_c) / gamma_prime" : "delta / gamma_prime";
    report["grid"] = {{"min", grid.min}, {"max", grid.max}, {"points", grid.points}};
    auto curves = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < fig.curves.size(); ++i) {
        const auto& c = fig.curves[i];
        const auto& a = analyses[i];
        const auto spectrum = sample_model(c.model, grid, Axis::photon);
        const double center = fig.subtract_center ? a.f_c : 0.0;
        const auto file = sink / (fig.id + "_" + c.label + ".csv");
        io::write_atomically(file, spectrum_csv(spectrum, center, a.norm_scale));
        out.datasets.push_back(file);

        nlohmann::ordered_json cj;
        cj["label"] = c.label;
        cj["model"] = std::holds_alternative<TwoLevelParams>(c.model) ? "tls" : "lambda";
        cj["reading"] = c.reading;
        cj["params"] = params_json(c.model);
        const auto aj = analysis_json(a);
        for (const auto& [k, v] : aj.items()) cj[k] = v;
        cj["dataset"] = file.filename().string();
        curves.push_back(std::move(cj));
    }
    report["curves"] = std::move(curves);
    out.report = sink / (fig.id + "_report.json");
    io::write_atomically(out.report, report.dump(2) + "\n");
    return out;
}

}  // namespace wgqed
