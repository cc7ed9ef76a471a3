#pragma once

// Command-line front end. `run` is the whole program; tools/wgqed.cpp only
// forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 usage/parameter/domain error, 2 verification failure.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wgqed/design.hpp"
#include "wgqed/figures.hpp"
#include "wgqed/verify.hpp"

namespace wgqed::cli {

/// Environment variable naming the default output directory for `figure`.
inline constexpr const char* out_dir_env = "WGQED_OUT_DIR";

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_verify_failed = 2;

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Reads `key = value` lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parameter_error("config " + path + ":" + std::to_string(lineno) + ": expected key = value");
        auto key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(0, 1);
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

/// Strips `--config <file>` and appends the file's entries as flags, skipping
/// any key already given on the command line.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (!path) return args;
    auto given = [&args](const std::string& key) {
        for (const auto& a : args)
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
        return false;
    };
    for (const auto& [key, value] : read_config(*path)) {
        if (given(key)) continue;
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

struct Flags {
    std::map<std::string, std::string> raw;  ///< numeric flags exactly as typed
    std::string model;
    std::string out;
    std::string figure_id;

    bool has(const std::string& k) const { return raw.count(k) != 0; }

    double num(const std::string& k) const { return io::parse_double(raw.at(k), "--" + k); }

    double num_or(const std::string& k, double fallback) const { return has(k) ? num(k) : fallback; }

    void require(std::initializer_list<const char*> keys, const std::string& context) const {
        for (const char* k : keys)
            if (!has(k)) throw parameter_error("missing --" + std::string(k) + " for " + context);
    }
};

inline void add_numeric(CLI::App* app, Flags& f, const std::string& name, const std::string& help) {
    // Only flags actually passed land in the raw map.
    app->add_option_function<std::string>(
        "--" + name, [&f, name](const std::string& v) { f.raw[name] = v; }, help)
        ->type_name("FLOAT");
}

inline void add_model_options(CLI::App* app, Flags& f) {
    app->add_option("--model", f.model, "Emitter model")->check(CLI::IsMember({"tls", "lambda"}));
    add_numeric(app, f, "gamma", "TLS: guided decay rate; lambda: emitter-waveguide coupling");
    add_numeric(app, f, "gamma-prime", "Excited-state loss rate");
    add_numeric(app, f, "omega1", "Transition frequency (default 0)");
    add_numeric(app, f, "vg", "Group velocity (lambda, default 1)");
    add_numeric(app, f, "delta-control", "Control-field detuning (lambda)");
    add_numeric(app, f, "rabi", "Control Rabi frequency (lambda)");
    add_numeric(app, f, "gamma2", "Metastable-state loss rate (lambda, default 0)");
}

inline void add_grid_options(CLI::App* app, Flags& f) {
    add_numeric(app, f, "min", "Lower end of the detuning axis");
    add_numeric(app, f, "max", "Upper end of the detuning axis");
    add_numeric(app, f, "points", "Number of grid points");
}

inline CurveModel model_from(const Flags& f) {
    if (f.model.empty()) throw parameter_error("missing --model (tls or lambda)");
    if (f.model == "tls") {
        f.require({"gamma", "gamma-prime"}, "model tls");
        TwoLevelParams p{f.num("gamma"), f.num("gamma-prime"), f.num_or("omega1", 0.0)};
        p.validate();
        return p;
    }
    f.require({"gamma", "gamma-prime", "delta-control", "rabi"}, "model lambda");
    LambdaParams p;
    p.coupling = f.num("gamma");
    p.gamma_prime = f.num("gamma-prime");
    p.delta = f.num("delta-control");
    p.rabi = f.num("rabi");
    p.v_g = f.num_or("vg", 1.0);
    p.gamma2 = f.num_or("gamma2", 0.0);
    p.omega1 = f.num_or("omega1", 0.0);
    p.validate();
    return p;
}

inline std::optional<GridSpec> grid_from(const Flags& f) {
    const int given = static_cast<int>(f.has("min")) + static_cast<int>(f.has("max")) + static_cast<int>(f.has("points"));
    if (given == 0) return std::nullopt;
    if (given != 3) throw parameter_error("--min, --max and --points must be given together");
    const double pts = f.num("points");
    if (!(pts >= 2.0) || pts != std::floor(pts) || pts > 1e8)
        throw parameter_error("--points must be an integer >= 2");
    GridSpec g{f.num("min"), f.num("max"), static_cast<std::size_t>(pts)};
    g.validate();
    return g;
}

inline nlohmann::ordered_json inputs_json(const Flags& f) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    if (!f.model.empty()) j["model"] = f.model;
    for (const auto& [k, v] : f.raw) j[k] = v;
    return j;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty() || out_path == "-")
        out << text;
    else
        io::write_atomically(out_path, text);
}

inline int cmd_spectrum(const Flags& f, std::ostream& out) {
    const auto model = model_from(f);
    const auto analysis = analyze_model(model);
    const bool tls = std::holds_alternative<TwoLevelParams>(model);
    const Axis axis = tls ? Axis::detuning : Axis::photon;
    GridSpec grid;
    if (auto g = grid_from(f)) {
        grid = *g;
    } else {
        const auto [lo, hi] = curve_window(analysis);
        grid = tls ? GridSpec{-hi, -lo, 4001} : GridSpec{lo, hi, 4001};
    }
    const auto spectrum = sample_model(model, grid, axis);
    emit(spectrum_csv(spectrum, analysis.f_c, analysis.norm_scale), f.out, out);
    return exit_ok;
}

inline int cmd_analyze(const Flags& f, std::ostream& out) {
    const auto model = model_from(f);
    const auto analysis = analyze_model(model);
    nlohmann::ordered_json j;
    j["inputs"] = inputs_json(f);
    j["model"] = f.model;
    j["params"] = params_json(model);
    const auto aj = analysis_json(analysis);
    for (const auto& [k, v] : aj.items()) j[k] = v;
    if (const auto* p = std::get_if<LambdaParams>(&model); p && p->delta != 0.0) {
        const auto m = effective_model(*p);
        j["effective_model"] = {{"stark_shift", m.stark_shift},
                                {"predicted_center", m.predicted_center},
                                {"predicted_fwhm", m.predicted_fwhm},
                                {"validity", m.validity},
                                {"relative_error_bound", m.error_bound()}};
    } else {
        j["effective_model"] = nullptr;
    }
    emit(j.dump(2) + "\n", f.out, out);
    return exit_ok;
}

inline int cmd_verify(std::ostream& out) {
    bool ok = true;
    for (const auto& c : run_verification()) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << "  worst=" << io::format_double(c.worst)
            << "  tol=" << io::format_double(c.tolerance) << '\n';
        ok = ok && c.passed;
    }
    out << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
    return ok ? exit_ok : exit_verify_failed;
}

inline int cmd_figure(const Flags& f, std::ostream& out) {
    std::filesystem::path dir = f.out;
    if (dir.empty()) {
        const char* env = std::getenv(out_dir_env);
        dir = env && *env ? env : ".";
    }
    const auto res = render_figure(f.figure_id, grid_from(f), dir);
    for (const auto& p : res.datasets) out << p.string() << '\n';
    out << res.report.string() << '\n';
    return exit_ok;
}

inline int cmd_design(const Flags& f, std::ostream& out) {
    f.require({"target-center", "target-fwhm", "gamma", "gamma-prime"}, "design");
    FixedRates rates;
    rates.coupling = f.num("gamma");
    rates.gamma_prime = f.num("gamma-prime");
    rates.v_g = f.num_or("vg", 1.0);
    rates.gamma2 = f.num_or("gamma2", 0.0);
    rates.omega1 = f.num_or("omega1", 0.0);
    const DesignTarget target{f.num("target-center"), f.num("target-fwhm")};
    const auto res = design_control_field(target, rates);
    nlohmann::ordered_json j;
    j["inputs"] = inputs_json(f);
    j["delta"] = res.delta;
    j["rabi"] = res.rabi;
    j["achieved_center"] = res.achieved_center;
    j["achieved_fwhm"] = res.achieved_fwhm;
    j["iterations"] = res.iterations;
    emit(j.dump(2) + "\n", f.out, out);
    return exit_ok;
}

}  // namespace detail

inline int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"Single-photon reflection spectra of two-level and Lambda emitters in a 1D waveguide", "wgqed"};
    app.require_subcommand(1);
    Flags f;

    auto* spectrum = app.add_subcommand("spectrum", "Emit a reflection spectrum as CSV");
    add_model_options(spectrum, f);
    add_grid_options(spectrum, f);
    spectrum->add_option("--out", f.out, "Output file (default stdout)");

    auto* analyze = app.add_subcommand("analyze", "Emit the JSON peak/dip report of one model");
    add_model_options(analyze, f);
    analyze->add_option("--out", f.out, "Output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "Run the built-in oracle and flux checks");

    auto* figure = app.add_subcommand("figure", "Reproduce a figure preset as CSV datasets and a JSON report");
    figure->add_option("id", f.figure_id, "Figure id")->required()->check(CLI::IsMember(figure_ids()));
    add_grid_options(figure, f);
    figure->add_option("--out", f.out, std::string("Output directory (default $") + out_dir_env + " or .)");

    auto* design = app.add_subcommand("design", "Find (delta, rabi) placing the narrow line at a target");
    add_numeric(design, f, "target-center", "Target photon detuning x of the narrow line");
    add_numeric(design, f, "target-fwhm", "Target full width at half maximum");
    add_numeric(design, f, "gamma", "Emitter-waveguide coupling");
    add_numeric(design, f, "gamma-prime", "Excited-state loss rate");
    add_numeric(design, f, "vg", "Group velocity (default 1)");
    add_numeric(design, f, "gamma2", "Metastable-state loss rate (default 0)");
    add_numeric(design, f, "omega1", "Transition frequency (default 0)");
    design->add_option("--out", f.out, "Output file (default stdout)");

    CLI::App* active = &app;
    try {
        auto args = expand_config(std::vector<std::string>(argv_in.begin() + (argv_in.empty() ? 0 : 1), argv_in.end()));
        std::reverse(args.begin(), args.end());
        app.parse(args);
        for (auto* sub : {spectrum, analyze, verify, figure, design})
            if (sub->parsed()) active = sub;

        if (spectrum->parsed()) return cmd_spectrum(f, out);
        if (analyze->parsed()) return cmd_analyze(f, out);
        if (verify->parsed()) return cmd_verify(out);
        if (figure->parsed()) return cmd_figure(f, out);
        if (design->parsed()) return cmd_design(f, out);
        return exit_error;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        for (auto* sub : {spectrum, analyze, verify, figure, design})
            if (sub->parsed()) active = sub;
        err << active->help();
        return exit_error;
    } catch (const parameter_error& e) {
        err << "error: " << e.what() << "\n\n" << active->help();
        return exit_error;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace wgqed::cli
