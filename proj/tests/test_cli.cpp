#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "wgqed/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "wgqed");
    std::ostringstream out, err;
    const int code = wgqed::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, SpectrumTlsCsv) {
    const auto r = run({"spectrum", "--model", "tls", "--gamma", "0.1", "--gamma-prime", "0.1", "--min", "-1", "--max",
                        "1", "--points", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,delta,delta_norm,R,re_r,im_r");
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[2], "0,0,0,0.25,-0.5,0");
}

TEST(Cli, SpectrumLambdaMissingRabi) {
    const auto r = run({"spectrum", "--model", "lambda", "--gamma", "0.1", "--gamma-prime", "0.1", "--delta-control",
                        "5", "--min", "-1", "--max", "1", "--points", "5"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--rabi"), std::string::npos);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, MalformedFlags) {
    EXPECT_EQ(run({"spectrum", "--model", "tls", "--gamma", "abc", "--gamma-prime", "0.1"}).code, 1);
    EXPECT_EQ(run({"spectrum", "--bogus"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"figure", "fig7"}).code, 1);
    EXPECT_EQ(run({"spectrum", "--model", "tls", "--gamma", "0", "--gamma-prime", "0.1"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, AnalyzeEchoesInputsVerbatim) {
    const auto r = run({"analyze", "--model", "lambda", "--gamma", "1.0", "--vg", "10", "--gamma-prime", "0.1",
                        "--delta-control", "5.000000000000000", "--rabi", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["inputs"]["delta-control"], "5.000000000000000");
    EXPECT_EQ(j["inputs"]["gamma"], "1.0");
    ASSERT_EQ(j["peaks"].size(), 2u);
    EXPECT_NEAR(j["peaks"][0]["center"].get<double>(), (-5.0 - std::sqrt(29.0)) / 2.0, 1e-8);
    EXPECT_NEAR(j["effective_model"]["stark_shift"].get<double>(), 0.2, 1e-15);
    EXPECT_EQ(j["dip"]["residual"].get<double>(), 0.0);
}

TEST(Cli, VerifyPasses) {
    const auto r = run({"verify"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, FigureWritesFiles) {
    const auto dir = fs::temp_directory_path() / "wgqed_cli_fig2";
    fs::remove_all(dir);
    const auto r = run({"figure", "fig2", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    int csv = 0, json = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        csv += e.path().extension() == ".csv";
        json += e.path().extension() == ".json";
    }
    EXPECT_EQ(csv, 4);
    EXPECT_EQ(json, 1);
}

TEST(Cli, FigureHonoursEnvironmentDirectory) {
    const auto dir = fs::temp_directory_path() / "wgqed_cli_env";
    fs::remove_all(dir);
    ::setenv(wgqed::cli::out_dir_env, dir.string().c_str(), 1);
    const auto r = run({"figure", "fig3", "--min", "-1", "--max", "1", "--points", "3"});
    ::unsetenv(wgqed::cli::out_dir_env);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "fig3_report.json"));
}

TEST(Cli, DesignRecoversControlField) {
    const wgqed::FixedRates rates{1.0, 10.0, 0.1, 0.0, 0.0};
    const auto fwd = wgqed::narrow_line(rates, 10.0, 2.0);
    const auto r = run({"design", "--target-center", wgqed::io::format_double(fwd[0]), "--target-fwhm",
                        wgqed::io::format_double(fwd[1]), "--gamma", "1", "--vg", "10", "--gamma-prime", "0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["delta"].get<double>(), 10.0, 1e-5);
    EXPECT_NEAR(j["rabi"].get<double>(), 2.0, 2e-6);
}

TEST(Cli, ConfigFileWithFlagOverride) {
    const auto cfg = fs::temp_directory_path() / "wgqed_cli.cfg";
    std::ofstream(cfg) << "# sweep\nmodel = tls\ngamma = 0.5\ngamma-prime = 0.1\nmin = -1\nmax = 1\npoints = 3\n";
    auto r = run({"spectrum", "--config", cfg.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find(",0.6944444444444445,"), std::string::npos);  // (5/6)² at Δ = 0

    r = run({"spectrum", "--config", cfg.string(), "--gamma", "0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find(",0.25,"), std::string::npos);
}

TEST(Cli, SpectrumWritesFileAtomically) {
    const auto file = fs::temp_directory_path() / "wgqed_cli_spectrum.csv";
    fs::remove(file);
    const auto r = run({"spectrum", "--model", "lambda", "--gamma", "0.1", "--gamma-prime", "0.1", "--delta-control",
                        "5", "--rabi", "2", "--out", file.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(file));
    EXPECT_FALSE(fs::exists(file.string() + ".tmp"));
}
