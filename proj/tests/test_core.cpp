#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "wgqed/core.hpp"

using namespace wgqed;

TEST(TlsReflection, LossyResonanceIsQuarter) {
    const auto r = tls_reflection({0.1, 0.1, 0.0}, Detuning{0.0});
    EXPECT_NEAR(r.real(), -0.5, 1e-15);
    EXPECT_NEAR(r.imag(), 0.0, 1e-15);
    EXPECT_NEAR(reflectance(r), 0.25, 1e-15);
}

TEST(TlsReflection, LosslessResonanceIsPerfectMirror) {
    const auto r = tls_reflection({0.1, 0.0, 0.0}, Detuning{0.0});
    EXPECT_DOUBLE_EQ(r.real(), -1.0);
    EXPECT_DOUBLE_EQ(reflectance(r), 1.0);
}

TEST(TlsReflection, HalfMaximumAtHalfTotalRate) {
    // Δ = (Γ + Γ′)/2 halves R(0) = 0.25.
    EXPECT_NEAR(reflectance(tls_reflection({0.1, 0.1, 0.0}, Detuning{0.1})), 0.125, 1e-15);
}

TEST(TlsReflection, RejectsNonPositiveGamma) {
    EXPECT_THROW(tls_reflection({0.0, 0.1, 0.0}, Detuning{0.0}), parameter_error);
    EXPECT_THROW(tls_reflection({-1.0, 0.1, 0.0}, Detuning{0.0}), parameter_error);
    EXPECT_THROW(tls_reflection({0.1, -0.1, 0.0}, Detuning{0.0}), parameter_error);
}

TEST(TlsReflection, PropertiesOverRandomParameters) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rate(1e-3, 10.0), det(-20.0, 20.0);
    for (int i = 0; i < 500; ++i) {
        const TwoLevelParams p{rate(rng), rate(rng), 0.0};
        const double peak = p.gamma / (p.gamma + p.gamma_prime);
        EXPECT_NEAR(reflectance(tls_reflection(p, Detuning{0.0})), peak * peak, 1e-12);
        const double hw = 0.5 * (p.gamma + p.gamma_prime);
        EXPECT_NEAR(reflectance(tls_reflection(p, Detuning{hw})), 0.5 * peak * peak, 1e-12);
        EXPECT_NEAR(reflectance(tls_reflection(p, Detuning{-hw})), 0.5 * peak * peak, 1e-12);

        const double a = det(rng), b = det(rng);
        const double ra = reflectance(tls_reflection(p, Detuning{a}));
        const double rb = reflectance(tls_reflection(p, Detuning{b}));
        if (std::abs(a) < std::abs(b)) {
            EXPECT_GT(ra, rb);
        } else if (std::abs(a) > std::abs(b)) {
            EXPECT_LT(ra, rb);
        }
        EXPECT_LE(std::abs(tls_reflection(p, Detuning{a})), 1.0 + 1e-9);
    }
}

TEST(LambdaReflection, VanishesAtTwoPhotonResonance) {
    for (double delta : {-3.0, 0.0, 5.0, 10.0}) {
        const LambdaParams p{0.3, 1.0, 0.0, delta, 2.0, 0.1, 0.0};
        EXPECT_EQ(std::abs(lls_reflection(p, PhotonDetuning{-delta})), 0.0);
    }
}

TEST(LambdaReflection, LosslessBareResonanceIsPerfect) {
    const LambdaParams p{0.4, 2.0, 0.0, 3.0, 0.0, 0.0, 0.0};
    EXPECT_NEAR(std::abs(lls_reflection(p, PhotonDetuning{0.0})), 1.0, 1e-15);
}

TEST(LambdaReflection, DressedRootAmplitude) {
    const LambdaParams p{1.0, 10.0, 0.0, 5.0, 2.0, 0.1, 0.0};
    const double x = (-5.0 - std::sqrt(29.0)) / 2.0;
    EXPECT_NEAR(reflectance(lls_reflection(p, PhotonDetuning{x})), 0.25, 1e-12);
}

TEST(LambdaReflection, DressedIdentityOverRandomParameters) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        LambdaParams p{0.05 + u(rng), 0.5 + 2.0 * u(rng), 0.0, -15.0 + 30.0 * u(rng), 0.1 + 4.0 * u(rng),
                       0.5 * u(rng), 0.0};
        const double g = guided_rate(p);
        const double s = std::sqrt(p.delta * p.delta + p.rabi * p.rabi);
        // Plain quadratic formula, independent of dressed_resonances.
        for (double x : {(-p.delta + s) / 2.0, (-p.delta - s) / 2.0}) {
            EXPECT_NEAR(std::abs(lls_reflection(p, PhotonDetuning{x})), g / (g + p.gamma_prime), 1e-9)
                << "delta=" << p.delta << " rabi=" << p.rabi;
        }
        EXPECT_LE(std::abs(lls_reflection(p, PhotonDetuning{-20.0 + 40.0 * u(rng)})), 1.0 + 1e-9);
    }
}

TEST(LambdaReflection, GuardsSingularDenominator) {
    // Ω = 0, Γ₂ = 0 at x = −δ: every term of the denominator carries (x + δ).
    const LambdaParams p{0.4, 1.0, 0.0, 2.0, 0.0, 0.1, 0.0};
    EXPECT_THROW(lls_reflection(p, PhotonDetuning{-2.0}), singularity_error);
}

TEST(Reflectance, Values) {
    EXPECT_DOUBLE_EQ(reflectance({-0.5, 0.0}), 0.25);
    EXPECT_DOUBLE_EQ(reflectance({0.0, 0.0}), 0.0);
    EXPECT_NEAR(reflectance({0.6, 0.8}), 1.0, 1e-15);
}

TEST(GuidedRate, Values) {
    LambdaParams p;
    p.coupling = 0.1;
    p.v_g = 1.0;
    EXPECT_NEAR(guided_rate(p), 0.01, 1e-17);
    p.coupling = 1.0;
    p.v_g = 10.0;
    EXPECT_NEAR(guided_rate(p), 0.1, 1e-16);
    p.coupling = 0.5;
    p.v_g = 1.0;
    EXPECT_DOUBLE_EQ(guided_rate(p), 0.25);
}

namespace {

// Independent Lorentzian for the Ω = 0 ΛLS magnitude: g² / (x² + (g + Γ′)²).
double lorentzian(double g, double gp, double x) { return g * g / (x * x + (g + gp) * (g + gp)); }

void expect_overlay(const LambdaParams& lam) {
    const auto tls = tls_equivalent_of_lambda(lam);
    const double g = guided_rate(lam);
    for (int i = 0; i <= 400; ++i) {
        const double x = -2.0 + 0.01 * i + 1e-3;  // stays off x = −δ
        const double r_lambda = reflectance(lls_reflection(lam, PhotonDetuning{x}));
        const double r_tls = reflectance(tls_reflection(tls, Detuning{-x}));
        EXPECT_NEAR(r_lambda, r_tls, 1e-12);
        EXPECT_NEAR(r_lambda, lorentzian(g, lam.gamma_prime, x), 1e-12);
    }
}

}  // namespace

TEST(TlsEquivalent, MapsRatesAndOverlaysSpectra) {
    LambdaParams a{1.0, 10.0, 0.0, 0.123456, 0.0, 0.1, 0.0};
    auto t = tls_equivalent_of_lambda(a);
    EXPECT_NEAR(t.gamma, 0.2, 1e-15);
    EXPECT_NEAR(t.gamma_prime, 0.2, 1e-15);
    expect_overlay(a);

    LambdaParams b{0.1, 1.0, 0.0, 0.123456, 0.0, 0.1, 0.0};
    t = tls_equivalent_of_lambda(b);
    EXPECT_NEAR(t.gamma, 0.02, 1e-16);
    EXPECT_NEAR(t.gamma_prime, 0.2, 1e-15);
    expect_overlay(b);

    LambdaParams c{1.0, 1.0, 0.0, 0.123456, 0.0, 0.0, 0.0};
    t = tls_equivalent_of_lambda(c);
    EXPECT_DOUBLE_EQ(t.gamma, 2.0);
    EXPECT_DOUBLE_EQ(t.gamma_prime, 0.0);
    EXPECT_NEAR(reflectance(tls_reflection(t, Detuning{0.0})), 1.0, 1e-15);
    EXPECT_NEAR(reflectance(lls_reflection(c, PhotonDetuning{0.0})), 1.0, 1e-15);
}

TEST(Params, LambdaValidation) {
    LambdaParams p{1.0, 1.0, 0.0, 0.0, 1.0, 0.1, 0.0};
    EXPECT_NO_THROW(p.validate());
    p.v_g = 0.0;
    EXPECT_THROW(p.validate(), parameter_error);
    p.v_g = 1.0;
    p.rabi = -1.0;
    EXPECT_THROW(p.validate(), parameter_error);
    p.rabi = 1.0;
    p.gamma2 = -1e-3;
    EXPECT_THROW(p.validate(), parameter_error);
    p.gamma2 = 0.0;
    p.coupling = std::nan("");
    EXPECT_THROW(p.validate(), parameter_error);
}
