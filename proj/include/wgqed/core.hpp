#pragma once

// Closed-form single-photon reflection coefficients for a two-level (TLS) and a
// Λ-type three-level (ΛLS) emitter side-coupled to a 1D waveguide.
//
// Unit conventions
// ----------------
//  * All rates and detunings share one arbitrary frequency unit; v_g defaults to 1.
//  * TLS functions take the detuning Δ = ω₁ − ck (type Detuning).
//  * ΛLS functions take the photon detuning x = E_k − ω₁ = −Δ (type PhotonDetuning).
//  * The TLS formula is parameterized by (Γ, Γ′); the ΛLS formula by the guided
//    rate g = Γ²/v_g and the loss Γ′. With Ω = 0, Γ₂ = 0 the two magnitude spectra
//    coincide under Γ_eq = 2g, Γ′_eq = 2Γ′ (see tls_equivalent_of_lambda).
//  * lls_reflection keeps the overall sign of the published expression. The
//    flux-conserving solution from the oracle module is its negative; only |r|
//    is physical here.

#include <cmath>
#include <complex>
#include <string>

#include "wgqed/errors.hpp"

namespace wgqed {

using ComplexAmplitude = std::complex<double>;

/// Δ = ω₁ − ck.
struct Detuning {
    double value = 0.0;
};

/// x = E_k − ω₁.
struct PhotonDetuning {
    double value = 0.0;
};

constexpr PhotonDetuning to_photon(Detuning d) noexcept { return {-d.value}; }
constexpr Detuning to_detuning(PhotonDetuning x) noexcept { return {-x.value}; }

struct TwoLevelParams {
    double gamma = 0.0;        ///< Γ, decay into the guided mode
    double gamma_prime = 0.0;  ///< Γ′, decay into all other channels
    double omega1 = 0.0;       ///< ω₁, |g⟩↔|e⟩ transition frequency

    void validate() const {
        if (!(gamma > 0.0) || !std::isfinite(gamma))
            throw parameter_error("TwoLevelParams: gamma must be finite and > 0");
        if (!(gamma_prime >= 0.0) || !std::isfinite(gamma_prime))
            throw parameter_error("TwoLevelParams: gamma_prime must be finite and >= 0");
        if (!std::isfinite(omega1)) throw parameter_error("TwoLevelParams: omega1 must be finite");
    }
};

struct LambdaParams {
    double coupling = 0.0;     ///< Γ, emitter–waveguide coupling constant
    double v_g = 1.0;          ///< group velocity
    double omega1 = 0.0;       ///< ω₁
    double delta = 0.0;        ///< δ, control-field detuning
    double rabi = 0.0;         ///< Ω, control Rabi frequency
    double gamma_prime = 0.0;  ///< Γ′, excited-state loss
    double gamma2 = 0.0;       ///< Γ₂, metastable-state loss

    void validate() const {
        auto finite = [](double v) { return std::isfinite(v); };
        if (!(coupling > 0.0) || !finite(coupling))
            throw parameter_error("LambdaParams: coupling must be finite and > 0");
        if (!(v_g > 0.0) || !finite(v_g)) throw parameter_error("LambdaParams: v_g must be finite and > 0");
        if (!(rabi >= 0.0) || !finite(rabi)) throw parameter_error("LambdaParams: rabi must be finite and >= 0");
        if (!(gamma_prime >= 0.0) || !finite(gamma_prime))
            throw parameter_error("LambdaParams: gamma_prime must be finite and >= 0");
        if (!(gamma2 >= 0.0) || !finite(gamma2))
            throw parameter_error("LambdaParams: gamma2 must be finite and >= 0");
        if (!finite(delta) || !finite(omega1))
            throw parameter_error("LambdaParams: delta and omega1 must be finite");
    }
};

/// |amp|².
inline double reflectance(ComplexAmplitude amp) noexcept { return std::norm(amp); }

/// g = Γ²/v_g, the guided decay rate entering the ΛLS coefficient.
inline double guided_rate(const LambdaParams& p) noexcept { return p.coupling * p.coupling / p.v_g; }

/// r_k = −1 / (1 + Γ′/Γ − 2iΔ/Γ).
inline ComplexAmplitude tls_reflection(const TwoLevelParams& p, Detuning d) {
    p.validate();
    if (!std::isfinite(d.value)) throw parameter_error("tls_reflection: detuning must be finite");
    const ComplexAmplitude denom{1.0 + p.gamma_prime / p.gamma, -2.0 * d.value / p.gamma};
    return -1.0 / denom;
}

/// ΛLS reflection coefficient, evaluated term by term as published:
///
///   r = −i g (ω₁ − E_k − δ − iΓ₂) / [(E_k − ω₁ + iΓ′)(E_k − ω₁ + δ + iΓ₂) − Ω²/4 + i g (E_k − ω₁ + δ + iΓ₂)]
///
/// with E_k − ω₁ = x. No cancellation of the (x + δ + iΓ₂) factor is attempted.
inline ComplexAmplitude lls_reflection(const LambdaParams& p, PhotonDetuning x) {
    p.validate();
    if (!std::isfinite(x.value)) throw parameter_error("lls_reflection: detuning must be finite");
    using namespace std::complex_literals;
    const double g = guided_rate(p);
    const double xv = x.value;
    const ComplexAmplitude two_photon = xv + p.delta + 1i * p.gamma2;
    const ComplexAmplitude numer = -1i * g * (-xv - p.delta - 1i * p.gamma2);
    const ComplexAmplitude denom =
        (xv + 1i * p.gamma_prime) * two_photon - p.rabi * p.rabi / 4.0 + 1i * g * two_photon;
    if (std::abs(denom) < 1e-300)
        throw singularity_error("lls_reflection: denominator vanishes at x = " + std::to_string(xv),
                                std::abs(denom));
    return numer / denom;
}

/// Two-level parameters whose Eq.-1-style magnitude spectrum matches the ΛLS
/// spectrum at Ω = 0, Γ₂ = 0: Γ_eq = 2g, Γ′_eq = 2Γ′.
inline TwoLevelParams tls_equivalent_of_lambda(const LambdaParams& p) {
    return {2.0 * guided_rate(p), 2.0 * p.gamma_prime, p.omega1};
}

}  // namespace wgqed
