#pragma once

#include <stdexcept>
#include <string>

namespace wgqed {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates its type invariant (e.g. Γ ≤ 0) or an operation precondition.
class parameter_error : public error {
public:
    using error::error;
};

/// A linear system or closed-form denominator is numerically singular.
class singularity_error : public error {
public:
    singularity_error(const std::string& what, double pivot)
        : error(what + " (pivot magnitude " + std::to_string(pivot) + ")"), pivot_(pivot) {}

    double pivot() const noexcept { return pivot_; }

private:
    double pivot_;
};

/// Requested photon energy lies outside the lattice band.
class band_edge_error : public error {
public:
    using error::error;
};

/// Plane-wave fit of the lattice solution left a residual above threshold.
class extraction_error : public error {
public:
    using error::error;
};

/// Half maximum was not bracketed within the allowed search distance.
class bracketing_error : public error {
public:
    using error::error;
};

/// Inverse design did not converge; carries the final residuals.
class infeasible_target_error : public error {
public:
    infeasible_target_error(const std::string& what, double center_residual, double fwhm_residual)
        : error(what), center_residual_(center_residual), fwhm_residual_(fwhm_residual) {}

    double center_residual() const noexcept { return center_residual_; }
    double fwhm_residual() const noexcept { return fwhm_residual_; }

private:
    double center_residual_;
    double fwhm_residual_;
};

}  // namespace wgqed
