#pragma once

#include <functional>
#include <optional>
#include <string>

#include "trilin/errors.hpp"
#include "trilin/linalg.hpp"

namespace trilin {

enum class BoundMode { BoundedLipschitz, Integrable };

/// The pair (A(t), f(t,x)) with its declared perturbation bounds.
struct SystemSpec {
    int dimension = 1;
    std::function<Mat(double)> linear_part;                // A(t), n x n
    std::function<Vec(double, const Vec&)> nonlinear_part; // f(t, x), may be null (f == 0)
    BoundMode bound_mode = BoundMode::BoundedLipschitz;

    // bounded_lipschitz mode: |f| <= mu, Lipschitz constant gamma.
    double mu = 0.0;
    double gamma = 0.0;

    // integrable mode: |f(t,.)| <= phi(t), Lipschitz psi(t), integral bounds.
    std::function<double(double)> phi;
    std::function<double(double)> psi;
    double c1 = 0.0;
    double c2 = 0.0;

    std::optional<double> period;

    bool has_nonlinear() const { return static_cast<bool>(nonlinear_part); }

    Mat A(double t) const { return linear_part(t); }

    Vec f(double t, const Vec& x) const {
        if (!nonlinear_part) return Vec::Zero(dimension);
        return nonlinear_part(t, x);
    }
};

/// Result of one sampled validation pass over a SystemSpec's declared bounds.
struct SystemValidation {
    double max_f_norm = 0.0;          // vs mu (bounded mode)
    double max_difference_quotient = 0.0;  // vs gamma
    double phi_integral = 0.0;        // vs c1 (integrable mode)
    double psi_integral = 0.0;        // vs c2
    double period_defect_A = 0.0;     // sup |A(t+T)-A(t)| if period declared
    double period_defect_f = 0.0;     // sup |f(t+T,x)-f(t,x)|
    bool bounds_ok = true;
    bool period_ok = true;
    std::string notes;
};

/// Samples the declared bounds on a grid over [t_lo, t_hi] with states in
/// the box [-state_box, state_box]^n. Bound violations are reported, not
/// thrown; the declaration stays usable either way.
SystemValidation validate_system(const SystemSpec& system, double t_lo, double t_hi,
                                 double state_box = 2.0, double step = 0.25,
                                 double tolerance = 1e-6);

}  // namespace trilin
