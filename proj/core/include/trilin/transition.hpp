#pragma once

#include <memory>
#include <vector>

#include <Eigen/LU>

#include "trilin/integrate.hpp"
#include "trilin/linalg.hpp"
#include "trilin/system.hpp"

namespace trilin {

/// Fundamental matrix U(t) of x' = A(t)x on a window, cached as dense
/// output with U(base) = I. Immutable after construction and safe to share
/// across threads.
class TransitionOperator {
public:
    TransitionOperator(int dim, double base, double window_lo, double window_hi,
                       DenseSolution forward, DenseSolution backward,
                       std::vector<double> grid);

    int dim() const { return dim_; }
    double base() const { return base_; }
    double window_lo() const { return window_lo_; }
    double window_hi() const { return window_hi_; }

    /// Accepted integrator nodes across the window (increasing).
    const std::vector<double>& grid() const { return grid_; }

    bool in_window(double t) const {
        return t >= window_lo_ - 1e-9 && t <= window_hi_ + 1e-9;
    }

    /// U(t). Throws DomainError outside the window.
    Mat U(double t) const;

    /// Solves U(s) w = v, i.e. w = U^-1(s) v.
    Vec apply_inverse(double s, const Vec& v) const;

    /// LU factorization of U(s), for repeated right-hand sides.
    Eigen::PartialPivLU<Mat> factor(double s) const;

private:
    int dim_;
    double base_;
    double window_lo_, window_hi_;
    DenseSolution forward_, backward_;
    std::vector<double> grid_;
};

struct Interval {
    double lo;
    double hi;
};

/// Integrates U' = A(t)U with U(base) = I over the window and verifies that
/// U stays invertible at every accepted node. Throws ConditioningError when
/// the condition estimate at a node exceeds 1e12.
TransitionOperator fundamental_matrix(const SystemSpec& system, double base, Interval window,
                                      double tol);

/// U(t) U^-1(s), computed by solving against U(s). transition(t, t) = I
/// exactly; out-of-window queries throw DomainError.
Mat transition(const TransitionOperator& op, double t, double s);

}  // namespace trilin
