#pragma once

#include <functional>
#include <vector>

#include "trilin/errors.hpp"
#include "trilin/linalg.hpp"
#include "trilin/system.hpp"

namespace trilin {

/// Right-hand side y' = field(t, y).
using OdeField = std::function<Vec(double, const Vec&)>;

/// Dense-output solution of one initial-value integration. Stores the
/// interpolation coefficients of every accepted step so the solution can be
/// evaluated anywhere inside the covered interval.
class DenseSolution {
public:
    struct Segment {
        double t0;
        double t1;          // t1 may be < t0 when integrating backward
        Mat rcont;          // dim x 5 interpolation coefficients
    };

    /// Evaluates the interpolated solution at t. Throws DomainError outside
    /// the covered range.
    Vec eval(double t) const;

    double cover_lo() const { return lo_; }
    double cover_hi() const { return hi_; }
    bool covers(double t) const { return t >= lo_ - 1e-9 && t <= hi_ + 1e-9; }

    /// Accepted step endpoints in increasing order.
    const std::vector<double>& nodes() const { return nodes_; }

    void append(Segment seg);
    bool empty() const { return segments_.empty(); }

private:
    std::vector<Segment> segments_;  // ordered by increasing min(t0, t1)
    std::vector<double> nodes_;
    double lo_ = 0.0, hi_ = 0.0;
};

/// Integrates y' = field(t, y) from (t0, y0) to t1 (either direction) with
/// an embedded Dormand-Prince 5(4) pair and PI step control. Local error is
/// controlled against atol + rtol*|y| with atol = rtol = tol.
DenseSolution integrate_dense(const OdeField& field, double t0, const Vec& y0, double t1,
                              double tol);

/// A sampled solution curve: states at strictly increasing times plus the
/// anchoring initial condition.
struct Trajectory {
    std::vector<double> times;  // strictly increasing
    std::vector<Vec> states;
    double anchor_time = 0.0;
    Vec anchor_state;

    const Vec& terminal_state() const;
    double terminal_time() const;
};

enum class FlowKind { Linear, Nonlinear };

/// Integrates the linear (x' = A(t)x) or nonlinear (x' = A(t)x + f(t,x))
/// flow of the system from (t0, x0) to t1.
Trajectory integrate_flow(const SystemSpec& system, FlowKind which, double t0, const Vec& x0,
                          double t1, double tol);

/// Field of the chosen flow, shared by the integrator and residual checks.
OdeField flow_field(const SystemSpec& system, FlowKind which);

}  // namespace trilin
