#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "trilin/check_report.hpp"
#include "trilin/green.hpp"
#include "trilin/quadrature.hpp"
#include "trilin/system.hpp"
#include "trilin/transition.hpp"
#include "trilin/trichotomy.hpp"

namespace trilin {

enum class ConjugacyMode { Theorem31, Theorem34 };

/// Which split-range layout of the fixed-point operator to assemble. Both
/// layouts are algebraically the same operator (the unified four-branch
/// kernel); they differ only in how the ranges are grouped, which is what
/// the glue check at t = 0 exercises.
enum class OperatorLayout { Auto, Forward, Backward };

/// One orbit-restricted fixed-point solve: quadrature nodes, the orbit
/// through the anchor, and the iterate values along it.
struct OrbitTable {
    double anchor_time = 0.0;
    Vec anchor_state;
    NodeSet node_set;
    std::vector<Vec> orbit_states;  // y(s_j, t*, eta) or x(s_j, t*, xi)
    std::vector<Vec> iterate;       // phi_k(s_j)
    std::vector<Mat> u_nodes;       // cached U(s_j)
    int iteration_count = 0;
    double last_delta = 0.0;
    std::vector<double> delta_history;  // sup-change per sweep
    std::vector<double> sup_history;    // sup |phi_k| per sweep

    const std::vector<double>& nodes() const { return node_set.nodes; }

    /// Local cubic (4-point Lagrange) interpolation of the iterate.
    Vec interp_iterate(double s) const;
};

struct HResult {
    Vec value;
    OrbitTable table;
};

/// On-demand evaluator of the equivalence maps H (linear -> nonlinear) and
/// L (nonlinear -> linear), built from a certificate and a quadrature
/// scheme. Immutable and safe to share; each evaluation owns its table.
class ConjugacyEvaluator {
public:
    ConjugacyEvaluator(std::shared_ptr<const TransitionOperator> op, SystemSpec system,
                       TrichotomyCertificate cert, std::optional<SplitProjections> split,
                       QuadratureScheme quad, ConjugacyMode mode, double fp_tol,
                       int max_sweeps, double ode_tol);

    const SystemSpec& system() const { return system_; }
    const TrichotomyCertificate& certificate() const { return cert_; }
    const std::optional<SplitProjections>& split() const { return split_; }
    const QuadratureScheme& quadrature() const { return quad_; }
    ConjugacyMode mode() const { return mode_; }
    double fp_tol() const { return fp_tol_; }
    int max_sweeps() const { return max_sweeps_; }
    double ode_tol() const { return ode_tol_; }
    double contraction_constant() const { return contraction_; }
    const TransitionOperator& transition_op() const { return *op_; }

    /// Sup bound on the displacement |H - id|: 3 beta mu / alpha in
    /// Theorem31 mode, (beta + 2 kappa1 + kappa2) c1 in Theorem34 mode.
    double displacement_bound() const;

    /// Picard iteration of the Green-function operator along the linear
    /// orbit through (t*, eta), starting from 0, until the sup change is
    /// <= fp_tol. Throws NonConvergenceError when max_sweeps is exhausted.
    HResult solve_h(double t_star, const Vec& eta,
                    OperatorLayout layout = OperatorLayout::Auto) const;

    /// Direct (non-iterative) integral of the kernel against f along the
    /// nonlinear orbit through (t*, xi).
    Vec solve_l(double t_star, const Vec& xi) const;

    Vec eval_H(double t, const Vec& y) const;
    Vec eval_L(double t, const Vec& x) const;

    /// Integral of the Green kernel at the table's anchor against node
    /// values: sum_j w_j G(t*, s_j) values[j]. Uses the same range
    /// decomposition as the fixed-point sweep.
    Vec integrate_green(const OrbitTable& table, const std::vector<Vec>& values,
                        OperatorLayout layout = OperatorLayout::Auto) const;

private:
    struct SweepContext;
    OrbitTable make_table(double t_star, const Vec& anchor, bool nonlinear_orbit) const;
    Vec operator_value_at(const SweepContext& cx, int j, const std::vector<Vec>& C,
                          OperatorLayout layout) const;

    std::shared_ptr<const TransitionOperator> op_;
    SystemSpec system_;
    TrichotomyCertificate cert_;
    std::optional<SplitProjections> split_;
    QuadratureScheme quad_;
    ConjugacyMode mode_;
    double fp_tol_;
    int max_sweeps_;
    double ode_tol_;
    double contraction_;
    bool left_tail_active_ = true;
    bool right_tail_active_ = true;
};

/// Validates the contraction premise (3 beta gamma / alpha < 1 or
/// (beta + 2 kappa1 + kappa2) c2 < 1) and packages the evaluator. Throws
/// PremiseViolationError with the computed constant when it fails.
ConjugacyEvaluator build_evaluator(std::shared_ptr<const TransitionOperator> op,
                                   const SystemSpec& system,
                                   const TrichotomyCertificate& cert,
                                   std::optional<SplitProjections> split,
                                   const QuadratureScheme& quad, ConjugacyMode mode,
                                   double fp_tol = 1e-8, int max_sweeps = 200,
                                   double ode_tol = 1e-10);

/// Solves h at t = 0 through both split-range layouts of the operator and
/// reports the worst disagreement over the eta samples.
CheckReport glue_check_zero(const ConjugacyEvaluator& ev, const std::vector<Vec>& etas);

}  // namespace trilin
