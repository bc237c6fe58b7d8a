#include "trilin/transition.hpp"

#include <algorithm>
#include <sstream>

namespace trilin {

TransitionOperator::TransitionOperator(int dim, double base, double window_lo,
                                       double window_hi, DenseSolution forward,
                                       DenseSolution backward, std::vector<double> grid)
    : dim_(dim),
      base_(base),
      window_lo_(window_lo),
      window_hi_(window_hi),
      forward_(std::move(forward)),
      backward_(std::move(backward)),
      grid_(std::move(grid)) {}

Mat TransitionOperator::U(double t) const {
    if (!in_window(t)) {
        std::ostringstream os;
        os << "transition query t = " << t << " outside window [" << window_lo_ << ", "
           << window_hi_ << "]";
        throw DomainError(os.str());
    }
    const DenseSolution& sol =
        ((t >= base_ && !forward_.empty()) || backward_.empty()) ? forward_ : backward_;
    Vec flat = sol.eval(t);
    return Eigen::Map<const Mat>(flat.data(), dim_, dim_);
}

Vec TransitionOperator::apply_inverse(double s, const Vec& v) const {
    return factor(s).solve(v);
}

Eigen::PartialPivLU<Mat> TransitionOperator::factor(double s) const {
    return Eigen::PartialPivLU<Mat>(U(s));
}

TransitionOperator fundamental_matrix(const SystemSpec& system, double base, Interval window,
                                      double tol) {
    if (window.lo > base || window.hi < base)
        throw DomainError("window must contain the base time");
    const int n = system.dimension;

    // Flatten U (column-major) into an n^2 vector and integrate U' = A(t)U.
    OdeField field = [&system, n](double t, const Vec& u) -> Vec {
        Eigen::Map<const Mat> U(u.data(), n, n);
        Mat dU = system.A(t) * U;
        return Eigen::Map<const Vec>(dU.data(), n * n);
    };
    Mat eye = Mat::Identity(n, n);
    Vec u0 = Eigen::Map<const Vec>(eye.data(), n * n);

    DenseSolution fwd, bwd;
    std::vector<double> grid;
    if (window.hi > base) {
        fwd = integrate_dense(field, base, u0, window.hi, tol);
        grid.insert(grid.end(), fwd.nodes().begin(), fwd.nodes().end());
    }
    if (window.lo < base) {
        bwd = integrate_dense(field, base, u0, window.lo, tol);
        grid.insert(grid.end(), bwd.nodes().begin(), bwd.nodes().end());
    }
    if (fwd.empty() && bwd.empty()) {
        // Degenerate window [base, base].
        Mat r = Mat::Zero(n * n, 5);
        r.col(0) = u0;
        fwd.append({base, base, r});
        grid.push_back(base);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-15; }),
               grid.end());

    TransitionOperator op(n, base, window.lo, window.hi, std::move(fwd), std::move(bwd),
                          std::move(grid));

    for (double t : op.grid()) {
        double c = cond_estimate(op.U(t));
        if (!std::isfinite(c) || c > 1e12) {
            std::ostringstream os;
            os << "fundamental matrix near-singular at node t = " << t
               << " (condition estimate " << c << ")";
            throw ConditioningError(os.str(), t);
        }
    }
    return op;
}

Mat transition(const TransitionOperator& op, double t, double s) {
    if (!op.in_window(t) || !op.in_window(s))
        throw DomainError("transition query outside the operator window");
    if (t == s) return Mat::Identity(op.dim(), op.dim());
    // U(t) U^-1(s) = (U(s)^T \ U(t)^T)^T
    Mat Ut = op.U(t);
    Mat Us = op.U(s);
    return Us.transpose().partialPivLu().solve(Ut.transpose()).transpose();
}

}  // namespace trilin
