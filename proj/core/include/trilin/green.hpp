#pragma once

#include "trilin/projections.hpp"
#include "trilin/transition.hpp"

namespace trilin {

/// U(t) M U^-1(s) computed by a linear solve against U(s).
Mat sandwich(const TransitionOperator& op, const Mat& M, double t, double s);

/// Which side of the diagonal a kernel is evaluated on when s == t.
enum class DiagonalSide { Below, Above };

/// Four-branch trichotomy Green kernel:
///   U(t) P U^-1(s)        on 0 <= s <= t,
///  -U(t)(I-P) U^-1(s)     on t <= s, s >= 0,
///  -U(t) Q U^-1(s)        on t <= s <= 0,
///   U(t)(I-Q) U^-1(s)     on s <= t, s <= 0.
/// Throws AmbiguousBranchError at t == s; use green_G_sided for one-sided
/// limits.
Mat green_G(const TransitionOperator& op, const ProjectionPair& pair, double t, double s);

Mat green_G_sided(const TransitionOperator& op, const ProjectionPair& pair, double t,
                  double s, DiagonalSide side);

/// Second Green kernel, the sum of three range-restricted signed
/// contributions: U(t) P1 U^-1(s) for s <= t, U(t)(P2+P3) U^-1(s) with the
/// orientation of the integral from 0 to t, and -U(t) P4 U^-1(s) for s >= t.
Mat green_Gtilde(const TransitionOperator& op, const SplitProjections& split, double t,
                 double s);

Mat green_Gtilde_sided(const TransitionOperator& op, const SplitProjections& split, double t,
                       double s, DiagonalSide side);

/// Two-branch dichotomy kernel, valid when P = I - Q.
struct DichotomyKernel {
    Mat P;
    Mat Q;

    Mat eval(const TransitionOperator& op, double t, double s) const {
        if (s <= t) return sandwich(op, P, t, s);
        return -sandwich(op, Q, t, s);
    }
};

/// Reduces the pair to the two-branch dichotomy kernel. Throws
/// NotReducibleError unless P = I - Q within 1e-12.
DichotomyKernel reduce_to_dichotomy(const ProjectionPair& pair);

}  // namespace trilin
