#include "trilin/green.hpp"

#include <sstream>

namespace trilin {

Mat sandwich(const TransitionOperator& op, const Mat& M, double t, double s) {
    // U(t) M U^-1(s) = (U(s)^T \ (U(t) M)^T)^T
    Mat left = op.U(t) * M;
    return op.U(s).transpose().partialPivLu().solve(left.transpose()).transpose();
}

namespace {

Mat green_G_impl(const TransitionOperator& op, const ProjectionPair& pair, double t, double s,
                 bool s_below) {
    if (s_below) {
        if (s >= 0.0) return sandwich(op, pair.P, t, s);
        return sandwich(op, pair.IminusQ(), t, s);
    }
    if (s <= 0.0) return -sandwich(op, pair.Q, t, s);
    return -sandwich(op, pair.IminusP(), t, s);
}

Mat green_Gtilde_impl(const TransitionOperator& op, const SplitProjections& split, double t,
                      double s, bool s_below) {
    const int n = split.dim();
    Mat weight = Mat::Zero(n, n);
    if (s_below) {
        weight += split.P1;
        if (t > 0.0 && s >= 0.0) weight += split.P23();
    } else {
        weight -= split.P4;
        if (t < 0.0 && s <= 0.0) weight -= split.P23();
    }
    if (weight.cwiseAbs().maxCoeff() == 0.0) return Mat::Zero(n, n);
    return sandwich(op, weight, t, s);
}

}  // namespace

Mat green_G(const TransitionOperator& op, const ProjectionPair& pair, double t, double s) {
    if (t == s) {
        std::ostringstream os;
        os << "Green kernel is ambiguous on the diagonal (t = s = " << t << ")";
        throw AmbiguousBranchError(os.str());
    }
    return green_G_impl(op, pair, t, s, s < t);
}

Mat green_G_sided(const TransitionOperator& op, const ProjectionPair& pair, double t, double s,
                  DiagonalSide side) {
    return green_G_impl(op, pair, t, s, side == DiagonalSide::Below);
}

Mat green_Gtilde(const TransitionOperator& op, const SplitProjections& split, double t,
                 double s) {
    if (t == s) {
        std::ostringstream os;
        os << "Green kernel is ambiguous on the diagonal (t = s = " << t << ")";
        throw AmbiguousBranchError(os.str());
    }
    return green_Gtilde_impl(op, split, t, s, s < t);
}

Mat green_Gtilde_sided(const TransitionOperator& op, const SplitProjections& split, double t,
                       double s, DiagonalSide side) {
    return green_Gtilde_impl(op, split, t, s, side == DiagonalSide::Below);
}

DichotomyKernel reduce_to_dichotomy(const ProjectionPair& pair) {
    double defect = (pair.P - pair.IminusQ()).cwiseAbs().maxCoeff();
    if (defect > 1e-12) {
        std::ostringstream os;
        os << "pair is not a dichotomy: |P - (I - Q)| = " << defect;
        throw NotReducibleError(os.str());
    }
    return DichotomyKernel{pair.P, pair.Q};
}

}  // namespace trilin
