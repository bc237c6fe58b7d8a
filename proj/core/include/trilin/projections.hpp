#pragma once

#include <array>
#include <vector>

#include "trilin/check_report.hpp"
#include "trilin/linalg.hpp"
#include "trilin/transition.hpp"

namespace trilin {

/// The projection pair (P, Q) of an exponential trichotomy, with
/// PQ = QP and P + Q - PQ = I.
struct ProjectionPair {
    Mat P;
    Mat Q;

    int dim() const { return (int)P.rows(); }
    Mat IminusP() const { return Mat::Identity(P.rows(), P.cols()) - P; }
    Mat IminusQ() const { return Mat::Identity(Q.rows(), Q.cols()) - Q; }

    /// PQ; equals P2 + P3 of any compatible block split.
    Mat PQ() const { return P * Q; }
};

/// Measures the algebraic defects of a projection pair: idempotency of P and
/// Q, commutation PQ = QP, and the partition identity P + Q - PQ = I.
/// Throws ShapeError on mismatched dimensions.
CheckReport check_projection_algebra(const ProjectionPair& pair);

/// Diagonal block split P = P1 + P2 + P3, Q = P2 + P3 + P4 with pairwise
/// orthogonal idempotent blocks, plus the sampled bounds kappa1, kappa2 on
/// the P1 and P4 transition blocks.
struct SplitProjections {
    Mat P1, P2, P3, P4;
    double kappa1 = 0.0;
    double kappa2 = 0.0;

    int dim() const { return (int)P1.rows(); }
    Mat P23() const { return P2 + P3; }

    /// Builds diagonal 0/1 blocks from the four consecutive block sizes.
    static SplitProjections from_block_sizes(int dimension, const std::array<int, 4>& sizes);

    /// Max algebraic defect: idempotency, pairwise orthogonality, and the
    /// consistency of P1+P2+P3 and P2+P3+P4 with the given pair.
    double algebra_defect(const ProjectionPair& pair) const;
};

/// Sampled growth per block: sup over s <= t grid pairs of |U(t) Pi U^-1(s)|
/// for P1..P3 plus the reverse ordering for P4. Used to sanity-check a
/// user-declared split before certification.
std::array<double, 4> probe_projection_growth(const TransitionOperator& op,
                                              const SplitProjections& split, double grid_lo,
                                              double grid_hi, double grid_step);

}  // namespace trilin
