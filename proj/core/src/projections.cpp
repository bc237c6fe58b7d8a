#include "trilin/projections.hpp"

#include <cmath>
#include <sstream>

namespace trilin {

CheckReport check_projection_algebra(const ProjectionPair& pair) {
    const Mat& P = pair.P;
    const Mat& Q = pair.Q;
    if (P.rows() != P.cols() || Q.rows() != Q.cols() || P.rows() != Q.rows())
        throw ShapeError("projection matrices must be square and of equal dimension");

    Mat I = Mat::Identity(P.rows(), P.cols());
    double idem_p = (P * P - P).cwiseAbs().maxCoeff();
    double idem_q = (Q * Q - Q).cwiseAbs().maxCoeff();
    double commute = (P * Q - Q * P).cwiseAbs().maxCoeff();
    double partition = (P + Q - P * Q - I).cwiseAbs().maxCoeff();
    double worst = std::max(std::max(idem_p, idem_q), std::max(commute, partition));

    std::ostringstream os;
    os << "idempotency P: " << idem_p << ", idempotency Q: " << idem_q
       << ", commutation: " << commute << ", partition: " << partition;
    return CheckReport::at_most("projection_algebra", worst, 1e-12, os.str());
}

SplitProjections SplitProjections::from_block_sizes(int dimension,
                                                    const std::array<int, 4>& sizes) {
    int total = sizes[0] + sizes[1] + sizes[2] + sizes[3];
    if (total != dimension)
        throw ShapeError("split block sizes must sum to the dimension");
    SplitProjections s;
    Mat* blocks[4] = {&s.P1, &s.P2, &s.P3, &s.P4};
    int offset = 0;
    for (int b = 0; b < 4; ++b) {
        Mat m = Mat::Zero(dimension, dimension);
        for (int i = 0; i < sizes[b]; ++i) m(offset + i, offset + i) = 1.0;
        *blocks[b] = std::move(m);
        offset += sizes[b];
    }
    return s;
}

double SplitProjections::algebra_defect(const ProjectionPair& pair) const {
    const Mat* blocks[4] = {&P1, &P2, &P3, &P4};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, ((*blocks[i]) * (*blocks[i]) - *blocks[i]).cwiseAbs().maxCoeff());
        for (int j = i + 1; j < 4; ++j)
            worst = std::max(worst, ((*blocks[i]) * (*blocks[j])).cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, (P1 + P2 + P3 - pair.P).cwiseAbs().maxCoeff());
    worst = std::max(worst, (P2 + P3 + P4 - pair.Q).cwiseAbs().maxCoeff());
    return worst;
}

std::array<double, 4> probe_projection_growth(const TransitionOperator& op,
                                              const SplitProjections& split, double grid_lo,
                                              double grid_hi, double grid_step) {
    const Mat* blocks[4] = {&split.P1, &split.P2, &split.P3, &split.P4};
    std::array<double, 4> sup{0.0, 0.0, 0.0, 0.0};

    std::vector<double> ts;
    for (double t = grid_lo; t <= grid_hi + 1e-12; t += grid_step) ts.push_back(t);

    std::vector<Mat> Us(ts.size());
    std::vector<Eigen::PartialPivLU<Mat>> lus(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        Us[i] = op.U(ts[i]);
        lus[i] = Eigen::PartialPivLU<Mat>(Us[i]);
    }
    for (size_t i = 0; i < ts.size(); ++i) {      // s index
        Mat Uinv = lus[i].solve(Mat::Identity(op.dim(), op.dim()));
        for (size_t j = 0; j < ts.size(); ++j) {  // t index
            for (int b = 0; b < 4; ++b) {
                bool relevant = (b == 3) ? ts[i] >= ts[j] : ts[i] <= ts[j];
                if (!relevant) continue;
                if (blocks[b]->cwiseAbs().maxCoeff() == 0.0) continue;
                sup[b] = std::max(sup[b], op_norm(Us[j] * (*blocks[b]) * Uinv));
            }
        }
    }
    return sup;
}

}  // namespace trilin
