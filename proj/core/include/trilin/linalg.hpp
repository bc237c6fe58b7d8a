#pragma once

#include <Eigen/Core>
#include <Eigen/SVD>

namespace trilin {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Matrix norm used throughout: spectral norm (largest singular value) for
/// small matrices, Frobenius upper bound for larger ones.
inline double op_norm(const Mat& m) {
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    if (m.rows() <= 4 && m.cols() <= 4) {
        Eigen::JacobiSVD<Mat> svd(m);
        return svd.singularValues()(0);
    }
    return m.norm();
}

/// Condition number estimate via singular values (small matrices only).
inline double cond_estimate(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

}  // namespace trilin
