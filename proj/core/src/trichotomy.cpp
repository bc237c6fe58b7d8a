#include "trilin/trichotomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace trilin {

namespace {

constexpr double kLogZero = -1e300;

struct BranchEnvelope {
    // Log-norm envelope per integer distance bucket, with the achieving pair.
    std::vector<double> log_env;
    std::vector<std::pair<double, double>> arg_pair;
    bool any = false;

    void record(int k, double log_r, double t, double s) {
        if ((int)log_env.size() <= k) {
            log_env.resize(k + 1, kLogZero);
            arg_pair.resize(k + 1, {0.0, 0.0});
        }
        if (log_r > log_env[k]) {
            log_env[k] = log_r;
            arg_pair[k] = {t, s};
        }
        any = true;
    }
};

/// Decay rate of one branch envelope: least-squares slope over the upper
/// half of the occupied separations, clamped from above by the minimum
/// chord rate to the farthest separation. Returns nullopt when the branch
/// has too few separations to fit.
std::optional<double> fit_branch_rate(const BranchEnvelope& env, double step) {
    std::vector<int> occupied;
    for (int k = 0; k < (int)env.log_env.size(); ++k)
        if (env.log_env[k] > kLogZero / 2) occupied.push_back(k);
    if (occupied.size() < 3) return std::nullopt;

    int k_max = occupied.back();
    int k_tail = std::max(occupied.front(), k_max / 2);

    // Least squares of log-envelope against distance over the tail.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int k : occupied) {
        if (k < k_tail || k == 0) continue;
        double x = k * step;
        double y = env.log_env[k];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return std::nullopt;
    double denom = m * sxx - sx * sx;
    if (denom <= 0) return std::nullopt;
    double slope = (m * sxy - sx * sy) / denom;
    double rate_ls = -slope;

    // Minimum chord rate from the tail points to the farthest separation.
    double rate_chord = std::numeric_limits<double>::infinity();
    for (int k : occupied) {
        if (k >= k_max || k < k_tail) continue;
        double r = (env.log_env[k] - env.log_env[k_max]) / ((k_max - k) * step);
        rate_chord = std::min(rate_chord, r);
    }
    if (!std::isfinite(rate_chord)) return rate_ls;
    return std::min(rate_ls, rate_chord);
}

struct GridScan {
    std::array<BranchEnvelope, 4> branches;
    std::array<bool, 4> branch_zero{false, false, false, false};
};

GridScan scan_grid(const TransitionOperator& op, const ProjectionPair& pair,
                   const std::vector<double>& ts) {
    const int n = op.dim();
    const double tol = 1e-12;
    std::array<Mat, 4> proj = {pair.P, pair.IminusP(), pair.Q, pair.IminusQ()};

    GridScan scan;
    for (int b = 0; b < 4; ++b)
        scan.branch_zero[b] = proj[b].cwiseAbs().maxCoeff() < 1e-14;

    const int N = (int)ts.size();
    std::vector<Mat> Us(N);
    for (int i = 0; i < N; ++i) Us[i] = op.U(ts[i]);

    Mat eye = Mat::Identity(n, n);
    for (int j = 0; j < N; ++j) {
        const double s = ts[j];
        Mat Uinv = Us[j].partialPivLu().solve(eye);
        std::array<Mat, 4> right;
        for (int b = 0; b < 4; ++b)
            if (!scan.branch_zero[b]) right[b] = proj[b] * Uinv;

        for (int i = 0; i < N; ++i) {
            const double t = ts[i];
            auto record = [&](int b) {
                if (scan.branch_zero[b]) return;
                double r = op_norm(Us[i] * right[b]);
                double log_r = r > 0 ? std::log(r) : kLogZero;
                scan.branches[b].record(std::abs(i - j), log_r, t, s);
            };
            if (i >= j) {  // s <= t
                if (s >= -tol) record(0);
                if (s <= tol) record(3);
            }
            if (i <= j) {  // t <= s
                if (s >= -tol) record(1);
                if (s <= tol) record(2);
            }
        }
    }
    return scan;
}

}  // namespace

std::vector<double> GridSpec::points() const {
    std::vector<double> ts;
    int count = (int)std::llround((hi - lo) / step);
    for (int i = 0; i <= count; ++i) ts.push_back(lo + i * step);
    return ts;
}

TrichotomyCertificate certify_trichotomy(const TransitionOperator& op,
                                         const ProjectionPair& pair, const GridSpec& grid,
                                         std::optional<double> alpha_seed) {
    std::vector<double> ts = grid.points();
    GridScan scan = scan_grid(op, pair, ts);

    double alpha;
    if (alpha_seed) {
        if (*alpha_seed <= 0) throw Error("alpha_seed must be positive");
        alpha = *alpha_seed;
    } else {
        alpha = std::numeric_limits<double>::infinity();
        int worst_branch = -1;
        for (int b = 0; b < 4; ++b) {
            if (scan.branch_zero[b] || !scan.branches[b].any) continue;
            auto rate = fit_branch_rate(scan.branches[b], grid.step);
            if (!rate) continue;
            if (*rate < alpha) {
                alpha = *rate;
                worst_branch = b;
            }
        }
        if (worst_branch < 0)
            throw NotTrichotomicError("no branch provides enough decay data to fit a rate",
                                      0.0, 0.0);
        if (!(alpha > 0)) {
            const BranchEnvelope& env = scan.branches[worst_branch];
            int k_max = (int)env.log_env.size() - 1;
            auto [wt, ws] = env.arg_pair[k_max];
            std::ostringstream os;
            os << "no positive decay rate: fitted rate " << alpha << " on branch "
               << (worst_branch + 1) << ", worst pair (t, s) = (" << wt << ", " << ws << ")";
            throw NotTrichotomicError(os.str(), wt, ws);
        }
    }

    double beta = 1.0;
    for (int b = 0; b < 4; ++b) {
        const BranchEnvelope& env = scan.branches[b];
        for (int k = 0; k < (int)env.log_env.size(); ++k) {
            if (env.log_env[k] <= kLogZero / 2) continue;
            beta = std::max(beta, std::exp(env.log_env[k] + alpha * k * grid.step));
        }
    }

    TrichotomyCertificate cert;
    cert.projections = pair;
    cert.beta = beta;
    cert.alpha = alpha;
    cert.grid_spec = grid;
    for (int b = 0; b < 4; ++b) {
        const BranchEnvelope& env = scan.branches[b];
        double worst = -beta;  // empty or zero branch: sup is 0, residual -beta
        for (int k = 0; k < (int)env.log_env.size(); ++k) {
            if (env.log_env[k] <= kLogZero / 2) continue;
            worst = std::max(worst, std::exp(env.log_env[k] + alpha * k * grid.step) - beta);
        }
        cert.residuals[b] = worst;
    }
    return cert;
}

std::pair<double, double> estimate_kappas(const TransitionOperator& op,
                                          const SplitProjections& split, const GridSpec& grid) {
    std::vector<double> ts = grid.points();
    const int n = op.dim();
    const int N = (int)ts.size();
    const bool p1_zero = split.P1.cwiseAbs().maxCoeff() < 1e-14;
    const bool p4_zero = split.P4.cwiseAbs().maxCoeff() < 1e-14;

    std::vector<Mat> Us(N);
    for (int i = 0; i < N; ++i) Us[i] = op.U(ts[i]);
    Mat eye = Mat::Identity(n, n);

    double kappa1 = 0.0, kappa2 = 0.0;
    for (int j = 0; j < N; ++j) {
        Mat Uinv = Us[j].partialPivLu().solve(eye);
        Mat r1, r4;
        if (!p1_zero) r1 = split.P1 * Uinv;
        if (!p4_zero) r4 = split.P4 * Uinv;
        for (int i = 0; i < N; ++i) {
            if (!p1_zero && i >= j)  // s <= t
                kappa1 = std::max(kappa1, op_norm(Us[i] * r1));
            if (!p4_zero && i <= j)  // s >= t
                kappa2 = std::max(kappa2, op_norm(Us[i] * r4));
        }
    }
    if (kappa1 > 1e12 || kappa2 > 1e12 || !std::isfinite(kappa1) || !std::isfinite(kappa2)) {
        std::ostringstream os;
        os << "sampled projection block norm exceeds overflow guard (kappa1 = " << kappa1
           << ", kappa2 = " << kappa2 << ")";
        throw UnboundedBlockError(os.str());
    }
    return {kappa1, kappa2};
}

CheckReport kernel_periodicity_check(const TransitionOperator& op, const ProjectionPair& pair,
                                     const std::optional<SplitProjections>& split, double T,
                                     const GridSpec& grid) {
    if (!op.in_window(grid.lo) || !op.in_window(grid.hi + T))
        throw DomainError("operator window too small for shifted kernel queries");

    double defect_g = 0.0, defect_gt = 0.0;
    long samples = 0;
    std::vector<double> ts = grid.points();
    for (double t : ts) {
        for (double s0 : ts) {
            double s = s0 + 0.5 * grid.step;  // keep off the diagonal
            if (s > grid.hi) continue;
            Mat g = green_G(op, pair, t, s);
            Mat gT = green_G(op, pair, t + T, s + T);
            defect_g = std::max(defect_g, op_norm(gT - g));
            if (split) {
                Mat h = green_Gtilde(op, *split, t, s);
                Mat hT = green_Gtilde(op, *split, t + T, s + T);
                defect_gt = std::max(defect_gt, op_norm(hT - h));
            }
            ++samples;
        }
    }
    std::ostringstream os;
    os << "max |G(t+T,s+T) - G(t,s)| = " << defect_g;
    if (split) os << ", max second-kernel defect = " << defect_gt;
    return CheckReport::at_most("kernel_periodicity", std::max(defect_g, defect_gt), 1e-6,
                                os.str(), samples);
}

}  // namespace trilin
