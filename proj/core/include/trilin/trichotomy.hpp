#pragma once

#include <array>
#include <optional>
#include <vector>

#include "trilin/check_report.hpp"
#include "trilin/green.hpp"
#include "trilin/projections.hpp"
#include "trilin/transition.hpp"

namespace trilin {

/// Square (t, s) sampling grid, both orderings: points lo, lo+step, ..., hi.
struct GridSpec {
    double lo = -10.0;
    double hi = 10.0;
    double step = 0.1;

    std::vector<double> points() const;
};

/// Fitted trichotomy constants with per-inequality residuals on the
/// certification grid. residuals[k] = max over the k-th regime of
/// |U(t) Pi U^-1(s)| e^{alpha |t-s|} - beta; all four are <= 0 for a valid
/// certificate.
struct TrichotomyCertificate {
    ProjectionPair projections;
    double beta = 1.0;
    double alpha = 0.0;
    std::array<double, 4> residuals{0, 0, 0, 0};
    GridSpec grid_spec;
};

/// Certifies the four trichotomy inequalities on the grid. The decay rate
/// alpha is fitted from the log-envelope of the sampled transition norms
/// over the tail separations (a least-squares fit guarded by the minimum
/// chord rate, so oscillatory envelopes cannot inflate it); beta is then the
/// smallest grid-wise constant >= 1. Throws NotTrichotomicError when no
/// positive decay rate exists, carrying the worst (t, s) pair.
TrichotomyCertificate certify_trichotomy(const TransitionOperator& op,
                                         const ProjectionPair& pair, const GridSpec& grid,
                                         std::optional<double> alpha_seed = std::nullopt);

/// Sampled sup of |U(t) P1 U^-1(s)| over s <= t pairs (kappa1) and of
/// |U(t) P4 U^-1(s)| over s >= t pairs (kappa2), the orderings on which the
/// second Green kernel uses those blocks. Throws UnboundedBlockError when a
/// sup exceeds 1e12.
std::pair<double, double> estimate_kappas(const TransitionOperator& op,
                                          const SplitProjections& split, const GridSpec& grid);

/// Max over the grid of |G(t+T, s+T) - G(t, s)| (and of the second kernel
/// when a split is given). s samples are offset by half a step so the
/// diagonal is never touched. Throws DomainError when the operator window
/// cannot host the shifted queries.
CheckReport kernel_periodicity_check(const TransitionOperator& op, const ProjectionPair& pair,
                                     const std::optional<SplitProjections>& split, double T,
                                     const GridSpec& grid);

}  // namespace trilin
