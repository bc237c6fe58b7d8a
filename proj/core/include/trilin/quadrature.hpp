#pragma once

#include <optional>
#include <vector>

#include "trilin/linalg.hpp"
#include "trilin/projections.hpp"
#include "trilin/system.hpp"
#include "trilin/transition.hpp"
#include "trilin/trichotomy.hpp"

namespace trilin {

/// Truncated-quadrature parameters for the improper Green-function
/// integrals: composite Simpson with node spacing <= step over
/// [t - S, t + S] plus the fixed interval to 0, clipped to the window.
struct QuadratureScheme {
    double half_width = 10.0;  // S
    double step = 0.01;
    double tail_tol = 1e-8;
    Interval window{-10.0, 10.0};
    double tail_estimate = 0.0;  // recorded when the scheme is derived
};

struct QuadratureOverrides {
    std::optional<double> half_width;
    std::optional<double> step;
    std::optional<double> tail_tol;
};

/// Derives the truncation half-width from the certificate: in bounded mode
/// S = ln(3 beta mu / (alpha tail_tol)) / alpha, capped at the window
/// reach; in integrable mode the window reach (the improper integrals are
/// evaluated over the whole window).
QuadratureScheme make_quadrature(const SystemSpec& system, const TrichotomyCertificate& cert,
                                 const std::optional<SplitProjections>& split,
                                 Interval window,
                                 const QuadratureOverrides& overrides = {});

/// Simpson node set over the union of [anchor - S, anchor + S] (per side,
/// when the corresponding infinite branch is active) and the fixed interval
/// between 0 and the anchor, with breakpoints at 0 and the anchor. Each
/// segment is uniform with an even interval count.
struct NodeSet {
    struct Segment {
        int first;  // node index range [first, last], last - first even
        int last;
        double h;
    };
    std::vector<double> nodes;
    std::vector<Segment> segments;
    int idx_zero = -1;
    int idx_anchor = -1;

    bool degenerate() const { return nodes.size() < 3; }
};

NodeSet build_node_set(double anchor, Interval window, double S, double step,
                       bool extend_left, bool extend_right);

/// Cumulative integral C[j] = integral of v from nodes[0] to nodes[j],
/// composite Simpson with the standard half-panel rule at odd offsets.
std::vector<Vec> cumulative_integral(const NodeSet& ns, const std::vector<Vec>& v);

/// Scalar version of cumulative_integral's total over the whole node set.
double integrate_nodes(const NodeSet& ns, const std::vector<double>& v);

}  // namespace trilin
