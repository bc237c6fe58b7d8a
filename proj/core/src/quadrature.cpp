#include "trilin/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace trilin {

QuadratureScheme make_quadrature(const SystemSpec& system, const TrichotomyCertificate& cert,
                                 const std::optional<SplitProjections>& split,
                                 Interval window, const QuadratureOverrides& overrides) {
    QuadratureScheme q;
    q.window = window;
    q.step = overrides.step.value_or(0.01);
    q.tail_tol = overrides.tail_tol.value_or(1e-8);

    const double reach = window.hi - window.lo;
    if (overrides.half_width) {
        q.half_width = *overrides.half_width;
    } else if (system.bound_mode == BoundMode::BoundedLipschitz) {
        if (system.mu > 0 && cert.alpha > 0) {
            double s_formula =
                std::log(3.0 * cert.beta * system.mu / (cert.alpha * q.tail_tol)) /
                cert.alpha;
            q.half_width = std::clamp(s_formula, 1.0, reach);
        } else {
            q.half_width = 1.0;  // f == 0: any truncation is exact
        }
    } else {
        q.half_width = reach;
    }

    if (system.bound_mode == BoundMode::BoundedLipschitz) {
        if (system.mu > 0 && cert.alpha > 0)
            q.tail_estimate = cert.beta * system.mu / cert.alpha *
                              std::exp(-cert.alpha * q.half_width);
    } else if (system.phi) {
        // Neglected mass sup over anchors of (kappa1 + kappa2 + beta) times
        // the phi integral outside [t - S, t + S], within the window.
        double kfac = cert.beta;
        if (split) kfac += split->kappa1 + split->kappa2;
        double worst = 0.0;
        const double dt = std::max(0.05, reach / 400.0);
        for (double t = window.lo; t <= window.hi + 1e-12; t += reach / 20.0) {
            double mass = 0.0;
            for (double s = window.lo; s + dt <= window.hi + 1e-12; s += dt) {
                double mid = s + 0.5 * dt;
                if (std::abs(mid - t) <= q.half_width) continue;
                mass += 0.5 * dt * (system.phi(s) + system.phi(s + dt));
            }
            worst = std::max(worst, mass);
        }
        q.tail_estimate = kfac * worst;
    }
    return q;
}

NodeSet build_node_set(double anchor, Interval window, double S, double step,
                       bool extend_left, bool extend_right) {
    double core_lo = std::min(0.0, anchor);
    double core_hi = std::max(0.0, anchor);
    double lo = extend_left ? std::min(core_lo, anchor - S) : core_lo;
    double hi = extend_right ? std::max(core_hi, anchor + S) : core_hi;
    lo = std::max(lo, window.lo);
    hi = std::min(hi, window.hi);

    std::vector<double> breaks{lo, hi};
    if (0.0 > lo && 0.0 < hi) breaks.push_back(0.0);
    if (anchor > lo && anchor < hi) breaks.push_back(anchor);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                 breaks.end());

    NodeSet ns;
    if (hi - lo < 1e-13) {
        ns.nodes.push_back(anchor);
        ns.idx_anchor = 0;
        ns.idx_zero = std::abs(anchor) < 1e-13 ? 0 : -1;
        return ns;
    }

    for (size_t b = 0; b + 1 < breaks.size(); ++b) {
        double a = breaks[b], c = breaks[b + 1];
        int m = (int)std::ceil((c - a) / step);
        m = std::max(2, m + (m % 2));  // even, at least 2
        double h = (c - a) / m;
        NodeSet::Segment seg;
        seg.first = ns.nodes.empty() ? 0 : (int)ns.nodes.size() - 1;
        int start_i = ns.nodes.empty() ? 0 : 1;
        for (int i = start_i; i <= m; ++i) ns.nodes.push_back(a + i * h);
        if (start_i == 0) ns.nodes[0] = a;  // exact breakpoint
        seg.last = (int)ns.nodes.size() - 1;
        ns.nodes[seg.last] = c;  // pin the right breakpoint exactly
        seg.h = h;
        ns.segments.push_back(seg);
    }

    auto find_node = [&](double x) {
        for (size_t i = 0; i < ns.nodes.size(); ++i)
            if (std::abs(ns.nodes[i] - x) < 1e-12) return (int)i;
        return -1;
    };
    ns.idx_zero = find_node(0.0);
    ns.idx_anchor = find_node(anchor);
    return ns;
}

std::vector<Vec> cumulative_integral(const NodeSet& ns, const std::vector<Vec>& v) {
    std::vector<Vec> C(ns.nodes.size());
    if (v.empty()) return C;
    const int dim = (int)v[0].size();
    C[0] = Vec::Zero(dim);
    for (size_t i = 1; i < C.size(); ++i) C[i] = Vec::Zero(dim);

    for (const auto& seg : ns.segments) {
        const double h = seg.h;
        for (int j = seg.first; j + 2 <= seg.last; j += 2) {
            // Half-panel (5-8-(-1))/12 rule, then the full Simpson panel.
            C[j + 1] = C[j] + (h / 12.0) * (5.0 * v[j] + 8.0 * v[j + 1] - v[j + 2]);
            C[j + 2] = C[j] + (h / 3.0) * (v[j] + 4.0 * v[j + 1] + v[j + 2]);
        }
    }
    return C;
}

double integrate_nodes(const NodeSet& ns, const std::vector<double>& v) {
    double total = 0.0;
    for (const auto& seg : ns.segments) {
        const double h = seg.h;
        for (int j = seg.first; j + 2 <= seg.last; j += 2)
            total += (h / 3.0) * (v[j] + 4.0 * v[j + 1] + v[j + 2]);
    }
    return total;
}

}  // namespace trilin
