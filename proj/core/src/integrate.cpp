#include "trilin/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace trilin {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
// Error coefficients b5 - b4.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output coefficients.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace

void DenseSolution::append(Segment seg) {
    if (segments_.empty()) {
        lo_ = std::min(seg.t0, seg.t1);
        hi_ = std::max(seg.t0, seg.t1);
        nodes_.push_back(seg.t0);
    } else {
        lo_ = std::min(lo_, std::min(seg.t0, seg.t1));
        hi_ = std::max(hi_, std::max(seg.t0, seg.t1));
    }
    nodes_.push_back(seg.t1);
    segments_.push_back(std::move(seg));
}

Vec DenseSolution::eval(double t) const {
    if (segments_.empty()) throw DomainError("dense solution is empty");
    if (!covers(t)) {
        std::ostringstream os;
        os << "time " << t << " outside covered range [" << lo_ << ", " << hi_ << "]";
        throw DomainError(os.str());
    }
    t = std::clamp(t, lo_, hi_);
    // Segments are stored in integration order and are monotone, either all
    // forward or all backward in time.
    const bool forward = segments_.back().t1 >= segments_.front().t0;
    auto seg_min = [](const Segment& s) { return std::min(s.t0, s.t1); };
    auto seg_max = [](const Segment& s) { return std::max(s.t0, s.t1); };

    int lo = 0, hi = (int)segments_.size() - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        bool before_mid = forward ? (t <= seg_max(segments_[mid]) + 1e-12)
                                  : (t >= seg_min(segments_[mid]) - 1e-12);
        if (before_mid)
            hi = mid;
        else
            lo = mid + 1;
    }
    const Segment& seg = segments_[lo];
    if (t < seg_min(seg) - 1e-9 || t > seg_max(seg) + 1e-9)
        throw DomainError("no dense segment covers requested time");

    double h = seg.t1 - seg.t0;
    double theta = h == 0.0 ? 0.0 : (t - seg.t0) / h;
    double th1 = 1.0 - theta;
    const Mat& r = seg.rcont;
    // u(theta) = r1 + theta*(r2 + th1*(r3 + theta*(r4 + th1*r5)))
    return r.col(0) +
           theta * (r.col(1) + th1 * (r.col(2) + theta * (r.col(3) + th1 * r.col(4))));
}

DenseSolution integrate_dense(const OdeField& field, double t0, const Vec& y0, double t1,
                              double tol) {
    if (!(tol > 0.0)) throw Error("integration tolerance must be positive");
    DenseSolution out;
    const int n = (int)y0.size();
    if (t0 == t1) {
        Mat r = Mat::Zero(n, 5);
        r.col(0) = y0;
        out.append({t0, t1, r});
        return out;
    }

    const double atol = tol, rtol = tol;
    const double direction = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    Vec y = y0;
    Vec k1 = field(t, y);
    double h = direction * std::max(1e-6, 0.01 * std::abs(t1 - t0));
    double err_old = 1e-4;
    const int max_steps = 10'000'000;

    Vec k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ynew(n), yerr(n);
    for (int step = 0; step < max_steps; ++step) {
        if ((t - t1) * direction >= 0.0) return out;
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os << "step size underflow at t = " << t;
            throw IntegrationError(os.str(), t);
        }
        if ((t + h - t1) * direction > 0.0) h = t1 - t;

        k2 = field(t + c2 * h, y + h * (a21 * k1));
        k3 = field(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        k4 = field(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = field(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = field(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        k7 = field(t + h, ynew);
        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            double sc = atol + rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
            double r = yerr(i) / sc;
            err += r * r;
        }
        err = std::sqrt(err / n);

        if (err <= 1.0 && std::isfinite(err)) {
            if (!ynew.allFinite()) {
                std::ostringstream os;
                os << "solution became non-finite near t = " << t;
                throw IntegrationError(os.str(), t);
            }
            Mat rcont(n, 5);
            Vec ydiff = ynew - y;
            rcont.col(0) = y;
            rcont.col(1) = ydiff;
            rcont.col(2) = h * k1 - ydiff;
            rcont.col(3) = ydiff - h * k7 - rcont.col(2);
            rcont.col(4) =
                h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            out.append({t, t + h, std::move(rcont)});

            t += h;
            y = ynew;
            k1 = k7;  // FSAL

            double fac = 0.9 * std::pow(err > 0 ? err : 1e-16, -0.2) *
                         std::pow(err_old, 0.08);
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            err_old = std::max(err, 1e-4);
        } else {
            if (!std::isfinite(err)) {
                h *= 0.1;
                continue;
            }
            double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
            h *= fac;
        }
    }
    throw IntegrationError("maximum step count exceeded", t);
}

const Vec& Trajectory::terminal_state() const {
    // Terminal means the endpoint away from the anchor.
    if (times.front() == anchor_time) return states.back();
    return states.front();
}

double Trajectory::terminal_time() const {
    if (times.front() == anchor_time) return times.back();
    return times.front();
}

OdeField flow_field(const SystemSpec& system, FlowKind which) {
    if (which == FlowKind::Linear) {
        return [&system](double t, const Vec& x) -> Vec { return system.A(t) * x; };
    }
    return [&system](double t, const Vec& x) -> Vec {
        return system.A(t) * x + system.f(t, x);
    };
}

Trajectory integrate_flow(const SystemSpec& system, FlowKind which, double t0, const Vec& x0,
                          double t1, double tol) {
    if (x0.size() != system.dimension)
        throw ShapeError("initial state dimension does not match system");
    OdeField field = flow_field(system, which);
    DenseSolution sol = integrate_dense(field, t0, x0, t1, tol);

    Trajectory traj;
    traj.anchor_time = t0;
    traj.anchor_state = x0;
    std::vector<double> ts = sol.nodes();
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             ts.end());
    for (double t : ts) {
        traj.times.push_back(t);
        traj.states.push_back(sol.eval(t));
    }
    // Pin the anchor state exactly.
    for (size_t i = 0; i < traj.times.size(); ++i)
        if (traj.times[i] == t0) traj.states[i] = x0;
    return traj;
}

}  // namespace trilin
