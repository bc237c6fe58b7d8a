#include "trilin/system.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace trilin {

SystemValidation validate_system(const SystemSpec& system, double t_lo, double t_hi,
                                 double state_box, double step, double tolerance) {
    SystemValidation v;
    const int n = system.dimension;
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(-state_box, state_box);

    auto random_state = [&]() {
        Vec x(n);
        for (int i = 0; i < n; ++i) x(i) = unif(rng);
        return x;
    };

    if (system.has_nonlinear()) {
        for (double t = t_lo; t <= t_hi + 1e-12; t += step) {
            for (int k = 0; k < 8; ++k) {
                Vec x1 = random_state();
                Vec x2 = random_state();
                double f1 = system.f(t, x1).norm();
                v.max_f_norm = std::max(v.max_f_norm, f1);
                double dx = (x1 - x2).norm();
                if (dx > 1e-10) {
                    double q = (system.f(t, x1) - system.f(t, x2)).norm() / dx;
                    v.max_difference_quotient = std::max(v.max_difference_quotient, q);
                }
                if (system.bound_mode == BoundMode::Integrable && system.phi) {
                    if (f1 > system.phi(t) + tolerance) v.bounds_ok = false;
                }
            }
        }
        if (system.bound_mode == BoundMode::BoundedLipschitz) {
            if (v.max_f_norm > system.mu + tolerance) v.bounds_ok = false;
            if (v.max_difference_quotient > system.gamma + tolerance) v.bounds_ok = false;
        } else {
            // Trapezoid integrals of the declared envelopes vs c1, c2.
            double iphi = 0.0, ipsi = 0.0;
            for (double t = t_lo; t + step <= t_hi + 1e-12; t += step) {
                if (system.phi) iphi += 0.5 * step * (system.phi(t) + system.phi(t + step));
                if (system.psi) ipsi += 0.5 * step * (system.psi(t) + system.psi(t + step));
            }
            v.phi_integral = iphi;
            v.psi_integral = ipsi;
            if (iphi > system.c1 + tolerance || ipsi > system.c2 + tolerance)
                v.bounds_ok = false;
        }
    }

    if (system.period) {
        double T = *system.period;
        for (double t = t_lo; t <= t_hi + 1e-12; t += step) {
            v.period_defect_A =
                std::max(v.period_defect_A, op_norm(system.A(t + T) - system.A(t)));
            if (system.has_nonlinear()) {
                Vec x = random_state();
                v.period_defect_f = std::max(
                    v.period_defect_f, (system.f(t + T, x) - system.f(t, x)).norm());
            }
        }
        v.period_ok =
            v.period_defect_A <= tolerance && v.period_defect_f <= tolerance;
        if (!v.period_ok) {
            std::ostringstream os;
            os << "declared period " << T << " not satisfied: sup|A(t+T)-A(t)| = "
               << v.period_defect_A << ", sup|f(t+T,x)-f(t,x)| = " << v.period_defect_f;
            v.notes = os.str();
        }
    }
    return v;
}

}  // namespace trilin
