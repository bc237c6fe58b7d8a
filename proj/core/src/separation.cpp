#include "trilin/separation.hpp"

#include <cmath>

namespace trilin {

SeparationBound separation_envelope(const SystemSpec& system, EnvelopeKind which,
                                    Interval window, double step) {
    double sup_a = 0.0;
    for (double t = window.lo; t <= window.hi + 1e-12; t += step)
        sup_a = std::max(sup_a, op_norm(system.A(t)));
    if (!std::isfinite(sup_a))
        throw EnvelopeFailureError("sampled coefficient norm is not finite");

    double rate = sup_a;
    if (which == EnvelopeKind::Nonlinear && system.has_nonlinear()) {
        if (system.bound_mode == BoundMode::BoundedLipschitz) {
            rate += system.gamma;
        } else {
            double sup_psi = 0.0;
            for (double t = window.lo; t <= window.hi + 1e-12; t += step)
                sup_psi = std::max(sup_psi, system.psi ? system.psi(t) : 0.0);
            rate += sup_psi;
        }
    }
    if (!std::isfinite(rate))
        throw EnvelopeFailureError("separation rate is not finite");
    return SeparationBound{rate, which};
}

}  // namespace trilin
