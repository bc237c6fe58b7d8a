#pragma once

#include <cmath>

#include "trilin/integrate.hpp"
#include "trilin/system.hpp"
#include "trilin/transition.hpp"

namespace trilin {

enum class EnvelopeKind { Linear, Nonlinear };

/// Gronwall envelope Delta(t,s) = exp(rate * |t-s|) bounding the growth of
/// the distance between two solutions of the chosen flow.
struct SeparationBound {
    double rate = 0.0;
    EnvelopeKind which = EnvelopeKind::Linear;

    double operator()(double t, double s) const { return std::exp(rate * std::abs(t - s)); }
};

/// rate = sampled sup of the operator norm of A over the window (plus the
/// Lipschitz constant of f for the nonlinear flow). Sampling step 0.05.
SeparationBound separation_envelope(const SystemSpec& system, EnvelopeKind which,
                                    Interval window, double step = 0.05);

}  // namespace trilin
