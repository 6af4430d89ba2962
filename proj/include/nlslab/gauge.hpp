#pragma once

#include "nlslab/spectral.hpp"

namespace nlslab {

struct GaugePhase {
    RVec phi;          // Phi(x_j) = integral of |f|^2 from the left edge to x_j
    double total = 0.0; // integral over the whole box
};

enum class PhaseQuadrature { spectral, trapezoid };

struct GaugeOptions {
    PhaseQuadrature quadrature = PhaseQuadrature::spectral;
    // |f| at the left edge must stay below this fraction of the peak
    double boundary_tolerance = 1e-8;
};

GaugePhase gauge_phase(const SampledField& f, const GaugeOptions& opt = {});

SampledField gauge_forward(const SampledField& f, const GaugeOptions& opt = {});
SampledField gauge_inverse(const SampledField& f, const GaugeOptions& opt = {});

// ||Gu - Gv|| / ((1 + ||u|| + ||v||)^(alpha+1) ||u - v||) in the Fourier-Lebesgue norm (s, r).
double gauge_lipschitz_probe(const SampledField& u, const SampledField& v, double s, double r, double alpha = 5.0,
                             const GaugeOptions& opt = {});

} // namespace nlslab
