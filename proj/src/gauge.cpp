#include "nlslab/gauge.hpp"

#include "nlslab/errors.hpp"
#include "nlslab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlslab {

namespace {

void check_left_decay(const SampledField& f, double tol) {
    double peak = 0.0;
    for (const auto& z : f.values) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) return;
    double edge = std::abs(f.values.front());
    if (edge > tol * peak) {
        std::ostringstream os;
        os << "gauge transform needs decayed data at the left boundary: |f| = " << edge << " (" << edge / peak
           << " of peak, limit " << tol << ")";
        throw PreconditionError(os.str());
    }
}

} // namespace

GaugePhase gauge_phase(const SampledField& f, const GaugeOptions& opt) {
    f.validate();
    check_left_decay(f, opt.boundary_tolerance);
    const int n = f.grid.n;
    const double dx = f.grid.dx();
    RVec dens(n);
    for (int j = 0; j < n; ++j) dens[j] = std::norm(f.values[j]);
    GaugePhase g;
    g.phi.assign(n, 0.0);
    if (opt.quadrature == PhaseQuadrature::trapezoid) {
        for (int j = 1; j < n; ++j) g.phi[j] = g.phi[j - 1] + 0.5 * dx * (dens[j - 1] + dens[j]);
    } else {
        // mean part integrates linearly, the rest through 1/(i xi)
        double mean = 0.0;
        for (double d : dens) mean += d;
        mean /= n;
        SampledField rest(f.grid);
        for (int j = 0; j < n; ++j) rest.values[j] = dens[j] - mean;
        SpectralField R = forward_fourier(rest);
        for (int i = 0; i < n; ++i) {
            double xi = f.grid.xi(i);
            R.coeffs[i] = (xi == 0.0 || i == 0) ? cplx(0.0) : R.coeffs[i] / cplx(0.0, xi);
        }
        SampledField anti = inverse_fourier(R);
        double base = anti.values[0].real();
        for (int j = 0; j < n; ++j) g.phi[j] = mean * (j * dx) + anti.values[j].real() - base;
    }
    double tot = 0.0;
    for (double d : dens) tot += d;
    g.total = tot * dx;
    return g;
}

SampledField gauge_forward(const SampledField& f, const GaugeOptions& opt) {
    GaugePhase g = gauge_phase(f, opt);
    SampledField out = f;
    for (int j = 0; j < f.grid.n; ++j) out.values[j] *= std::polar(1.0, -g.phi[j]);
    return out;
}

SampledField gauge_inverse(const SampledField& f, const GaugeOptions& opt) {
    GaugePhase g = gauge_phase(f, opt);
    SampledField out = f;
    for (int j = 0; j < f.grid.n; ++j) out.values[j] *= std::polar(1.0, g.phi[j]);
    return out;
}

double gauge_lipschitz_probe(const SampledField& u, const SampledField& v, double s, double r, double alpha,
                             const GaugeOptions& opt) {
    require(s >= 0.5 && s <= 1.0, "Lipschitz probe covers 1/2 <= s <= 1");
    require(r > 1.0 && r <= 2.0, "Lipschitz probe covers 1 < r <= 2");
    FourierLebesgueSpec spec{s, r};
    double diff = fourier_lebesgue_norm(u - v, spec);
    require(diff > 0.0, "Lipschitz probe needs u != v");
    double top = fourier_lebesgue_norm(gauge_forward(u, opt) - gauge_forward(v, opt), spec);
    double nu = fourier_lebesgue_norm(u, spec), nv = fourier_lebesgue_norm(v, spec);
    return top / (std::pow(1.0 + nu + nv, alpha + 1.0) * diff);
}

} // namespace nlslab
