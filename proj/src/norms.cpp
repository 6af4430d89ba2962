#include "nlslab/norms.hpp"

#include "nlslab/errors.hpp"

#include <cmath>
#include <string>

namespace nlslab {

double dual(double r) {
    require(r > 1.0, "exponent must exceed 1, got " + std::to_string(r));
    if (std::isinf(r)) return 1.0;
    return r / (r - 1.0);
}

double weighted_spectral_norm(const SpectralField& U, double s, double rp) {
    double acc = 0.0;
    for (int i = 0; i < U.grid.n; ++i) {
        double a = std::abs(U.coeffs[i]);
        if (a == 0.0) continue;
        double xi = U.grid.xi(i);
        acc += std::pow(1.0 + xi * xi, 0.5 * s * rp) * std::pow(a, rp);
    }
    return std::pow(acc * U.grid.dxi(), 1.0 / rp);
}

double fourier_lebesgue_norm(const SpectralField& U, const FourierLebesgueSpec& spec) {
    require(spec.r > 1.0, "Fourier-Lebesgue exponent r must exceed 1 (r = 1 is the open critical case)");
    return weighted_spectral_norm(U, spec.s, dual(spec.r));
}

double fourier_lebesgue_norm(const SampledField& u, const FourierLebesgueSpec& spec) {
    require(spec.r > 1.0, "Fourier-Lebesgue exponent r must exceed 1 (r = 1 is the open critical case)");
    return fourier_lebesgue_norm(forward_fourier(u), spec);
}

double mixed_norm(const SpacetimeSpectrum& F, const MixedNormSpec& spec) {
    require(spec.q > 1.0 && spec.p > 1.0 && std::isfinite(spec.q) && std::isfinite(spec.p),
            "mixed norm exponents must be finite and exceed 1");
    const double pp = dual(spec.p), qp = dual(spec.q);
    const int n = F.grid.n, m = F.times.m;
    const double dtau = F.times.dtau();
    RVec inner(n, 0.0);
    for (int l = 0; l < m; ++l)
        for (int i = 0; i < n; ++i) {
            double a = std::abs(F(l, i));
            if (a != 0.0) inner[i] += std::pow(a, pp);
        }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        if (inner[i] == 0.0) continue;
        acc += std::pow(inner[i] * dtau, qp / pp);
    }
    return std::pow(acc * F.grid.dxi(), 1.0 / qp);
}

double xsb_norm(const SpacetimeSpectrum& F, const XsbSpec& spec) {
    require(spec.r > 1.0, "X-norm exponent r must exceed 1");
    require(spec.sign == 1 || spec.sign == -1, "X-norm phase sign must be +1 or -1");
    const double rp = dual(spec.r);
    const int n = F.grid.n, m = F.times.m;
    RVec wxi(n);
    for (int i = 0; i < n; ++i) {
        double xi = F.xi(i);
        wxi[i] = std::pow(1.0 + xi * xi, 0.5 * spec.s * rp);
    }
    double acc = 0.0;
    for (int l = 0; l < m; ++l) {
        double tau = F.tau(l);
        for (int i = 0; i < n; ++i) {
            double a = std::abs(F(l, i));
            if (a == 0.0) continue;
            double xi = F.xi(i);
            double sig = tau + spec.sign * xi * xi;
            acc += wxi[i] * std::pow(1.0 + sig * sig, 0.5 * spec.b * rp) * std::pow(a, rp);
        }
    }
    return std::pow(acc * F.grid.dxi() * F.times.dtau(), 1.0 / rp);
}

double lebesgue_spacetime_norm(const SpacetimeField& f, const LebesgueSpacetimeSpec& spec) {
    require(spec.px >= 1.0 && spec.pt >= 1.0, "Lebesgue exponents must be at least 1");
    const int n = f.grid.n, m = f.times.m;
    const double dx = f.grid.dx();
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        double row = 0.0;
        for (int k = 0; k < n; ++k) row += std::pow(std::abs(f(j, k)), spec.px);
        acc += std::pow(row * dx, spec.pt / spec.px);
    }
    return std::pow(acc * f.times.dt(), 1.0 / spec.pt);
}

} // namespace nlslab
