#pragma once

#include "nlslab/spectral.hpp"

namespace nlslab {

// Dual exponent r' = r/(r-1); r must exceed 1.
double dual(double r);

struct FourierLebesgueSpec {
    double s = 0.0;
    double r = 2.0;
};

// time exponent p inside, space exponent q outside
struct MixedNormSpec {
    double q = 2.0;
    double p = 2.0;
};

struct XsbSpec {
    double s = 0.0;
    double b = 0.0;
    double r = 2.0;
    int sign = 1; // weight <tau + sign xi^2>
};

struct LebesgueSpacetimeSpec {
    double px = 2.0;
    double pt = 2.0;
    static LebesgueSpacetimeSpec single(double p) { return {p, p}; }
};

double fourier_lebesgue_norm(const SampledField& u, const FourierLebesgueSpec& spec);
double fourier_lebesgue_norm(const SpectralField& U, const FourierLebesgueSpec& spec);
// plain L^{r'} norm of a weighted spectrum, used by several callers
double weighted_spectral_norm(const SpectralField& U, double s, double rp);

double mixed_norm(const SpacetimeSpectrum& F, const MixedNormSpec& spec);
double xsb_norm(const SpacetimeSpectrum& F, const XsbSpec& spec);
double lebesgue_spacetime_norm(const SpacetimeField& f, const LebesgueSpacetimeSpec& spec);

} // namespace nlslab
