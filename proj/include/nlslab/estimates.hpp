#pragma once

#include "nlslab/data.hpp"
#include "nlslab/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nlslab {

enum class EstimateTag { FS102, LEM1, COR1, LEM2, COR2, COR3, EQ298, LEM30, LEM31, L50i, L50ii, L50iii, LEM52 };

const std::vector<EstimateTag>& all_estimates();
std::string estimate_name(EstimateTag t);
EstimateTag parse_estimate(const std::string& name);

struct EstimateParams {
    double p = 2, q = 2;
    double r0 = 2, r1 = 2, r2 = 2;
    double r = 2, s = 0, b = 0.5, bp = 0;
    double rho = 1.5, rho0 = 1.6;
    double eps = 0.01; // the "0+" offset
    double delta = 1.0; // localisation scale in the LEM52 weight
};

struct EstimateId {
    EstimateTag tag = EstimateTag::LEM1;
    EstimateParams params;

    // Default exponents for each estimate (documented in the README).
    static EstimateId defaults(EstimateTag t, double eps = 0.01);
    // Throws PreconditionError naming the violated inequality.
    void check() const;
    // Number of input fields the ratio consumes.
    int inputs() const;
};

// Space lattice, time lattice and time window used to build trajectories.
struct LabSetup {
    SpaceGrid grid;
    TimeGrid times;
    WindowSpec window;

    static LabSetup ensemble_base();      // L = 32, n = 256, T_w = 8, m = 256, delta = 2
    LabSetup refined(int factor) const;  // n and m multiplied by factor
};

// LHS/RHS for one estimate.  Data-based estimates build free evolutions of the
// inputs; X-norm estimates use windowed free trajectories.
double estimate_ratio(const EstimateId& id, const std::vector<SampledField>& inputs, const LabSetup& setup);
// X-norm estimates evaluated on supplied space-time fields (already localised in time).
double estimate_ratio(const EstimateId& id, const std::vector<SpacetimeField>& inputs);
bool uses_spacetime_inputs(EstimateTag t);

struct RatioReport {
    EstimateId estimate;
    std::string profile;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<double> ratios;         // base resolution, by trial
    std::vector<double> ratios_refined; // refined resolution, by trial
    std::vector<std::string> failures;  // per trial, empty when the trial succeeded
    double max_ratio = 0, max_ratio_refined = 0;
    int argmax = -1;
    std::vector<int> ladder_points;
    std::vector<double> ladder;          // argmax trial at n, 2n, 4n
    double relative_change() const;      // |max_refined - max| / max
};

// Runs the ensemble at `setup` and at setup.refined(2).  The tag "mixed"
// cycles through white-spectrum, bump, modulated-bump and soliton-like.
RatioReport ensemble_sup_ratio(const EstimateId& id, int trials, std::uint64_t seed, const std::string& profile,
                               const LabSetup& setup = LabSetup::ensemble_base(), bool ladder = true);

// Input fields for one trial, deterministic in (profile, seed, trial).
std::vector<SampledField> trial_inputs(const EstimateId& id, const std::string& profile, std::uint64_t seed, int trial,
                                       const SpaceGrid& grid);

// Bilinear closed form 0.5 |xi|^(-1/p') u0^(xi/2 - tau/(2xi)) v0^(xi/2 + tau/(2xi)) for
// u = exp(it d^2) u0, v = exp(-it d^2) v0 under the transform convention of spectral.hpp.
cplx bilinear_closed_form(const SampledField& u0, const SampledField& v0, double p, double xi, double tau);
cplx bilinear_closed_form(const SpectralField& U0, const SpectralField& V0, double p, double xi, double tau);

struct IdentityOptions {
    double xi_min = 0.0;       // 0 selects 16 / T_w
    double threshold = 1e-2;   // probe only where rhs exceeds this fraction of its maximum
};

struct IdentityReport {
    std::vector<double> xi, lhs, rhs;
    double fitted_c = 0.0;
    double max_rel_dev = 0.0;
    std::vector<double> rel_dev;
    bool window_too_short = false;
    std::string note;
};

// lhs(xi) = int |F I^{1/p}(psi u v)|^{p'} dtau from the simulated product,
// rhs(xi) = (|u0^|^{p'} * |v0^|^{p'})(xi) by direct lattice convolution.
IdentityReport check_bilinear_identity(const SampledField& u0, const SampledField& v0, double p, const TimeGrid& times,
                                       const WindowSpec& window, const IdentityOptions& opt = {});

struct TrilinearValue {
    cplx value;
    double excluded_estimate = 0.0; // size of the skipped band |xi - xi1| < eta
};

// F(uvw)(xi,tau) for u, v = exp(it d^2)u0, v0 and w = exp(-it d^2) w0:
// (1/4pi) int |xi-xi1|^{-1} u0^(xi1) v0^(x) w0^(xi-xi1-x) dxi1, x = (xi^2 - 2 xi xi1 - tau)/(2(xi-xi1)).
// eta <= 0 selects 2 dxi.
TrilinearValue trilinear_quadrature(const SampledField& u0, const SampledField& v0, const SampledField& w0, double xi,
                                    double tau, double eta = 0.0);
// Same value from a two-dimensional lattice sum with a Gaussian-mollified delta of width `width`.
cplx trilinear_bruteforce(const SampledField& u0, const SampledField& v0, const SampledField& w0, double xi, double tau,
                          double width);

// FFT route: window, transform the simulated product and read off the bins.
struct TrilinearFft {
    SpacetimeSpectrum spectrum;
    cplx at(double xi, double tau) const; // nearest bin
    double bin_xi(double xi) const;
    double bin_tau(double tau) const;
};
TrilinearFft trilinear_fft(const SampledField& u0, const SampledField& v0, const SampledField& w0,
                           const TimeGrid& times, const WindowSpec& window);

// ||psi_delta f||_{X^r_{0,b'}} / ||psi_delta f||_{X^r_{0,b}} for each delta, and the log-log slope.
struct LocalizationResult {
    std::vector<double> deltas, ratios;
    double slope = 0.0;
};
LocalizationResult time_localization(const SpacetimeField& f, double r, double b, double bp,
                                     const std::vector<double>& deltas);
double time_localization_slope(const SpacetimeField& f, double r, double b, double bp,
                               const std::vector<double>& deltas);

// x-derivative of every time slice
SpacetimeField x_derivative(const SpacetimeField& f);

} // namespace nlslab
