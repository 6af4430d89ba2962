#pragma once

#include "nlslab/solvers.hpp"
#include "nlslab/spectral.hpp"

#include <vector>

namespace nlslab {

struct SplitResult {
    SampledField u_le; // |u0^| <= 1/N
    SampledField u_gt; // |u0^| > 1/N
    double N = 1.0;
};

SplitResult split_data(const SampledField& u0, double N);

struct SplittingBounds {
    double small_part_ratio = 0.0; // ||u_le||_{L^rho^} / (||u0||_{L^r^}^{r'/rho'} N^{r'/rho' - 1})
    double large_part_ratio = 0.0; // ||u_gt||_{L^2} / (||u0||_{L^r^}^{r'/2} N^{r'/2 - 1})
};

// rho in (1, r], r in (1, 2]
SplittingBounds splitting_bounds_check(const SampledField& u0, double N, double r, double rho);

// c * mass^-(4 + eps); +inf for mass = 0
double stepwidth(double mass, double c, double eps);

struct GrowthReport {
    std::vector<double> times;
    std::vector<double> values; // ||z(t)||_{L^2}
    double slope = 0.0;
    double predicted = 0.0; // (r' - 2) / (10 - 4 r')
    double fit_from = 1.0, fit_to = 20.0;
    int fit_points = 0;
    double r = 2.0, T = 0.0;
    SolverConfig config;
};

// z(t) = u(t) - exp(it d^2) u0 for the cubic equation, sampled on geometric save
// times in [0.5, T] (cfg.save_times overrides), tail slope fitted over [1, min(T, 20)].
GrowthReport growth_experiment(const SampledField& u0, double r, double T, const SolverConfig& cfg);

struct VwReport {
    double N = 1.0, delta = 0.0, r = 2.0, T = 0.0;
    std::vector<double> times;     // step boundaries, starting at 0
    std::vector<double> v_norm;    // ||v(t_k)||_{L^2} after the restart at t_k
    std::vector<double> w_norm;    // ||w(t_k)||_{L^2}
    std::vector<double> increment; // ||v'(0)|| - ||v(delta)|| across each restart
    std::vector<double> sum_error; // ||v + w - u|| at each boundary
    SolverConfig config;
};

struct VwOptions {
    double c = 1.0;    // stepwidth constant
    double eps = 0.01; // the "0+" in the stepwidth exponent
};

// u = v + w bookkeeping: v solves the cubic equation from u_gt, w = u - v; at
// each boundary v restarts from u(t_k) - exp(i t_k d^2) u_le.
VwReport iterate_vw(const SampledField& u0, double N, double r, double T, const SolverConfig& cfg,
                    const VwOptions& opt = {});

} // namespace nlslab
