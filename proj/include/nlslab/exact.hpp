#pragma once

#include "nlslab/spectral.hpp"

#include <string>
#include <vector>

namespace nlslab {

struct NlsSolitonParams {
    double N = 0.0;
    double omega = 1.0;
};

struct DnlsFamilyParams {
    double N = 0.0;
    double omega = 1.0;

    double gamma() const;
    double alpha() const;
    void validate() const;
};

// f(x) = sqrt(2)/cosh(x)
double soliton_profile(double x);
// u(x,t) = exp(-i t (N^2 - w^2) + i N x) w f(w (x - 2 N t))
SampledField nls_soliton(const NlsSolitonParams& p, const SpaceGrid& grid, double t);

double dnls_phase(double x, double alpha);     // 3 arctan((e^x + a)/sqrt(1 - a^2))
double dnls_amplitude(double x, double alpha); // (cosh x + a)^(-1/2)
// u(x,t) = exp(i(N x/2 + (w - N^2/2) t)) w^(-1/4) g F(g (x - N t))
SampledField dnls_family(const DnlsFamilyParams& p, const SpaceGrid& grid, double t);

// Largest |u| among the two outermost samples relative to the peak.
double boundary_ratio(const SampledField& f);

struct SeparationRow {
    double N = 0.0;
    double N_prime = 0.0;
    double data_distance = 0.0;
    double solution_distance = 0.0;
    double alpha = 0.0;
    double alpha_prime = 0.0;
    double box_length = 0.0;
    int points = 0;
    bool flagged = false;
    std::string note;
};

struct SeparationTable {
    double s = 0.0, r = 2.0, T = 1.0, C = 1.0;
    std::vector<SeparationRow> rows;
};

// Box and resolution rule for the separation experiments: length covers both
// packets at time T plus tails, and at least 8 points per carrier wavelength.
SpaceGrid separation_grid(double max_position, double min_width, double max_carrier);

SeparationTable illposed_nls_experiment(double s, double r, double T, const std::vector<double>& N_list, double C);
SeparationTable illposed_dnls_experiment(double s, double r, double T, const std::vector<double>& N_list, double C);

} // namespace nlslab
