#include "nlslab/exact.hpp"

#include "nlslab/errors.hpp"
#include "nlslab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlslab {

double DnlsFamilyParams::gamma() const { return std::sqrt(4.0 * omega - N * N); }

double DnlsFamilyParams::alpha() const { return N / (2.0 * std::sqrt(omega)); }

void DnlsFamilyParams::validate() const {
    require(N >= 0.0, "DNLS family needs N >= 0");
    require(omega > 0.25 * N * N, "DNLS family needs omega > N^2/4 (alpha^2 < 1)");
}

double soliton_profile(double x) { return std::numbers::sqrt2 / std::cosh(x); }

SampledField nls_soliton(const NlsSolitonParams& p, const SpaceGrid& grid, double t) {
    require(p.omega > 0.0, "soliton scale omega must be positive");
    SampledField u(grid);
    const double w = p.omega;
    for (int j = 0; j < grid.n; ++j) {
        double x = grid.x(j);
        double ph = -t * (p.N * p.N - w * w) + p.N * x;
        u.values[j] = std::polar(w * soliton_profile(w * (x - 2.0 * p.N * t)), ph);
    }
    return u;
}

double dnls_phase(double x, double alpha) {
    return 3.0 * std::atan((std::exp(x) + alpha) / std::sqrt(1.0 - alpha * alpha));
}

double dnls_amplitude(double x, double alpha) {
    // cosh x overflows near |x| = 710; the amplitude is zero to double precision long before
    if (std::abs(x) > 700.0) return 0.0;
    return 1.0 / std::sqrt(std::cosh(x) + alpha);
}

SampledField dnls_family(const DnlsFamilyParams& p, const SpaceGrid& grid, double t) {
    p.validate();
    const double g = p.gamma(), a = p.alpha();
    const double amp = std::pow(p.omega, -0.25) * g;
    SampledField u(grid);
    for (int j = 0; j < grid.n; ++j) {
        double x = grid.x(j);
        double y = g * (x - p.N * t);
        double ph = 0.5 * p.N * x + (p.omega - 0.5 * p.N * p.N) * t + dnls_phase(y, a);
        u.values[j] = std::polar(amp * dnls_amplitude(y, a), ph);
    }
    return u;
}

double boundary_ratio(const SampledField& f) {
    double peak = 0.0;
    for (const auto& z : f.values) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) return 0.0;
    double edge = std::max(std::abs(f.values.front()), std::abs(f.values.back()));
    return edge / peak;
}

SpaceGrid separation_grid(double max_position, double min_width, double max_carrier) {
    double L = 4.0 * (max_position + 10.0 * min_width);
    // 8 points per carrier wavelength, and the lattice must reach well past the carrier
    double need = std::max(8.0 * L * max_carrier / (2.0 * std::numbers::pi),
                           L * (max_carrier + 40.0 / min_width) / std::numbers::pi);
    int n = 64;
    while (n < need) n *= 2;
    return SpaceGrid(L, n);
}

namespace {

double hrs_distance(const SampledField& a, const SampledField& b, double s, double r) {
    return fourier_lebesgue_norm(a - b, {s, r});
}

} // namespace

SeparationTable illposed_nls_experiment(double s, double r, double T, const std::vector<double>& N_list, double C) {
    require(r > 1.0, "ill-posedness experiment needs r > 1");
    const double rp = dual(r);
    require(s > -1.0 / rp && s <= 0.0, "NLS separation needs -1/r' < s <= 0 (s = 0 only as control)");
    require(T > 0.0, "separation time T must be positive");
    require(!N_list.empty(), "N ladder is empty");
    SeparationTable tab{s, r, T, C, {}};
    for (double N : N_list) {
        require(N > 0.0, "ladder frequencies must be positive");
        SeparationRow row;
        double omega = std::pow(N, -s * rp);
        double N2 = N - (C / T) * std::pow(N, s * rp);
        row.N = N;
        row.N_prime = N2;
        double far = 2.0 * std::max(std::abs(N), std::abs(N2)) * T;
        SpaceGrid g = separation_grid(far, 1.0 / omega, std::max(std::abs(N), std::abs(N2)) + omega);
        row.box_length = g.L;
        row.points = g.n;
        NlsSolitonParams p1{N, omega}, p2{N2, omega};
        row.data_distance = hrs_distance(nls_soliton(p1, g, 0.0), nls_soliton(p2, g, 0.0), s, r);
        row.solution_distance = hrs_distance(nls_soliton(p1, g, T), nls_soliton(p2, g, T), s, r);
        if (std::abs(N - N2) * T <= 10.0 / omega) {
            row.flagged = true;
            row.note = "packets not separated at T";
        }
        tab.rows.push_back(row);
    }
    std::stable_sort(tab.rows.begin(), tab.rows.end(),
                     [](const SeparationRow& a, const SeparationRow& b) { return a.N < b.N; });
    return tab;
}

SeparationTable illposed_dnls_experiment(double s, double r, double T, const std::vector<double>& N_list, double C) {
    require(r > 1.0, "ill-posedness experiment needs r > 1");
    const double rp = dual(r);
    require(s < 0.5 && s > 0.5 - 1.0 / rp, "DNLS separation needs 1/2 > s > 1/2 - 1/r'");
    require(T > 0.0, "separation time T must be positive");
    require(C > 0.0, "frequency offset C must be positive");
    require(!N_list.empty(), "N ladder is empty");
    SeparationTable tab{s, r, T, C, {}};
    for (double N : N_list) {
        require(N > 0.0, "ladder frequencies must be positive");
        SeparationRow row;
        double Np = N + C;
        double lift = std::pow(N, rp * (1.0 - 2.0 * s));
        DnlsFamilyParams p1{N, 0.25 * (N * N + lift)};
        DnlsFamilyParams p2{Np, 0.25 * (Np * Np + lift * Np * Np / (N * N))};
        row.N = N;
        row.N_prime = Np;
        row.alpha = p1.alpha();
        row.alpha_prime = p2.alpha();
        if (row.alpha * row.alpha >= 1.0 || row.alpha_prime * row.alpha_prime >= 1.0) {
            row.flagged = true;
            row.note = "alpha^2 >= 1";
            tab.rows.push_back(row);
            continue;
        }
        double g1 = p1.gamma(), g2 = p2.gamma();
        double gmin = std::min(g1, g2);
        SpaceGrid g = separation_grid(Np * T, 1.0 / gmin, 0.5 * Np + 2.0 * std::max(g1, g2));
        row.box_length = g.L;
        row.points = g.n;
        row.data_distance = hrs_distance(dnls_family(p1, g, 0.0), dnls_family(p2, g, 0.0), s, r);
        row.solution_distance = hrs_distance(dnls_family(p1, g, T), dnls_family(p2, g, T), s, r);
        if ((Np - N) * T <= 10.0 * std::max(1.0 / g1, 1.0 / g2)) {
            row.flagged = true;
            row.note = "concentration intervals overlap at T";
        }
        tab.rows.push_back(row);
    }
    std::stable_sort(tab.rows.begin(), tab.rows.end(),
                     [](const SeparationRow& a, const SeparationRow& b) { return a.N < b.N; });
    return tab;
}

} // namespace nlslab
