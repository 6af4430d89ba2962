#pragma once

#include "nlslab/spectral.hpp"

#include <string>
#include <vector>

namespace nlslab {

// NLS101:   i u_t + u_xx + |u|^2 u = 0
// GDNLS110: i v_t + v_xx + i v^2 conj(v)_x + |v|^4 v / 2 = 0
// DNLS109:  i u_t + u_xx = i (|u|^2 u)_x
enum class Equation { NLS101, GDNLS110, DNLS109 };

const char* equation_name(Equation eq);

enum class Scheme { Strang, Lie };

struct SolverConfig {
    double dt = 1e-3;
    int steps = 0;
    Scheme scheme = Scheme::Strang;
    bool dealias = true;
    // integrate towards negative times
    bool reverse = false;
    // snapshot times (mapped to the nearest step); empty means start and end only
    std::vector<double> save_times;
    // abort when the mass changes by more than this fraction in one step
    double blowup_fraction = 0.1;

    double horizon() const { return dt * steps; }
    static SolverConfig to_time(double T, double dt);
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SampledField> snapshots;
    std::vector<double> mass; // ||u||^2 at each snapshot
    SolverConfig config;
    Equation equation = Equation::NLS101;
    std::vector<std::string> warnings;

    const SampledField& final_state() const { return snapshots.back(); }
};

double mass(const SampledField& f);

Trajectory solve(const SampledField& u0, Equation eq, const SolverConfig& cfg);

// Max over interior snapshots of ||residual|| / (sum of the term norms), with
// fourth order central time differences (second order when fewer than five
// snapshots are available).  Snapshot times must be uniform.
double pde_residual(const Trajectory& traj, Equation eq);

Trajectory solve_dnls_via_gauge(const SampledField& u0, const SolverConfig& cfg);

// Trajectory built from given snapshots (for residual checks on closed forms).
Trajectory make_trajectory(const std::vector<double>& times, const std::vector<SampledField>& snaps, Equation eq);

} // namespace nlslab
