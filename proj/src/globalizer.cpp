#include "nlslab/globalizer.hpp"

#include "nlslab/errors.hpp"
#include "nlslab/fit.hpp"
#include "nlslab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlslab {

SplitResult split_data(const SampledField& u0, double N) {
    require(N > 0.0 && std::isfinite(N), "split threshold N must be positive");
    u0.validate();
    SpectralField U = forward_fourier(u0);
    SpectralField lo(U.grid), hi(U.grid);
    for (int i = 0; i < U.grid.n; ++i) {
        if (std::abs(U.coeffs[i]) <= 1.0 / N)
            lo.coeffs[i] = U.coeffs[i];
        else
            hi.coeffs[i] = U.coeffs[i];
    }
    SplitResult s{inverse_fourier(lo), inverse_fourier(hi), N};
    // keep the split exact in x: u_le absorbs the rounding of the two transforms
    for (int j = 0; j < u0.grid.n; ++j) s.u_le.values[j] = u0.values[j] - s.u_gt.values[j];
    if (hi.coeffs == CVec(U.grid.n, 0.0)) s.u_le = u0;
    return s;
}

SplittingBounds splitting_bounds_check(const SampledField& u0, double N, double r, double rho) {
    require(r > 1.0 && r <= 2.0, "splitting bounds need r in (1, 2]");
    require(rho > 1.0 && rho <= r, "splitting bounds need rho in (1, r]");
    SplitResult s = split_data(u0, N);
    const double rp = dual(r), rhop = dual(rho);
    double n0 = fourier_lebesgue_norm(u0, {0.0, r});
    SplittingBounds b;
    if (n0 == 0.0) return b;
    // spectra straight from the threshold, so the lattice inequalities hold exactly
    SpectralField U = forward_fourier(u0), lo(U.grid), hi(U.grid);
    for (int i = 0; i < U.grid.n; ++i)
        (std::abs(U.coeffs[i]) <= 1.0 / N ? lo : hi).coeffs[i] = U.coeffs[i];
    double small = fourier_lebesgue_norm(lo, {0.0, rho});
    double large = spectral_l2_norm(hi);
    b.small_part_ratio = small / (std::pow(n0, rp / rhop) * std::pow(N, rp / rhop - 1.0));
    b.large_part_ratio = large / (std::pow(n0, rp / 2.0) * std::pow(N, rp / 2.0 - 1.0));
    return b;
}

double stepwidth(double mass, double c, double eps) {
    require(mass >= 0.0 && std::isfinite(mass), "stepwidth needs a finite nonnegative norm");
    require(c > 0.0, "stepwidth constant must be positive");
    require(eps >= 0.0, "stepwidth offset must be nonnegative");
    if (mass == 0.0) return std::numeric_limits<double>::infinity();
    return c * std::pow(mass, -(4.0 + eps));
}

namespace {

void check_growth_exponent(double r) {
    require(r > 5.0 / 3.0 && r <= 2.0, "growth experiment needs r in (5/3, 2]");
}

} // namespace

GrowthReport growth_experiment(const SampledField& u0, double r, double T, const SolverConfig& cfg_in) {
    check_growth_exponent(r);
    require(T > 0.5, "growth horizon must exceed 0.5");
    u0.validate();
    SolverConfig cfg = cfg_in;
    cfg.reverse = false;
    cfg.steps = int(std::llround(T / cfg.dt));
    if (cfg.save_times.empty()) {
        const int K = 25;
        for (int k = 0; k < K; ++k) cfg.save_times.push_back(0.5 * std::pow(T / 0.5, double(k) / (K - 1)));
    }
    Trajectory tr = solve(u0, Equation::NLS101, cfg);
    GrowthReport rep;
    rep.r = r;
    rep.T = T;
    rep.config = cfg;
    const double rp = dual(r);
    rep.predicted = (rp - 2.0) / (10.0 - 4.0 * rp);
    rep.fit_to = std::min(T, 20.0);
    std::vector<double> lx, ly;
    for (size_t j = 0; j < tr.times.size(); ++j) {
        double t = tr.times[j];
        double z = l2_distance(tr.snapshots[j], free_propagate(u0, t, 1));
        rep.times.push_back(t);
        rep.values.push_back(z);
        if (t >= rep.fit_from - 1e-12 && t <= rep.fit_to + 1e-12 && z > 0.0) {
            lx.push_back(japanese(t));
            ly.push_back(z);
        }
    }
    rep.fit_points = int(lx.size());
    if (rep.fit_points >= 5) rep.slope = loglog_slope(lx, ly);
    else if (l2_norm(u0) > 0.0)
        throw PreconditionError("growth fit needs at least 5 save times in [1, 20]");
    return rep;
}

VwReport iterate_vw(const SampledField& u0, double N, double r, double T, const SolverConfig& cfg,
                    const VwOptions& opt) {
    check_growth_exponent(r);
    require(T > 0.0, "horizon must be positive");
    SplitResult s = split_data(u0, N);
    VwReport rep;
    rep.N = N;
    rep.r = r;
    rep.T = T;
    rep.config = cfg;
    const double dt = cfg.dt;
    const int total = int(std::llround(T / dt));
    require(total >= 1, "horizon shorter than one time step");
    double delta = stepwidth(l2_norm(s.u_gt), opt.c, opt.eps);
    int chunk = std::isfinite(delta) ? int(std::max(1.0, std::floor(delta / dt))) : total;
    chunk = std::min(chunk, total);
    rep.delta = chunk * dt;

    SolverConfig step = cfg;
    step.reverse = false;
    step.save_times.clear();

    SampledField u = u0, v = s.u_gt;
    int done = 0;
    auto record = [&](double t, const SampledField& uu, const SampledField& vv) {
        SampledField w = uu - vv;
        rep.times.push_back(t);
        rep.v_norm.push_back(l2_norm(vv));
        rep.w_norm.push_back(l2_norm(w));
        rep.sum_error.push_back(l2_distance(vv + w, uu));
    };
    record(0.0, u, v);
    while (done < total) {
        int k = std::min(chunk, total - done);
        step.steps = k;
        Trajectory tu = solve(u, Equation::NLS101, step);
        Trajectory tv = solve(v, Equation::NLS101, step);
        done += k;
        double t = done * dt;
        u = tu.final_state();
        double before = l2_norm(tv.final_state());
        v = u - free_propagate(s.u_le, t, 1);
        rep.increment.push_back(l2_norm(v) - before);
        record(t, u, v);
    }
    return rep;
}

} // namespace nlslab
