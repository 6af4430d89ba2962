#include "nlslab/estimates.hpp"

#include "fft.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/fit.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/parallel.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nlslab {

namespace {

constexpr double pi = std::numbers::pi;

const std::vector<EstimateTag> tags_all = {EstimateTag::FS102, EstimateTag::LEM1,   EstimateTag::COR1,
                                           EstimateTag::LEM2,  EstimateTag::COR2,   EstimateTag::COR3,
                                           EstimateTag::EQ298, EstimateTag::LEM30,  EstimateTag::LEM31,
                                           EstimateTag::L50i,  EstimateTag::L50ii,  EstimateTag::L50iii,
                                           EstimateTag::LEM52};

const char* names_all[] = {"FS102", "LEM1",  "COR1", "LEM2",  "COR2",   "COR3", "EQ298",
                           "LEM30", "LEM31", "L50i", "L50ii", "L50iii", "LEM52"};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void need(bool ok, const std::string& tag, const std::string& inequality, const std::string& values) {
    if (!ok) throw PreconditionError(tag + ": hypothesis " + inequality + " fails (" + values + ")");
}

constexpr double tol = 1e-12;

} // namespace

const std::vector<EstimateTag>& all_estimates() { return tags_all; }

std::string estimate_name(EstimateTag t) { return names_all[int(t)]; }

EstimateTag parse_estimate(const std::string& name) {
    for (size_t k = 0; k < tags_all.size(); ++k)
        if (name == names_all[k]) return tags_all[k];
    std::string all;
    for (auto n : names_all) all += (all.empty() ? "" : ", ") + std::string(n);
    throw PreconditionError("unknown estimate '" + name + "' (valid: " + all + ")");
}

EstimateId EstimateId::defaults(EstimateTag t, double eps) {
    EstimateId id;
    id.tag = t;
    auto& P = id.params;
    P.eps = eps;
    switch (t) {
    case EstimateTag::FS102:
        P.r = 2.0;
        break;
    case EstimateTag::LEM1:
    case EstimateTag::COR1:
        P.p = 4.0;
        P.q = 4.0 / 3.0;
        P.r1 = P.r2 = 2.0;
        break;
    case EstimateTag::LEM2: {
        // q = 2, 1/p' = 1/4 + e, 1/r0' = 3/4 - 2e, 1/r1' = 1/4, 1/r2' = 4e with e = 1/20
        const double e = 0.05;
        P.q = 2.0;
        P.p = 1.0 / (0.75 - e);
        P.r0 = 1.0 / (0.25 + 2 * e);
        P.r1 = 4.0 / 3.0;
        P.r2 = 1.0 / (1.0 - 4 * e);
        break;
    }
    case EstimateTag::COR2:
    case EstimateTag::COR3:
        P.p = 3.0;
        P.q = 1.25;
        break;
    case EstimateTag::EQ298:
        P.r = 2.0;
        P.bp = 0.0;
        P.b = 0.5 + eps;
        break;
    case EstimateTag::LEM30:
        P.r = 2.0;
        P.s = 0.5;
        P.b = 0.5 + eps;
        P.bp = -0.25;
        break;
    case EstimateTag::LEM31:
        P.r = 2.0;
        P.s = 0.5;
        P.b = 0.5 + eps;
        break;
    case EstimateTag::L50i:
        P.rho = 1.5;
        break;
    case EstimateTag::L50ii:
        P.rho = 1.6;
        P.b = 0.5 * (1.0 - 1.0 / 1.6) + 0.25 + eps;
        break;
    case EstimateTag::L50iii:
        P.rho = 1.25;
        P.rho0 = 1.6;
        P.b = 1.5 * (1.0 - 1.0 / 1.25) + 1.0 / 1.6 - 0.75 + eps;
        break;
    case EstimateTag::LEM52:
        P.rho = 1.5;
        P.rho0 = 1.0 / (0.25 + 0.5 / 1.5);
        break;
    }
    return id;
}

int EstimateId::inputs() const {
    switch (tag) {
    case EstimateTag::FS102: return 1;
    case EstimateTag::LEM1:
    case EstimateTag::COR1:
    case EstimateTag::LEM52: return 2;
    case EstimateTag::LEM31: return 5;
    default: return 3;
    }
}

bool uses_spacetime_inputs(EstimateTag t) {
    switch (t) {
    case EstimateTag::FS102:
    case EstimateTag::LEM1:
    case EstimateTag::LEM2:
    case EstimateTag::COR2: return false;
    default: return true;
    }
}

void EstimateId::check() const {
    const auto& P = params;
    const std::string T = estimate_name(tag);
    need(P.eps > 0, T, "eps > 0", "eps = " + fmt(P.eps));
    switch (tag) {
    case EstimateTag::FS102:
        need(P.r > 4.0 / 3.0 && std::isfinite(P.r), T, "4/3 < r < inf", "r = " + fmt(P.r));
        break;
    case EstimateTag::LEM1:
    case EstimateTag::COR1: {
        need(P.q > 1.0, T, "q > 1", "q = " + fmt(P.q));
        need(P.q <= P.r1 && P.q <= P.r2, T, "q <= r1, r2", "q = " + fmt(P.q));
        need(P.r1 <= P.p && P.r2 <= P.p && std::isfinite(P.p), T, "r1, r2 <= p < inf", "p = " + fmt(P.p));
        double lhs = 1 / P.p + 1 / P.q, rhs = 1 / P.r1 + 1 / P.r2;
        need(std::abs(lhs - rhs) < 1e-10, T, "1/p + 1/q = 1/r1 + 1/r2", fmt(lhs) + " vs " + fmt(rhs));
        break;
    }
    case EstimateTag::LEM2: {
        need(P.q > 1.0, T, "q > 1", "q = " + fmt(P.q));
        need(P.p > 1.0 && P.r0 > 1.0 && P.r1 > 1.0 && P.r2 > 1.0, T, "p, r0, r1, r2 > 1", "");
        double ip = 1 - 1 / P.p, i1 = 1 - 1 / P.r1, i2 = 1 - 1 / P.r2;
        need(i1 > 0 && i2 > 0, T, "0 < 1/r1', 1/r2'", "");
        need(i1 < ip - tol && i2 < ip - tol, T, "1/r1', 1/r2' < 1/p'",
             fmt(i1) + ", " + fmt(i2) + " vs " + fmt(ip));
        need(ip < std::min(1 / P.r0, i1 + i2) - tol, T, "1/p' < min(1/r0, 1/r1' + 1/r2')",
             fmt(ip) + " vs " + fmt(std::min(1 / P.r0, i1 + i2)));
        double lhs = 1 / P.r0 + 1 / P.r1 + 1 / P.r2, rhs = 1 / P.q + 2 / P.p;
        need(std::abs(lhs - rhs) < 1e-10, T, "1/r0 + 1/r1 + 1/r2 = 1/q + 2/p", fmt(lhs) + " vs " + fmt(rhs));
        break;
    }
    case EstimateTag::COR2:
    case EstimateTag::COR3:
        need(P.p > 1 && P.q > 1 && std::isfinite(P.p) && std::isfinite(P.q), T, "1 < p, q < inf", "");
        need(dual(P.p) > P.q || std::abs(P.p - P.q) < tol, T, "p' > q or p = q",
             "p' = " + fmt(dual(P.p)) + ", q = " + fmt(P.q));
        break;
    case EstimateTag::EQ298:
        need(P.r > 1, T, "r > 1", "r = " + fmt(P.r));
        need(P.bp <= 0, T, "b' <= 0", "b' = " + fmt(P.bp));
        need(P.b > 1 / P.r, T, "b > 1/r", "b = " + fmt(P.b));
        break;
    case EstimateTag::LEM30:
        need(P.r > 1, T, "r > 1", "r = " + fmt(P.r));
        need(P.s >= 0.5, T, "s >= 1/2", "s = " + fmt(P.s));
        need(P.b > 1 / P.r, T, "b > 1/r", "b = " + fmt(P.b));
        need(P.bp <= -0.5 / dual(P.r) + tol, T, "b' <= -1/(2r')", "b' = " + fmt(P.bp));
        break;
    case EstimateTag::LEM31:
        need(P.r > 1, T, "r > 1", "r = " + fmt(P.r));
        need(P.s >= 0.5, T, "s >= 1/2", "s = " + fmt(P.s));
        need(P.b > 1 / P.r, T, "b > 1/r", "b = " + fmt(P.b));
        break;
    case EstimateTag::L50i:
        need(P.rho > 1 && P.rho <= 2, T, "2 >= rho > 1", "rho = " + fmt(P.rho));
        break;
    case EstimateTag::L50ii:
        need(P.rho > 4.0 / 3.0 && P.rho <= 2, T, "2 >= rho > 4/3", "rho = " + fmt(P.rho));
        need(P.b > 0.5 / dual(P.rho) + 0.25, T, "b > 1/(2 rho') + 1/4", "b = " + fmt(P.b));
        break;
    case EstimateTag::L50iii: {
        need(P.rho0 > 4.0 / 3.0, T, "rho0 > 4/3", "rho0 = " + fmt(P.rho0));
        need(P.rho > 1 && P.rho <= 4.0 / 3.0, T, "4/3 >= rho > 1", "rho = " + fmt(P.rho));
        double lo = 1.5 / dual(P.rho) + 1 / P.rho0 - 0.75;
        need(lo >= 0, T, "3/(2 rho') + 1/rho0 - 3/4 >= 0", fmt(lo));
        need(P.b > lo, T, "b > 3/(2 rho') + 1/rho0 - 3/4", "b = " + fmt(P.b) + ", bound " + fmt(lo));
        break;
    }
    case EstimateTag::LEM52: {
        need(P.rho > 1 && P.rho <= 2, T, "rho in (1, 2]", "rho = " + fmt(P.rho));
        double want = 1.0 / (0.25 + 0.5 / P.rho);
        need(std::abs(P.rho0 - want) < 1e-9, T, "1/rho0 = 1/4 + 1/(2 rho)", "rho0 = " + fmt(P.rho0));
        break;
    }
    }
}

LabSetup LabSetup::ensemble_base() { return {SpaceGrid(32.0, 256), TimeGrid(8.0, 256), WindowSpec::smooth_cutoff(2.0)}; }

LabSetup LabSetup::refined(int factor) const {
    LabSetup s = *this;
    s.grid = SpaceGrid(grid.L, grid.n * factor);
    s.times = TimeGrid(times.span, times.m * factor, times.t0);
    return s;
}

SpacetimeField x_derivative(const SpacetimeField& f) {
    const int n = f.grid.n, m = f.times.m;
    SpacetimeField g = f;
    fft::dft_rows(g.values.data(), n, m, -1);
    for (int j = 0; j < m; ++j) {
        cplx* row = &g.values[size_t(j) * n];
        for (int q = 0; q < n; ++q) {
            int k = q < n / 2 ? q : q - n;
            double xi = 2.0 * pi * k / f.grid.L;
            row[q] *= cplx(0.0, xi) / double(n);
        }
        row[n / 2] = 0.0;
    }
    fft::dft_rows(g.values.data(), n, m, +1);
    return g;
}

namespace {

SpacetimeSpectrum st(const SpacetimeField& f) { return spacetime_transform(f, WindowSpec::plain()); }

double X(const SpacetimeField& f, double r, double s, double b) { return xsb_norm(st(f), {s, b, r, 1}); }

double X(const SpacetimeSpectrum& F, double r, double s, double b) { return xsb_norm(F, {s, b, r, 1}); }

double FL(const SampledField& f, double r) { return fourier_lebesgue_norm(f, {0.0, r}); }

SpacetimeField prod3c(const SpacetimeField& a, const SpacetimeField& b, const SpacetimeField& c) {
    // a b conj(c)
    SpacetimeField out = a;
    for (size_t k = 0; k < out.values.size(); ++k) out.values[k] *= b.values[k] * std::conj(c.values[k]);
    return out;
}

double safe_ratio(double lhs, double rhs) {
    require(rhs > 0.0, "estimate right-hand side vanishes");
    return lhs / rhs;
}

} // namespace

double estimate_ratio(const EstimateId& id, const std::vector<SpacetimeField>& in) {
    id.check();
    require(uses_spacetime_inputs(id.tag), estimate_name(id.tag) + " takes initial data, not space-time fields");
    require(int(in.size()) == id.inputs(), estimate_name(id.tag) + " needs " + std::to_string(id.inputs()) + " inputs");
    for (const auto& f : in) f.validate();
    const auto& P = id.params;
    const double e = P.eps;
    switch (id.tag) {
    case EstimateTag::COR1: {
        SpacetimeField prod = multiply(in[0], conj(in[1]));
        double lhs = mixed_norm(apply_multiplier(st(prod), MultiplierSpec::riesz_of(1.0 / P.p)), {P.q, P.p});
        double rhs = X(in[0], P.r1, 0, 1 / P.r1 + e) * X(in[1], P.r2, 0, 1 / P.r2 + e);
        return safe_ratio(lhs, rhs);
    }
    case EstimateTag::COR3: {
        double lhs = mixed_norm(st(prod3c(in[0], in[1], in[2])), {P.q, P.p});
        double rhs = X(in[0], P.q, 0, 1 / P.q + e) * X(in[1], P.p, 0, 1 / P.p + e) * X(in[2], P.p, 0, 1 / P.p + e);
        return safe_ratio(lhs, rhs);
    }
    case EstimateTag::EQ298: {
        double lhs = X(prod3c(in[0], in[1], in[2]), P.r, 0, P.bp);
        double rhs = X(in[0], P.r, 0, P.b) * X(in[1], P.r, 0, P.b) * X(in[2], P.r, 0, P.b);
        return safe_ratio(lhs, rhs);
    }
    case EstimateTag::LEM30: {
        SpacetimeField d3 = x_derivative(conj(in[2]));
        SpacetimeField prod = multiply(multiply(in[0], in[1]), d3);
        double lhs = X(prod, P.r, P.s, P.bp);
        double rhs = X(in[0], P.r, P.s, P.b) * X(in[1], P.r, P.s, P.b) * X(in[2], P.r, P.s, P.b);
        return safe_ratio(lhs, rhs);
    }
    case EstimateTag::LEM31: {
        SpacetimeField prod = multiply(multiply(in[0], in[1]), in[2]);
        prod = multiply(prod, conj(in[3]));
        prod = multiply(prod, conj(in[4]));
        double lhs = mixed_norm(apply_multiplier(st(prod), MultiplierSpec::bessel_of(P.s)), {P.r, P.r});
        double rhs = 1.0;
        for (const auto& f : in) rhs *= X(f, P.r, P.s, P.b);
        return safe_ratio(lhs, rhs);
    }
    case EstimateTag::L50i:
    case EstimateTag::L50ii:
    case EstimateTag::L50iii: {
        double lhs = mixed_norm(st(prod3c(in[0], in[1], in[2])), {P.rho, P.rho});
        double rhs;
        if (id.tag == EstimateTag::L50i)
            rhs = X(in[0], 2, 0, 0.5 + e) * X(in[1], 2, 0, 0.5 + e) * X(in[2], P.rho, 0, 0.5 + e);
        else if (id.tag == EstimateTag::L50ii)
            rhs = X(in[0], P.rho, 0, 1 / P.rho + e) * X(in[1], P.rho, 0, 1 / P.rho + e) * X(in[2], 2, 0, P.b);
        else
            rhs = X(in[0], 2, 0, P.b) * X(in[1], P.rho0, 0, 1 / P.rho0 + e) * X(in[2], P.rho0, 0, 1 / P.rho0 + e);
        return safe_ratio(lhs, rhs);
    }
    case EstimateTag::LEM52: {
        const auto& v = in[0];
        const auto& w = in[1];
        SpacetimeField N = v;
        for (size_t k = 0; k < N.values.size(); ++k) {
            cplx a = v.values[k], c = w.values[k];
            N.values[k] = 2.0 * std::norm(a) * c + a * a * std::conj(c) + 2.0 * a * std::norm(c) +
                          c * c * std::conj(a) + std::norm(c) * c;
        }
        double lhs = X(N, 2, 0, -0.5 + e);
        SpacetimeSpectrum V = st(v), W = st(w);
        double xv = X(V, 2, 0, 0.5 + e);
        double xw = X(W, P.rho, 0, 1 / P.rho + e);
        double xw0 = X(W, P.rho0, 0, 1 / P.rho0 + e);
        double dpow = std::pow(P.delta, 0.25 + 0.5 / dual(P.rho) - e);
        double rhs = (dpow * xv * xv + xv * xw + xw0 * xw0) * xw;
        return safe_ratio(lhs, rhs);
    }
    default: break;
    }
    throw PreconditionError("unhandled estimate");
}

double estimate_ratio(const EstimateId& id_in, const std::vector<SampledField>& in, const LabSetup& S) {
    EstimateId id = id_in;
    if (S.window.kind == WindowSpec::smooth) id.params.delta = S.window.delta;
    id.check();
    require(int(in.size()) == id.inputs(), estimate_name(id.tag) + " needs " + std::to_string(id.inputs()) + " inputs");
    for (const auto& f : in) require(f.grid == S.grid, "input field grid differs from the lab grid");
    const auto& P = id.params;
    if (uses_spacetime_inputs(id.tag)) {
        std::vector<SpacetimeField> tr;
        for (const auto& f : in) tr.push_back(free_solution(f, S.times, 1, S.window));
        return estimate_ratio(id, tr);
    }
    switch (id.tag) {
    case EstimateTag::FS102: {
        SpacetimeField u = free_solution(in[0], S.times, 1, S.window);
        double lhs = lebesgue_spacetime_norm(u, LebesgueSpacetimeSpec::single(3 * P.r));
        return safe_ratio(lhs, FL(in[0], P.r));
    }
    case EstimateTag::LEM1: {
        SpacetimeField prod = multiply(free_solution(in[0], S.times, 1), free_solution(in[1], S.times, -1));
        SpacetimeSpectrum F = spacetime_transform(prod, S.window);
        double lhs = mixed_norm(apply_multiplier(F, MultiplierSpec::riesz_of(1.0 / P.p)), {P.q, P.p});
        return safe_ratio(lhs, FL(in[0], P.r1) * FL(in[1], P.r2));
    }
    case EstimateTag::LEM2:
    case EstimateTag::COR2: {
        SpacetimeField prod = multiply(free_solution(in[0], S.times, 1), free_solution(in[1], S.times, 1));
        prod = multiply(prod, free_solution(in[2], S.times, -1));
        double lhs = mixed_norm(spacetime_transform(prod, S.window), {P.q, P.p});
        double rhs = id.tag == EstimateTag::LEM2 ? FL(in[0], P.r0) * FL(in[1], P.r1) * FL(in[2], P.r2)
                                                 : FL(in[0], P.q) * FL(in[1], P.p) * FL(in[2], P.p);
        return safe_ratio(lhs, rhs);
    }
    default: break;
    }
    throw PreconditionError("unhandled estimate");
}

std::vector<SampledField> trial_inputs(const EstimateId& id, const std::string& profile, std::uint64_t seed, int trial,
                                       const SpaceGrid& grid) {
    static const char* cycle[] = {"white-spectrum", "bump", "modulated-bump", "soliton-like"};
    std::string tag = profile == "mixed" ? cycle[trial % 4] : profile;
    DataProfile prof = DataProfile::parse(tag);
    std::vector<SampledField> out;
    for (int k = 0; k < id.inputs(); ++k)
        out.push_back(random_data(prof, seed, grid, std::uint64_t(trial) * 16 + std::uint64_t(k)));
    return out;
}

double RatioReport::relative_change() const {
    if (max_ratio == 0.0) return 0.0;
    return std::abs(max_ratio_refined - max_ratio) / max_ratio;
}

RatioReport ensemble_sup_ratio(const EstimateId& id, int trials, std::uint64_t seed, const std::string& profile,
                               const LabSetup& setup, bool ladder) {
    require(trials >= 1, "ensemble needs at least one trial");
    id.check();
    if (profile != "mixed") DataProfile::parse(profile);
    RatioReport rep;
    rep.estimate = id;
    rep.profile = profile;
    rep.seed = seed;
    rep.trials = trials;
    rep.ratios.assign(trials, 0.0);
    rep.ratios_refined.assign(trials, 0.0);
    rep.failures.assign(trials, "");
    LabSetup fine = setup.refined(2);
    parallel_for(2 * trials, [&](int job) {
        int t = job % trials;
        bool refined = job >= trials;
        const LabSetup& S = refined ? fine : setup;
        try {
            double v = estimate_ratio(id, trial_inputs(id, profile, seed, t, S.grid), S);
            (refined ? rep.ratios_refined : rep.ratios)[t] = v;
        } catch (const std::exception& e) {
            if (!refined) rep.failures[t] = e.what();
            (refined ? rep.ratios_refined : rep.ratios)[t] = std::nan("");
        }
    });
    for (int t = 0; t < trials; ++t) {
        if (std::isfinite(rep.ratios[t]) && (rep.argmax < 0 || rep.ratios[t] > rep.max_ratio)) {
            rep.max_ratio = rep.ratios[t];
            rep.argmax = t;
        }
        if (std::isfinite(rep.ratios_refined[t])) rep.max_ratio_refined = std::max(rep.max_ratio_refined, rep.ratios_refined[t]);
    }
    if (ladder && rep.argmax >= 0) {
        rep.ladder_points = {setup.grid.n, 2 * setup.grid.n, 4 * setup.grid.n};
        rep.ladder.assign(3, 0.0);
        parallel_for(3, [&](int k) {
            LabSetup S = setup.refined(1 << k);
            rep.ladder[k] = estimate_ratio(id, trial_inputs(id, profile, seed, rep.argmax, S.grid), S);
        });
    }
    return rep;
}

cplx bilinear_closed_form(const SpectralField& U0, const SpectralField& V0, double p, double xi, double tau) {
    require(xi != 0.0, "closed form is singular at xi = 0");
    require(p > 1.0 && std::isfinite(p), "closed form needs 1 < p < inf");
    double pp = dual(p);
    double a = 0.5 * xi - tau / (2.0 * xi), b = 0.5 * xi + tau / (2.0 * xi);
    return 0.5 * std::pow(std::abs(xi), -1.0 / pp) * U0.at(a) * V0.at(b);
}

cplx bilinear_closed_form(const SampledField& u0, const SampledField& v0, double p, double xi, double tau) {
    return bilinear_closed_form(forward_fourier(u0), forward_fourier(v0), p, xi, tau);
}

IdentityReport check_bilinear_identity(const SampledField& u0, const SampledField& v0, double p, const TimeGrid& times,
                                       const WindowSpec& window, const IdentityOptions& opt) {
    require(p > 1.0 && std::isfinite(p), "identity check needs 1 < p < inf");
    require(u0.grid == v0.grid, "u0 and v0 live on different grids");
    const double pp = dual(p);
    const SpaceGrid& g = u0.grid;
    const int n = g.n;
    IdentityReport rep;
    double xi_min = opt.xi_min > 0 ? opt.xi_min : 16.0 / times.span;
    if (window.kind == WindowSpec::smooth && window.delta * xi_min < 4.0) {
        rep.window_too_short = true;
        rep.note = "window line width exceeds the tau scale at the smallest probed xi";
    }
    SpacetimeField prod = multiply(free_solution(u0, times, 1), free_solution(v0, times, -1));
    SpacetimeSpectrum F = apply_multiplier(spacetime_transform(prod, window), MultiplierSpec::riesz_of(1.0 / p));
    RVec lhs(n, 0.0);
    for (int l = 0; l < times.m; ++l)
        for (int i = 0; i < n; ++i) lhs[i] += std::pow(std::abs(F(l, i)), pp);
    for (auto& v : lhs) v *= times.dtau();

    SpectralField U = forward_fourier(u0), V = forward_fourier(v0);
    RVec a(n), b(n), rhs(n, 0.0);
    for (int i = 0; i < n; ++i) {
        a[i] = std::pow(std::abs(U.coeffs[i]), pp);
        b[i] = std::pow(std::abs(V.coeffs[i]), pp);
    }
    // xi_i - xi_j sits at lattice index i - j + n/2
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            int k = i - j + n / 2;
            if (k < 0 || k >= n) continue;
            acc += a[j] * b[k];
        }
        rhs[i] = acc * g.dxi();
    }
    double rmax = *std::max_element(rhs.begin(), rhs.end());
    require(rmax > 0.0, "convolution of the spectra vanishes identically");
    for (int i = 0; i < n; ++i) {
        double xi = g.xi(i);
        if (std::abs(xi) < xi_min || rhs[i] < opt.threshold * rmax) continue;
        rep.xi.push_back(xi);
        rep.lhs.push_back(lhs[i]);
        rep.rhs.push_back(rhs[i]);
    }
    require(!rep.xi.empty(), "no probe frequencies above threshold");
    rep.fitted_c = fit_constant(rep.lhs, rep.rhs);
    for (size_t k = 0; k < rep.xi.size(); ++k) {
        double d = std::abs(rep.lhs[k] / (rep.fitted_c * rep.rhs[k]) - 1.0);
        rep.rel_dev.push_back(d);
        rep.max_rel_dev = std::max(rep.max_rel_dev, d);
    }
    return rep;
}

namespace {

struct TriCtx {
    const SpectralField *U, *V, *W;
    double xi, tau;
    int part;
};

cplx tri_integrand(const TriCtx& c, double xi1) {
    double d = c.xi - xi1;
    double x = (c.xi * c.xi - 2.0 * c.xi * xi1 - c.tau) / (2.0 * d);
    return c.U->at(xi1) * c.V->at(x) * c.W->at(c.xi - xi1 - x) / std::abs(d);
}

double tri_gsl(double xi1, void* p) {
    auto* c = static_cast<TriCtx*>(p);
    cplx v = tri_integrand(*c, xi1);
    return c->part == 0 ? v.real() : v.imag();
}

double integrate(TriCtx& c, double a, double b, gsl_integration_workspace* ws) {
    if (b <= a) return 0.0;
    gsl_function f{&tri_gsl, &c};
    double res = 0.0, err = 0.0;
    // split into lattice-scale pieces so the piecewise-linear integrand is resolved
    int pieces = std::max(1, int(std::ceil((b - a) / (64.0 * c.U->grid.dxi()))));
    double h = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) {
        double r = 0.0;
        gsl_integration_qag(&f, a + k * h, a + (k + 1) * h, 1e-14, 1e-9, 1000, GSL_INTEG_GAUSS21, ws, &r, &err);
        res += r;
    }
    return res;
}

} // namespace

TrilinearValue trilinear_quadrature(const SampledField& u0, const SampledField& v0, const SampledField& w0, double xi,
                                    double tau, double eta) {
    require(u0.grid == v0.grid && u0.grid == w0.grid, "trilinear inputs live on different grids");
    SpectralField U = forward_fourier(u0), V = forward_fourier(v0), W = forward_fourier(w0);
    const SpaceGrid& g = u0.grid;
    if (eta <= 0.0) eta = 2.0 * g.dxi();
    // support of u0^ on the lattice
    double umax = 0.0;
    for (const auto& z : U.coeffs) umax = std::max(umax, std::abs(z));
    TrilinearValue out{0.0, 0.0};
    if (umax == 0.0) return out;
    int lo = 0, hi = g.n - 1;
    while (lo < hi && std::abs(U.coeffs[lo]) <= 1e-16 * umax) ++lo;
    while (hi > lo && std::abs(U.coeffs[hi]) <= 1e-16 * umax) --hi;
    double a = g.xi(std::max(lo - 1, 0)), b = g.xi(std::min(hi + 1, g.n - 1));

    gsl_error_handler_t* old = gsl_set_error_handler_off();
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(1000);
    double re = 0.0, im = 0.0;
    for (int part = 0; part < 2; ++part) {
        TriCtx c{&U, &V, &W, xi, tau, part};
        double v = integrate(c, a, std::min(b, xi - eta), ws) + integrate(c, std::max(a, xi + eta), b, ws);
        (part == 0 ? re : im) = v;
    }
    gsl_integration_workspace_free(ws);
    gsl_set_error_handler(old);
    out.value = cplx(re, im) / (4.0 * pi);

    // midpoint sampling of the skipped band (never hits xi1 = xi exactly)
    TriCtx c{&U, &V, &W, xi, tau, 0};
    const int K = 64;
    double band = 0.0;
    for (int k = 0; k < K; ++k) {
        double s = -eta + (k + 0.5) * (2.0 * eta / K);
        band += std::abs(tri_integrand(c, xi + s));
    }
    out.excluded_estimate = band * (2.0 * eta / K) / (4.0 * pi);
    return out;
}

cplx trilinear_bruteforce(const SampledField& u0, const SampledField& v0, const SampledField& w0, double xi, double tau,
                          double width) {
    require(width > 0, "mollifier width must be positive");
    SpectralField U = forward_fourier(u0), V = forward_fourier(v0), W = forward_fourier(w0);
    const SpaceGrid& g = u0.grid;
    const double d = g.dxi();
    const double norm = 1.0 / (width * std::sqrt(2.0 * pi));
    cplx acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
        if (U.coeffs[i] == 0.0) continue;
        double x1 = g.xi(i);
        for (int j = 0; j < g.n; ++j) {
            double x2 = g.xi(j);
            double x3 = xi - x1 - x2;
            double arg = tau + x1 * x1 + x2 * x2 - x3 * x3;
            if (std::abs(arg) > 12.0 * width) continue;
            acc += U.coeffs[i] * V.coeffs[j] * W.at(x3) * (norm * std::exp(-0.5 * arg * arg / (width * width)));
        }
    }
    return acc * d * d / (2.0 * pi);
}

cplx TrilinearFft::at(double xi, double tau) const {
    int i = int(std::lround(xi / spectrum.grid.dxi())) + spectrum.grid.n / 2;
    int l = int(std::lround(tau / spectrum.times.dtau())) + spectrum.times.m / 2;
    require(i >= 0 && i < spectrum.grid.n && l >= 0 && l < spectrum.times.m, "probe outside the dual lattice");
    return spectrum(l, i);
}

double TrilinearFft::bin_xi(double xi) const {
    return spectrum.grid.dxi() * std::lround(xi / spectrum.grid.dxi());
}

double TrilinearFft::bin_tau(double tau) const {
    return spectrum.times.dtau() * std::lround(tau / spectrum.times.dtau());
}

TrilinearFft trilinear_fft(const SampledField& u0, const SampledField& v0, const SampledField& w0,
                           const TimeGrid& times, const WindowSpec& window) {
    SpacetimeField prod = multiply(free_solution(u0, times, 1), free_solution(v0, times, 1));
    prod = multiply(prod, free_solution(w0, times, -1));
    return TrilinearFft{spacetime_transform(prod, window)};
}

LocalizationResult time_localization(const SpacetimeField& f, double r, double b, double bp,
                                     const std::vector<double>& deltas) {
    require(deltas.size() >= 3, "slope fit needs at least 3 deltas");
    require(r > 1.0, "localisation needs r > 1");
    double rp = dual(r);
    bool pos = (1.0 / r > b) && (b > bp) && (bp >= 0.0);
    bool neg = (0.0 >= b) && (b > bp) && (bp > -1.0 / rp);
    bool same = std::abs(b - bp) < 1e-15 && ((b >= 0 && b < 1.0 / r) || (b <= 0 && b > -1.0 / rp));
    require(pos || neg || same, "exponents outside 1/r > b > b' >= 0 or 0 >= b > b' > -1/r'");
    LocalizationResult res;
    res.deltas = deltas;
    for (double d : deltas) {
        require(d > 0, "deltas must be positive");
        SpacetimeSpectrum F = spacetime_transform(f, WindowSpec::smooth_cutoff(d));
        double num = xsb_norm(F, {0.0, bp, r, 1});
        double den = xsb_norm(F, {0.0, b, r, 1});
        require(den > 0, "localised field vanishes");
        res.ratios.push_back(num / den);
    }
    res.slope = loglog_slope(res.deltas, res.ratios);
    return res;
}

double time_localization_slope(const SpacetimeField& f, double r, double b, double bp,
                               const std::vector<double>& deltas) {
    return time_localization(f, r, b, bp, deltas).slope;
}

} // namespace nlslab
