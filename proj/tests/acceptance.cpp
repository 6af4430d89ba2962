// Acceptance harness: one pass/fail line per criterion.
#include "nlslab/data.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/estimates.hpp"
#include "nlslab/exact.hpp"
#include "nlslab/gauge.hpp"
#include "nlslab/globalizer.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace nlslab;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

SampledField spectrum_field(const SpaceGrid& g, const std::function<double(double)>& fn) {
    return from_spectrum(g, [&](double xi) { return cplx(fn(xi)); });
}

// indicator of [lo, hi] with the mean value 1/2 on lattice points at the jumps
double indicator(double x, double lo, double hi) {
    const double e = 1e-9;
    if (x < lo - e || x > hi + e) return 0.0;
    if (std::abs(x - lo) < e || std::abs(x - hi) < e) return 0.5;
    return 1.0;
}

// 1: bilinear identity
Outcome ac1() {
    const double p = 2.0;
    auto setup = [](int scale) {
        return LabSetup{SpaceGrid(128 * pi * scale, 1024 * scale), TimeGrid(50.0 * scale, 1024 * scale),
                        WindowSpec::smooth_cutoff(12.5 * scale)};
    };
    // the refined run is compared on the same band of frequencies
    IdentityOptions opt;
    opt.xi_min = 16.0 / 50.0;
    auto run = [&](int scale, const std::function<double(double)>& a, const std::function<double(double)>& b) {
        LabSetup S = setup(scale);
        return check_bilinear_identity(spectrum_field(S.grid, a), spectrum_field(S.grid, b), p, S.times, S.window, opt);
    };
    // jumps in the spectra: probe where the supports overlap by at least a tenth of the maximum
    auto run_jump = [&](int scale, const std::function<double(double)>& a) {
        IdentityOptions o = opt;
        o.threshold = 0.1;
        LabSetup S = setup(scale);
        SampledField f = spectrum_field(S.grid, a);
        return check_bilinear_identity(f, f, p, S.times, S.window, o);
    };
    auto ga = [](double x) { return std::exp(-4.0 * (x - 1.0) * (x - 1.0)); };
    auto gb = [](double x) { return std::exp(-3.0 * (x - 0.8) * (x - 0.8)); };
    auto ia = [](double x) { return indicator(x, -1.0, 1.0); };
    IdentityReport g1 = run(1, ga, gb), g2 = run(2, ga, gb);
    IdentityReport i1 = run_jump(1, ia), i2 = run_jump(2, ia);
    // a deviation already at rounding level cannot shrink further
    auto shrinks = [](double a, double b) { return b < a || std::max(a, b) < 1e-8; };
    bool ok = g1.max_rel_dev < 0.02 && i1.max_rel_dev < 0.02 && shrinks(g1.max_rel_dev, g2.max_rel_dev) &&
              shrinks(i1.max_rel_dev, i2.max_rel_dev);
    std::string d = "gauss dev " + num(g1.max_rel_dev) + " -> " + num(g2.max_rel_dev) + ", indicator dev " +
                    num(i1.max_rel_dev) + " -> " + num(i2.max_rel_dev);

    // equality case: fitted constant over random pairs, and the LEM1 ratio against it
    LabSetup S = setup(1);
    auto random_pair_member = [&](int k) {
        Stream s(2024, k);
        double c[3], w[3];
        cplx a[3];
        for (int q = 0; q < 3; ++q) {
            c[q] = s.uniform(0.6, 1.4);
            w[q] = s.uniform(2.0, 6.0);
            a[q] = cplx(s.normal(), s.normal());
        }
        return from_spectrum(S.grid, [&](double xi) {
            cplx v = 0.0;
            for (int q = 0; q < 3; ++q) v += a[q] * std::exp(-w[q] * (xi - c[q]) * (xi - c[q]));
            return v;
        });
    };
    std::vector<double> cs(20);
    parallel_for(20, [&](int k) {
        cs[k] = check_bilinear_identity(random_pair_member(2 * k), random_pair_member(2 * k + 1), p, S.times, S.window)
                    .fitted_c;
    });
    double lo = *std::min_element(cs.begin(), cs.end()), hi = *std::max_element(cs.begin(), cs.end());
    double spread = (hi - lo) / (0.5 * (hi + lo));
    EstimateId id = EstimateId::defaults(EstimateTag::LEM1);
    id.params.p = id.params.q = id.params.r1 = id.params.r2 = p;
    SampledField u = spectrum_field(S.grid, ga), v = spectrum_field(S.grid, gb);
    double ratio = estimate_ratio(id, {u, v}, S);
    double c = check_bilinear_identity(u, v, p, S.times, S.window).fitted_c;
    double eq = std::abs(std::pow(ratio, dual(p)) / c - 1.0);
    ok = ok && spread < 0.02 && eq < 0.01;
    d += ", c* spread " + num(spread) + ", |ratio^p'/c* - 1| " + num(eq);
    return {ok, d};
}

// 2: trilinear quadrature vs FFT route
Outcome ac2() {
    SpaceGrid g(128 * pi, 2048);
    TimeGrid tg(64 * pi, 4096);
    WindowSpec w = WindowSpec::smooth_cutoff(tg.span / 4);
    SampledField u = spectrum_field(g, [](double x) { return std::exp(-x * x); });
    SampledField v = spectrum_field(g, [](double x) { return std::exp(-(x - 0.5) * (x - 0.5)); });
    SampledField z = spectrum_field(g, [](double x) { return std::exp(-1.5 * (x + 0.3) * (x + 0.3)); });
    TrilinearFft F = trilinear_fft(u, v, z, tg, w);
    const double xis[] = {-1.0, -0.5, 0.5, 1.0, 1.5};
    const double taus[] = {-2.0, -0.5, 0.25, 1.0};
    struct Probe {
        double xi, tau;
    };
    std::vector<Probe> probes;
    for (double xi : xis)
        for (double tau : taus) {
            double bx = F.bin_xi(xi), bt = F.bin_tau(tau);
            if (std::abs(bt + bx * bx) < 0.2) continue;
            probes.push_back({bx, bt});
        }
    std::vector<double> err(probes.size());
    parallel_for(int(probes.size()), [&](int k) {
        cplx q = trilinear_quadrature(u, v, z, probes[k].xi, probes[k].tau).value;
        cplx f = F.at(probes[k].xi, probes[k].tau);
        err[k] = std::abs(q - f) / std::abs(q);
    });
    double worst = *std::max_element(err.begin(), err.end());
    bool ok = probes.size() >= 20 && worst < 5e-3;
    return {ok, std::to_string(probes.size()) + " probes, max rel err " + num(worst)};
}

// 3: ensemble sup-ratios at two resolutions
Outcome ac3() {
    bool ok = true;
    std::string d;
    for (EstimateTag t : all_estimates()) {
        EstimateId id = EstimateId::defaults(t);
        RatioReport r = ensemble_sup_ratio(id, 100, 7, "mixed", LabSetup::ensemble_base(), false);
        bool good = std::isfinite(r.max_ratio) && std::isfinite(r.max_ratio_refined) && r.max_ratio > 0 &&
                    r.relative_change() < 0.1;
        for (const auto& f : r.failures) good = good && f.empty();
        ok = ok && good;
        d += estimate_name(t) + " " + num(r.max_ratio) + "/" + num(r.max_ratio_refined) + (good ? "" : "(x)") + "; ";
    }
    return {ok, d};
}

// 4: soliton oracle
Outcome ac4() {
    SpaceGrid g(60.0, 1024);
    NlsSolitonParams sp{1.0, 1.2};
    SampledField u0 = nls_soliton(sp, g, 0.0), exact = nls_soliton(sp, g, 0.5);
    double errs[2], drift = 0.0;
    const double dts[2] = {1e-3, 5e-4};
    for (int k = 0; k < 2; ++k) {
        Trajectory tr = solve(u0, Equation::NLS101, SolverConfig::to_time(0.5, dts[k]));
        errs[k] = l2_distance(tr.final_state(), exact);
        drift = std::max(drift, std::abs(tr.mass.back() - tr.mass.front()) / tr.mass.front());
    }
    double ratio = errs[0] / errs[1];
    bool ok = errs[1] < 1e-6 && ratio >= 3.5 && ratio <= 4.5 && drift < 1e-10;
    return {ok, "err " + num(errs[1]) + ", dt ratio " + num(ratio) + ", mass drift " + num(drift)};
}

// 5: DNLS family
Outcome ac5() {
    SpaceGrid g(80.0, 1024);
    DnlsFamilyParams fp{1.0, 1.0};
    std::vector<double> ts;
    std::vector<SampledField> snaps;
    for (int j = 0; j < 9; ++j) {
        ts.push_back(j * 1e-3);
        snaps.push_back(dnls_family(fp, g, ts.back()));
    }
    double res = pde_residual(make_trajectory(ts, snaps, Equation::DNLS109), Equation::DNLS109);
    SampledField u0 = dnls_family(fp, g, 0.0), exact = dnls_family(fp, g, 0.25);
    SolverConfig cfg = SolverConfig::to_time(0.25, 2e-5);
    Trajectory viag = solve_dnls_via_gauge(u0, cfg);
    Trajectory direct = solve(u0, Equation::DNLS109, cfg);
    double eg = l2_distance(viag.final_state(), exact);
    double ed = l2_distance(viag.final_state(), direct.final_state());
    bool ok = res < 1e-6 && eg < 1e-4 && ed < 1e-5;
    return {ok, "residual " + num(res) + ", gauge err " + num(eg) + ", direct vs gauge " + num(ed)};
}

// 6: gauge transform
Outcome ac6() {
    SpaceGrid g(60.0, 512);
    DataProfile prof = DataProfile::parse("gaussian");
    double modulus = 0.0, roundtrip = 0.0;
    for (int k = 0; k < 10; ++k) {
        SampledField f = nlslab::random_data(prof, 11, g, k);
        SampledField G = gauge_forward(f);
        for (int j = 0; j < g.n; ++j) modulus = std::max(modulus, std::abs(std::abs(G.values[j]) - std::abs(f.values[j])));
        roundtrip = std::max(roundtrip, l2_distance(gauge_inverse(G), f) / l2_norm(f));
    }
    auto sup = [&](int n) {
        SpaceGrid gg(60.0, n);
        std::vector<double> vals(50);
        parallel_for(50, [&](int k) {
            Stream s(99, k);
            double a = s.uniform(0.2, 1.0), b = s.uniform(0.2, 1.0);
            SampledField u = nlslab::random_data(prof, 5, gg, 2 * k), v = nlslab::random_data(prof, 5, gg, 2 * k + 1);
            u = cplx(a / fourier_lebesgue_norm(u, {0.5, 2.0})) * u;
            v = cplx(b / fourier_lebesgue_norm(v, {0.5, 2.0})) * v;
            vals[k] = gauge_lipschitz_probe(u, v, 0.5, 2.0);
        });
        return *std::max_element(vals.begin(), vals.end());
    };
    double s1 = sup(512), s2 = sup(1024);
    double change = std::abs(s2 - s1) / s1;
    bool ok = modulus < 1e-12 && roundtrip < 1e-12 && change < 0.1;
    return {ok, "| |Gf|-|f| | " + num(modulus) + ", inverse " + num(roundtrip) + ", Lipschitz sup " + num(s1) + " -> " +
                    num(s2)};
}

bool strictly_decreasing(const SeparationTable& t) {
    for (size_t k = 1; k < t.rows.size(); ++k)
        if (!(t.rows[k].data_distance < t.rows[k - 1].data_distance)) return false;
    return true;
}

bool floor_holds(const SeparationTable& t) {
    double base = t.rows.front().solution_distance;
    for (const auto& r : t.rows)
        if (r.solution_distance < 0.5 * base) return false;
    return true;
}

// 7: NLS separation
Outcome ac7() {
    std::vector<double> Ns = {20, 40, 80, 160};
    SeparationTable t = illposed_nls_experiment(-0.2, 2.0, 1.0, Ns, 50.0);
    SeparationTable c = illposed_nls_experiment(0.0, 2.0, 1.0, Ns, 50.0);
    double fr = t.rows.back().data_distance / t.rows.front().data_distance;
    double cr = c.rows.back().data_distance / c.rows.front().data_distance;
    bool ok = strictly_decreasing(t) && fr < 0.3 && floor_holds(t) && cr > 0.9;
    std::string d = "data ";
    for (const auto& r : t.rows) d += num(r.data_distance) + " ";
    d += "(final/first " + num(fr) + "), solution ";
    for (const auto& r : t.rows) d += num(r.solution_distance) + " ";
    d += ", control final/first " + num(cr);
    return {ok, d};
}

// 8: DNLS separation
Outcome ac8() {
    SeparationTable t = illposed_dnls_experiment(0.4, 2.0, 1.0, {20, 40, 80, 160}, 10.0);
    double da = 0.0;
    for (const auto& r : t.rows) da = std::max(da, std::abs(r.alpha - r.alpha_prime));
    bool ok = strictly_decreasing(t) && floor_holds(t) && da <= 1e-12;
    std::string d = "data ";
    for (const auto& r : t.rows) d += num(r.data_distance) + " ";
    d += ", solution ";
    for (const auto& r : t.rows) d += num(r.solution_distance) + " ";
    d += ", max |alpha - alpha'| " + num(da);
    return {ok, d};
}

// 9: splitting bounds
Outcome ac9() {
    SpaceGrid g(64.0, 512);
    std::vector<double> a(100), b(100);
    parallel_for(100, [&](int k) {
        Stream s(31, k);
        double r = s.uniform(1.05, 2.0);
        double rho = s.uniform(1.01, r);
        double N = std::exp(s.uniform(std::log(0.5), std::log(50.0)));
        DataProfile prof = DataProfile::parse(k % 2 ? "white-spectrum" : "power-law");
        prof.beta = s.uniform(0.5, 1.0);
        prof.amplitude = s.uniform(0.1, 3.0);
        SplittingBounds sb = splitting_bounds_check(nlslab::random_data(prof, 31, g, k), N, r, rho);
        a[k] = sb.small_part_ratio;
        b[k] = sb.large_part_ratio;
    });
    double ma = *std::max_element(a.begin(), a.end()), mb = *std::max_element(b.begin(), b.end());
    return {ma <= 1 + 1e-6 && mb <= 1 + 1e-6, "max ratios " + num(ma) + ", " + num(mb)};
}

// 10: growth of z(t)
Outcome ac10() {
    SpaceGrid g(100.0, 1024);
    DataProfile prof = DataProfile::parse("power-law(0.6)");
    prof.amplitude = 8.0;
    SampledField u0 = nlslab::random_data(prof, 1, g, 0);
    const double rs[] = {1.75, 1.9, 2.0};
    std::vector<GrowthReport> reps(3);
    parallel_for(3, [&](int k) { reps[k] = growth_experiment(u0, rs[k], 20.0, SolverConfig::to_time(20.0, 2e-3)); });
    bool ok = true;
    std::string d;
    for (int k = 0; k < 3; ++k) {
        ok = ok && reps[k].slope <= reps[k].predicted + 0.15;
        d += "r=" + num(rs[k]) + " slope " + num(reps[k].slope) + " (bound " + num(reps[k].predicted + 0.15) + "); ";
    }
    return {ok, d};
}

// 11: time localisation slope
Outcome ac11() {
    SpaceGrid g(32.0, 128);
    TimeGrid tg(2.0, 2048);
    SampledField u0 = nlslab::random_data(DataProfile::parse("gaussian"), 3, g, 0);
    SpacetimeField f = free_solution(u0, tg, 1);
    double slope = time_localization_slope(f, 2.0, 0.45, 0.0, {0.02, 0.04, 0.08, 0.16});
    double target = 0.45;
    bool ok = slope >= target - 0.08 && slope <= target + 0.02;
    return {ok, "slope " + num(slope) + " in [" + num(target - 0.08) + ", " + num(target + 0.02) + "]"};
}

} // namespace

int main(int argc, char** argv) {
    if (const char* e = std::getenv("NLSLAB_THREADS")) set_thread_count(std::atoi(e));
    std::vector<std::function<Outcome()>> all = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11};
    std::vector<int> pick;
    for (int k = 1; k < argc; ++k) {
        std::string a = argv[k];
        if (a == "--criterion" && k + 1 < argc) pick.push_back(std::atoi(argv[++k]));
    }
    if (pick.empty())
        for (int k = 1; k <= int(all.size()); ++k) pick.push_back(k);
    int failed = 0;
    for (int k : pick) {
        if (k < 1 || k > int(all.size())) {
            std::printf("AC%d unknown criterion\n", k);
            return 2;
        }
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[k - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("AC%d %s  %s  [%.1fs]\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed ? 1 : 0;
}
