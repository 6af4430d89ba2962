#include "nlslab/experiments.hpp"

#include "nlslab/data.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/estimates.hpp"
#include "nlslab/exact.hpp"
#include "nlslab/gauge.hpp"
#include "nlslab/globalizer.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/solvers.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#ifndef NLSLAB_VERSION
#define NLSLAB_VERSION "0.0.0"
#endif

namespace nlslab {

std::string version_string() { return NLSLAB_VERSION; }

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::from_text(const std::string& text) {
    Config c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        require(eq != std::string::npos, "config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        require(!c.has(key), "config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        c.set(key, trim(line.substr(eq + 1)));
    }
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return from_text(os.str());
}

void Config::set(const std::string& key, const std::string& value) {
    require(!key.empty(), "empty config key");
    kv_[key] = value;
}

void Config::apply_override(const std::string& assignment) {
    auto eq = assignment.find('=');
    require(eq != std::string::npos && eq > 0, "override '" + assignment + "' is not key=value");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

const std::string& Config::get(const std::string& key) const {
    auto it = kv_.find(key);
    require(it != kv_.end(), "config key '" + key + "' is not set");
    return it->second;
}

namespace {

constexpr double pi = std::numbers::pi;

// plain numbers, or multiples of pi written as "128pi" / "128*pi"
double parse_real(const std::string& key, const std::string& text) {
    std::string v = text;
    double scale = 1.0;
    if (v.size() >= 2 && v.compare(v.size() - 2, 2, "pi") == 0) {
        scale = pi;
        v = trim(v.substr(0, v.size() - 2));
        if (!v.empty() && v.back() == '*') v = trim(v.substr(0, v.size() - 1));
        if (v.empty()) v = "1";
    }
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    require(!v.empty() && end == v.c_str() + v.size() && std::isfinite(x),
            "parameter " + key + " = '" + text + "' is not a finite number");
    return x * scale;
}

// Resolved parameters with typed access.
class Params {
public:
    explicit Params(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    const std::string& str(const std::string& k) const {
        auto it = kv_.find(k);
        require(it != kv_.end(), "missing parameter '" + k + "'");
        return it->second;
    }
    bool empty(const std::string& k) const { return str(k).empty(); }

    double real(const std::string& k) const { return parse_real(k, str(k)); }
    int integer(const std::string& k) const {
        double x = real(k);
        require(x == std::floor(x) && std::abs(x) < 2e9, "parameter " + k + " must be an integer");
        return int(x);
    }
    std::uint64_t seed() const {
        const std::string& v = str("seed");
        char* end = nullptr;
        unsigned long long s = std::strtoull(v.c_str(), &end, 10);
        require(!v.empty() && end == v.c_str() + v.size() && v[0] != '-', "seed must be a nonnegative integer");
        return s;
    }
    bool flag(const std::string& k) const {
        const std::string& v = str(k);
        if (v == "1" || v == "true" || v == "yes") return true;
        if (v == "0" || v == "false" || v == "no") return false;
        throw PreconditionError("parameter " + k + " must be true or false");
    }
    std::vector<double> reals(const std::string& k) const {
        std::vector<double> out;
        std::stringstream ss(str(k));
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(parse_real(k, trim(item)));
        }
        require(!out.empty(), "parameter " + k + " must list at least one value");
        return out;
    }
    std::vector<std::string> words(const std::string& k) const {
        std::vector<std::string> out;
        std::stringstream ss(str(k));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!trim(item).empty()) out.push_back(trim(item));
        return out;
    }

private:
    std::map<std::string, std::string> kv_;
};

using Tables = std::vector<NamedTable>;
using Runner = std::function<Tables(const Params&, bool dry, std::vector<std::string>& warnings)>;

struct Entry {
    ExperimentInfo info;
    Runner run;
};

std::string N(double v) { return format_number(v); }
std::string I(long long v) { return std::to_string(v); }

SpaceGrid grid_of(const Params& P) {
    double L = P.real("L");
    int n = P.integer("n");
    require(L > 0.0, "L must be positive");
    require(n >= 4 && n % 2 == 0, "n must be even and at least 4");
    return SpaceGrid(L, n);
}

TimeGrid times_of(const Params& P) {
    double T = P.real("T_w");
    int m = P.integer("m");
    require(T > 0.0, "T_w must be positive");
    require(m >= 4 && m % 2 == 0, "m must be even and at least 4");
    return TimeGrid(T, m);
}

WindowSpec window_of(const Params& P, const TimeGrid& tg) {
    double d = P.real("delta");
    if (d == 0.0) d = tg.span / 4.0;
    require(d > 0.0, "delta must be positive");
    require(2.0 * d <= 0.5 * tg.span + 1e-12, "window support [-2 delta, 2 delta] exceeds the time span");
    return WindowSpec::smooth_cutoff(d);
}

void check_profile(const std::string& tag) {
    if (tag != "mixed") DataProfile::parse(tag);
}

double half_indicator(double x, double lo, double hi) {
    const double e = 1e-9;
    if (x < lo - e || x > hi + e) return 0.0;
    if (std::abs(x - lo) < e || std::abs(x - hi) < e) return 0.5;
    return 1.0;
}

Tables verify_bilinear(const Params& P, bool dry, std::vector<std::string>& warn) {
    SpaceGrid g = grid_of(P);
    TimeGrid tg = times_of(P);
    WindowSpec w = window_of(P, tg);
    double p = P.real("p");
    require(p > 1.0, "p must exceed 1");
    IdentityOptions opt;
    opt.threshold = P.real("threshold");
    opt.xi_min = P.real("xi_min");
    require(opt.threshold > 0.0 && opt.threshold < 1.0, "threshold must lie in (0, 1)");
    require(opt.xi_min >= 0.0, "xi_min must be nonnegative");
    std::string pair = P.str("pair");
    if (pair != "gaussian" && pair != "indicator") check_profile(pair);
    require(pair != "mixed", "pair must be gaussian, indicator or a data profile");
    if (dry) return {};
    SampledField u, v;
    if (pair == "gaussian") {
        u = from_spectrum(g, [](double x) { return cplx(std::exp(-4.0 * (x - 1.0) * (x - 1.0))); });
        v = from_spectrum(g, [](double x) { return cplx(std::exp(-3.0 * (x - 0.8) * (x - 0.8))); });
    } else if (pair == "indicator") {
        u = from_spectrum(g, [](double x) { return cplx(half_indicator(x, -1.0, 1.0)); });
        v = u;
    } else {
        DataProfile prof = DataProfile::parse(pair);
        u = nlslab::random_data(prof, P.seed(), g, 0);
        v = nlslab::random_data(prof, P.seed(), g, 1);
    }
    IdentityReport r = check_bilinear_identity(u, v, p, tg, w, opt);
    if (r.window_too_short) warn.push_back(r.note);
    CsvTable t;
    t.header = {"xi", "lhs", "rhs", "fitted_c", "rel_dev"};
    for (size_t k = 0; k < r.xi.size(); ++k) t.add({N(r.xi[k]), N(r.lhs[k]), N(r.rhs[k]), N(r.fitted_c), N(r.rel_dev[k])});
    return {{"verify-bilinear", t}};
}

Tables verify_trilinear(const Params& P, bool dry, std::vector<std::string>& warn) {
    SpaceGrid g = grid_of(P);
    TimeGrid tg = times_of(P);
    WindowSpec w = window_of(P, tg);
    double eta = P.real("eta");
    require(eta >= 0.0, "eta must be nonnegative (0 selects 2 dxi)");
    auto xis = P.reals("xi_list"), taus = P.reals("tau_list");
    if (dry) return {};
    SampledField u = from_spectrum(g, [](double x) { return cplx(std::exp(-x * x)); });
    SampledField v = from_spectrum(g, [](double x) { return cplx(std::exp(-(x - 0.5) * (x - 0.5))); });
    SampledField z = from_spectrum(g, [](double x) { return cplx(std::exp(-1.5 * (x + 0.3) * (x + 0.3))); });
    TrilinearFft F = trilinear_fft(u, v, z, tg, w);
    struct Probe {
        double xi, tau;
    };
    std::vector<Probe> probes;
    for (double xi : xis)
        for (double tau : taus) {
            double bx = F.bin_xi(xi), bt = F.bin_tau(tau);
            if (std::abs(bt + bx * bx) < 0.2) {
                warn.push_back("probe (" + N(xi) + ", " + N(tau) + ") skipped: too close to tau = -xi^2");
                continue;
            }
            probes.push_back({bx, bt});
        }
    std::vector<TrilinearValue> q(probes.size());
    parallel_for(int(probes.size()), [&](int k) { q[k] = trilinear_quadrature(u, v, z, probes[k].xi, probes[k].tau, eta); });
    CsvTable t;
    t.header = {"xi", "tau", "quadrature_re", "quadrature_im", "fft_re", "fft_im", "rel_err", "excluded_estimate"};
    for (size_t k = 0; k < probes.size(); ++k) {
        cplx f = F.at(probes[k].xi, probes[k].tau);
        double rel = std::abs(q[k].value - f) / std::abs(q[k].value);
        t.add({N(probes[k].xi), N(probes[k].tau), N(q[k].value.real()), N(q[k].value.imag()), N(f.real()), N(f.imag()),
               N(rel), N(q[k].excluded_estimate)});
    }
    return {{"verify-trilinear", t}};
}

const char* exponent_keys[] = {"p", "q", "r0", "r1", "r2", "r", "s", "b", "bp", "rho", "rho0"};

double& exponent_slot(EstimateParams& e, const std::string& k) {
    if (k == "p") return e.p;
    if (k == "q") return e.q;
    if (k == "r0") return e.r0;
    if (k == "r1") return e.r1;
    if (k == "r2") return e.r2;
    if (k == "r") return e.r;
    if (k == "s") return e.s;
    if (k == "b") return e.b;
    if (k == "bp") return e.bp;
    if (k == "rho") return e.rho;
    return e.rho0;
}

Tables estimate_sweep(const Params& P, bool dry, std::vector<std::string>&) {
    LabSetup S{grid_of(P), times_of(P), WindowSpec::plain()};
    S.window = window_of(P, S.times);
    int trials = P.integer("trials");
    require(trials >= 1, "trials must be at least 1");
    std::string profile = P.str("profile");
    check_profile(profile);
    double eps = P.real("eps");
    bool ladder = P.flag("ladder");
    std::vector<EstimateTag> tags;
    for (const auto& w : P.words("estimate")) {
        if (w == "all")
            for (auto t : all_estimates()) tags.push_back(t);
        else
            tags.push_back(parse_estimate(w));
    }
    require(!tags.empty(), "estimate must name at least one estimate or 'all'");
    bool overrides = false;
    for (auto k : exponent_keys) overrides = overrides || !P.empty(k);
    require(!overrides || tags.size() == 1, "exponent overrides need a single estimate");
    std::vector<EstimateId> ids;
    for (auto t : tags) {
        EstimateId id = EstimateId::defaults(t, eps);
        for (auto k : exponent_keys)
            if (!P.empty(k)) exponent_slot(id.params, k) = P.real(k);
        if (t == EstimateTag::LEM52 && P.empty("rho0")) id.params.rho0 = 1.0 / (0.25 + 0.5 / id.params.rho);
        id.check();
        ids.push_back(id);
    }
    if (dry) return {};
    CsvTable t;
    t.header = {"kind", "estimate", "trial", "n", "ratio", "ratio_refined", "relative_change", "note"};
    for (const auto& id : ids) {
        RatioReport r = ensemble_sup_ratio(id, trials, P.seed(), profile, S, ladder);
        std::string name = estimate_name(id.tag);
        for (int k = 0; k < r.trials; ++k)
            t.add({"trial", name, I(k), I(S.grid.n), N(r.ratios[k]), N(r.ratios_refined[k]), "", r.failures[k]});
        t.add({"summary", name, I(r.argmax), I(S.grid.n), N(r.max_ratio), N(r.max_ratio_refined), N(r.relative_change()),
               ""});
        for (size_t k = 0; k < r.ladder.size(); ++k)
            t.add({"ladder", name, I(r.argmax), I(r.ladder_points[k]), N(r.ladder[k]), "", "", ""});
    }
    return {{"estimate-sweep", t}};
}

Tables soliton_oracle(const Params& P, bool dry, std::vector<std::string>& warn) {
    SpaceGrid g = grid_of(P);
    NlsSolitonParams sp{P.real("N"), P.real("omega")};
    require(sp.omega > 0.0, "omega must be positive");
    double T = P.real("T"), dt = P.real("dt");
    require(T > 0.0 && dt > 0.0, "T and dt must be positive");
    if (dry) return {};
    SampledField u0 = nls_soliton(sp, g, 0.0), exact = nls_soliton(sp, g, T);
    CsvTable t;
    t.header = {"dt", "l2_error", "mass_drift", "order_ratio"};
    double prev = 0.0;
    for (int k = 0; k < 3; ++k) {
        double h = dt / std::pow(2.0, k);
        Trajectory tr = solve(u0, Equation::NLS101, SolverConfig::to_time(T, h));
        for (const auto& w : tr.warnings) warn.push_back(w);
        double err = l2_distance(tr.final_state(), exact);
        double drift = std::abs(tr.mass.back() - tr.mass.front()) / tr.mass.front();
        t.add({N(h), N(err), N(drift), k ? N(prev / err) : ""});
        prev = err;
    }
    return {{"soliton-oracle", t}};
}

Tables gauge_roundtrip(const Params& P, bool dry, std::vector<std::string>&) {
    SpaceGrid g = grid_of(P);
    int trials = P.integer("trials");
    require(trials >= 1, "trials must be at least 1");
    double s = P.real("s"), r = P.real("r"), alpha = P.real("alpha");
    require(s >= 0.5 && s <= 1.0, "s must lie in [1/2, 1]");
    require(r > 1.0 && r <= 2.0, "r must lie in (1, 2]");
    std::string profile = P.str("profile");
    DataProfile prof = DataProfile::parse(profile);
    GaugeOptions opt;
    std::string quad = P.str("quadrature");
    require(quad == "spectral" || quad == "trapezoid", "quadrature must be spectral or trapezoid");
    opt.quadrature = quad == "spectral" ? PhaseQuadrature::spectral : PhaseQuadrature::trapezoid;
    if (dry) return {};
    std::uint64_t seed = P.seed();
    struct Row {
        double modulus, roundtrip, lipschitz;
    };
    std::vector<Row> rows(trials);
    parallel_for(trials, [&](int k) {
        Stream st(seed, std::uint64_t(k) + 0x9e37);
        double a = st.uniform(0.2, 1.0), b = st.uniform(0.2, 1.0);
        SampledField u = nlslab::random_data(prof, seed, g, 2 * k), v = nlslab::random_data(prof, seed, g, 2 * k + 1);
        u = cplx(a / fourier_lebesgue_norm(u, {s, r})) * u;
        v = cplx(b / fourier_lebesgue_norm(v, {s, r})) * v;
        SampledField G = gauge_forward(u, opt);
        double mod = 0.0;
        for (int j = 0; j < g.n; ++j) mod = std::max(mod, std::abs(std::abs(G.values[j]) - std::abs(u.values[j])));
        rows[k] = {mod, l2_distance(gauge_inverse(G, opt), u) / l2_norm(u), gauge_lipschitz_probe(u, v, s, r, alpha, opt)};
    });
    CsvTable t;
    t.header = {"trial", "modulus_error", "roundtrip_error", "lipschitz_ratio"};
    for (int k = 0; k < trials; ++k) t.add({I(k), N(rows[k].modulus), N(rows[k].roundtrip), N(rows[k].lipschitz)});
    return {{"gauge-roundtrip", t}};
}

CsvTable separation_csv(const SeparationTable& s) {
    CsvTable t;
    t.header = {"N", "N_prime", "data_distance", "solution_distance", "alpha", "alpha_prime", "box_length", "points",
                "flagged", "note"};
    for (const auto& r : s.rows)
        t.add({N(r.N), N(r.N_prime), N(r.data_distance), N(r.solution_distance), N(r.alpha), N(r.alpha_prime),
               N(r.box_length), I(r.points), r.flagged ? "1" : "0", r.note});
    return t;
}

Tables illposed_nls(const Params& P, bool dry, std::vector<std::string>& warn) {
    double s = P.real("s"), r = P.real("r"), T = P.real("T"), C = P.real("C");
    auto Ns = P.reals("N_list");
    require(r > 1.0, "r must exceed 1");
    require(s > -1.0 / dual(r) && s <= 0.0, "s must lie in (-1/r', 0] (0 is the control)");
    require(T > 0.0 && C > 0.0, "T and C must be positive");
    for (double n : Ns) require(n > 0.0, "N_list entries must be positive");
    if (dry) return {};
    SeparationTable tab = illposed_nls_experiment(s, r, T, Ns, C);
    for (const auto& row : tab.rows)
        if (row.flagged) warn.push_back("row N = " + N(row.N) + " flagged: " + row.note);
    return {{"illposed-nls", separation_csv(tab)}};
}

Tables illposed_dnls(const Params& P, bool dry, std::vector<std::string>& warn) {
    double s = P.real("s"), r = P.real("r"), T = P.real("T"), C = P.real("C");
    auto Ns = P.reals("N_list");
    require(r > 1.0, "r must exceed 1");
    require(s < 0.5 && s > 0.5 - 1.0 / dual(r), "s must lie in (1/2 - 1/r', 1/2)");
    require(T > 0.0 && C > 0.0, "T and C must be positive");
    for (double n : Ns) require(n > 0.0, "N_list entries must be positive");
    if (dry) return {};
    SeparationTable tab = illposed_dnls_experiment(s, r, T, Ns, C);
    for (const auto& row : tab.rows)
        if (row.flagged) warn.push_back("row N = " + N(row.N) + " flagged: " + row.note);
    return {{"illposed-dnls", separation_csv(tab)}};
}

SampledField profile_field(const Params& P, const SpaceGrid& g) {
    DataProfile prof = DataProfile::parse(P.str("profile"));
    prof.amplitude = P.real("amplitude");
    return nlslab::random_data(prof, P.seed(), g, 0);
}

Tables globalize(const Params& P, bool dry, std::vector<std::string>&) {
    SpaceGrid g = grid_of(P);
    DataProfile::parse(P.str("profile"));
    auto Ns = P.reals("N_list");
    double r = P.real("r"), rho = P.real("rho"), T = P.real("T"), dt = P.real("dt");
    VwOptions opt{P.real("c"), P.real("eps")};
    require(r > 5.0 / 3.0 && r <= 2.0, "r must lie in (5/3, 2]");
    require(rho > 1.0 && rho <= r, "rho must lie in (1, r]");
    require(T > 0.0 && dt > 0.0 && dt <= T, "need 0 < dt <= T");
    require(opt.c > 0.0 && opt.eps >= 0.0, "c must be positive and eps nonnegative");
    for (double n : Ns) require(n > 0.0, "N_list entries must be positive");
    if (dry) return {};
    SampledField u0 = profile_field(P, g);
    SolverConfig cfg = SolverConfig::to_time(T, dt);
    std::vector<VwReport> reps(Ns.size());
    std::vector<SplittingBounds> bounds(Ns.size());
    parallel_for(int(Ns.size()), [&](int k) {
        bounds[k] = splitting_bounds_check(u0, Ns[k], r, rho);
        reps[k] = iterate_vw(u0, Ns[k], r, T, cfg, opt);
    });
    CsvTable t, b;
    t.header = {"N", "step", "t", "delta", "v_norm", "w_norm", "increment", "sum_error"};
    b.header = {"N", "small_part_ratio", "large_part_ratio"};
    for (size_t k = 0; k < Ns.size(); ++k) {
        const auto& R = reps[k];
        for (size_t j = 0; j < R.times.size(); ++j)
            t.add({N(Ns[k]), I(long(j)), N(R.times[j]), N(R.delta), N(R.v_norm[j]), N(R.w_norm[j]),
                   j ? N(R.increment[j - 1]) : "", N(R.sum_error[j])});
        b.add({N(Ns[k]), N(bounds[k].small_part_ratio), N(bounds[k].large_part_ratio)});
    }
    return {{"globalize", t}, {"globalize-bounds", b}};
}

Tables growth(const Params& P, bool dry, std::vector<std::string>&) {
    SpaceGrid g = grid_of(P);
    DataProfile::parse(P.str("profile"));
    double r = P.real("r"), T = P.real("T"), dt = P.real("dt");
    require(r > 5.0 / 3.0 && r <= 2.0, "r must lie in (5/3, 2]");
    require(T > 1.0 && dt > 0.0 && dt <= T, "need T > 1 and 0 < dt <= T");
    if (dry) return {};
    GrowthReport rep = growth_experiment(profile_field(P, g), r, T, SolverConfig::to_time(T, dt));
    CsvTable t;
    t.header = {"kind", "t", "z_norm", "slope", "predicted"};
    for (size_t k = 0; k < rep.times.size(); ++k) t.add({"sample", N(rep.times[k]), N(rep.values[k]), "", ""});
    t.add({"fit", "", "", N(rep.slope), N(rep.predicted)});
    return {{"growth", t}};
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> all = {
        {{"verify-bilinear",
          "bilinear identity: simulated lhs(xi) against the spectral convolution, single fitted constant",
          {{"L", "128pi"}, {"n", "1024"}, {"T_w", "50"}, {"m", "1024"}, {"delta", "12.5"}, {"p", "2"},
           {"pair", "gaussian"}, {"threshold", "0.01"}, {"xi_min", "0"}}},
         verify_bilinear},
        {{"verify-trilinear", "trilinear closed form by quadrature against the space-time FFT of the product",
          {{"L", "128pi"}, {"n", "2048"}, {"T_w", "64pi"}, {"m", "4096"}, {"delta", "0"}, {"eta", "0"},
           {"xi_list", "-1,-0.5,0.5,1,1.5"}, {"tau_list", "-2,-0.5,0.25,1"}}},
         verify_trilinear},
        {{"estimate-sweep", "ensemble sup-ratios LHS/RHS of the multilinear estimates at two resolutions",
          {{"estimate", "all"}, {"trials", "100"}, {"profile", "mixed"}, {"eps", "0.01"}, {"ladder", "true"},
           {"L", "32"}, {"n", "256"}, {"T_w", "8"}, {"m", "256"}, {"delta", "2"}, {"p", ""}, {"q", ""}, {"r0", ""},
           {"r1", ""}, {"r2", ""}, {"r", ""}, {"s", ""}, {"b", ""}, {"bp", ""}, {"rho", ""}, {"rho0", ""}}},
         estimate_sweep},
        {{"soliton-oracle", "split-step cubic NLS against the travelling soliton, three step sizes",
          {{"L", "60"}, {"n", "1024"}, {"N", "1"}, {"omega", "1.2"}, {"T", "0.5"}, {"dt", "1e-3"}}},
         soliton_oracle},
        {{"gauge-roundtrip", "gauge transform modulus, inverse and Lipschitz probe over random pairs",
          {{"L", "60"}, {"n", "512"}, {"trials", "50"}, {"s", "0.5"}, {"r", "2"}, {"alpha", "5"},
           {"profile", "gaussian"}, {"quadrature", "spectral"}}},
         gauge_roundtrip},
        {{"illposed-nls", "separating soliton pairs for the cubic NLS below the scaling line",
          {{"s", "-0.2"}, {"r", "2"}, {"T", "1"}, {"C", "50"}, {"N_list", "20,40,80,160"}}},
         illposed_nls},
        {{"illposed-dnls", "separating family members for the derivative NLS",
          {{"s", "0.4"}, {"r", "2"}, {"T", "1"}, {"C", "10"}, {"N_list", "20,40,80,160"}}},
         illposed_dnls},
        {{"globalize", "data splitting bounds and the v/w ledger across stepwidth restarts",
          {{"L", "100"}, {"n", "2048"}, {"profile", "power-law(0.6)"}, {"amplitude", "0.6"}, {"N_list", "4,8,16"},
           {"r", "2"}, {"rho", "1.5"}, {"T", "1"}, {"dt", "1e-3"}, {"c", "0.02"}, {"eps", "0.01"}}},
         globalize},
        {{"growth", "growth of z(t) = u(t) - exp(it d^2) u0 and its tail slope",
          {{"L", "100"}, {"n", "1024"}, {"profile", "power-law(0.6)"}, {"amplitude", "8"}, {"r", "2"}, {"T", "20"},
           {"dt", "2e-3"}}},
         growth},
    };
    return all;
}

const std::vector<std::pair<std::string, std::string>> common_keys = {{"experiment", ""}, {"seed", "1"},
                                                                      {"output", "out"}};

const Entry& find_entry(const std::string& name) {
    for (const auto& e : entries())
        if (e.info.name == name) return e;
    std::string all;
    for (const auto& e : entries()) all += (all.empty() ? "" : ", ") + e.info.name;
    throw PreconditionError("unknown experiment '" + name + "' (valid: " + all + ")");
}

std::map<std::string, std::string> resolve(const Config& cfg, const Entry& e) {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : common_keys) out[k] = v;
    for (const auto& [k, v] : e.info.defaults) out[k] = v;
    for (const auto& [k, v] : cfg.entries()) {
        if (!out.count(k)) {
            std::string all;
            for (const auto& [kk, vv] : out) all += (all.empty() ? "" : ", ") + kk;
            throw PreconditionError("unknown key '" + k + "' for " + e.info.name + " (valid: " + all + ")");
        }
        out[k] = v;
    }
    return out;
}

const Entry& entry_of(const Config& cfg) {
    require(cfg.has("experiment"), "config does not name an experiment");
    return find_entry(cfg.get("experiment"));
}

} // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> cat = [] {
        std::vector<ExperimentInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return cat;
}

const ExperimentInfo& find_experiment(const std::string& name) { return find_entry(name).info; }

std::map<std::string, std::string> validate_config(const Config& cfg) {
    const Entry& e = entry_of(cfg);
    auto kv = resolve(cfg, e);
    Params P(kv);
    P.seed();
    require(!P.str("output").empty(), "output directory must not be empty");
    std::vector<std::string> warn;
    e.run(P, true, warn);
    return kv;
}

RunReport execute_experiment(const Config& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    const Entry& e = entry_of(cfg);
    RunReport rep;
    rep.experiment = e.info.name;
    rep.resolved = validate_config(cfg);
    Params P(rep.resolved);
    rep.tables = e.run(P, false, rep.warnings);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

RunReport run_experiment(const Config& cfg) {
    RunReport rep = execute_experiment(cfg);
    namespace fs = std::filesystem;
    fs::path dir = rep.resolved.at("output");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    for (const auto& t : rep.tables) {
        fs::path p = dir / (t.name + ".csv");
        write_csv(t.table, p.string());
        rep.files.push_back(p.string());
    }
    nlohmann::ordered_json m;
    m["experiment"] = rep.experiment;
    m["version"] = version_string();
    m["config"] = rep.resolved;
    m["outputs"] = rep.files;
    m["warnings"] = rep.warnings;
    m["threads"] = thread_count();
    m["wall_time_seconds"] = rep.wall_seconds;
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m["timestamp"] = stamp;
    fs::path mp = dir / "manifest.json";
    std::ofstream f(mp);
    if (!f) throw IoError("cannot write " + mp.string());
    f << m.dump(2) << '\n';
    if (!f) throw IoError("write failed for " + mp.string());
    rep.files.push_back(mp.string());
    return rep;
}

} // namespace nlslab
