#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlslab/errors.hpp"
#include "nlslab/estimates.hpp"
#include "nlslab/fit.hpp"
#include "support.hpp"

using namespace nlslab;
using namespace testing;

namespace {

LabSetup small_lab() { return {SpaceGrid(32.0, 128), TimeGrid(8.0, 128), WindowSpec::smooth_cutoff(2.0)}; }

SampledField modulate(const SampledField& f, double k) {
    SampledField g = f;
    for (int j = 0; j < f.grid.n; ++j) g.values[j] *= std::polar(1.0, k * f.grid.x(j));
    return g;
}

double gauss_spec(double xi, double c, double a) { return std::exp(-a * (xi - c) * (xi - c)); }

} // namespace

TEST_CASE("estimate names round trip and unknown names list the valid ones") {
    for (auto t : all_estimates()) CHECK(parse_estimate(estimate_name(t)) == t);
    try {
        parse_estimate("LEM99");
        FAIL("expected rejection");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("LEM1") != std::string::npos);
    }
}

TEST_CASE("default exponents satisfy every precondition") {
    for (auto t : all_estimates()) CHECK_NOTHROW(EstimateId::defaults(t).check());
}

TEST_CASE("exponents outside the admissible range are rejected") {
    auto bad = [](EstimateTag t, auto mutate) {
        EstimateId id = EstimateId::defaults(t);
        mutate(id.params);
        CHECK_THROWS_AS(id.check(), PreconditionError);
    };
    bad(EstimateTag::FS102, [](EstimateParams& p) { p.r = 4.0 / 3.0; });
    bad(EstimateTag::LEM1, [](EstimateParams& p) { p.p = 3.0; });
    bad(EstimateTag::LEM1, [](EstimateParams& p) { p.q = 1.0; });
    bad(EstimateTag::LEM2, [](EstimateParams& p) { p.r0 = 2.0; });
    bad(EstimateTag::COR2, [](EstimateParams& p) { p.q = 2.0; });
    bad(EstimateTag::EQ298, [](EstimateParams& p) { p.b = 0.5; });
    bad(EstimateTag::EQ298, [](EstimateParams& p) { p.bp = 0.1; });
    bad(EstimateTag::LEM30, [](EstimateParams& p) { p.s = 0.4; });
    bad(EstimateTag::LEM30, [](EstimateParams& p) { p.bp = 0.0; });
    bad(EstimateTag::LEM31, [](EstimateParams& p) { p.b = 0.4; });
    bad(EstimateTag::L50i, [](EstimateParams& p) { p.rho = 2.5; });
    bad(EstimateTag::L50ii, [](EstimateParams& p) { p.rho = 1.2; });
    bad(EstimateTag::L50iii, [](EstimateParams& p) { p.b = 0.1; });
    bad(EstimateTag::LEM52, [](EstimateParams& p) { p.rho0 = 2.0; });
    bad(EstimateTag::LEM1, [](EstimateParams& p) { p.eps = 0.0; });
}

TEST_CASE("a violated precondition names the inequality") {
    EstimateId id = EstimateId::defaults(EstimateTag::LEM1);
    id.params.p = 3.0;
    try {
        id.check();
        FAIL("expected rejection");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("1/p + 1/q = 1/r1 + 1/r2") != std::string::npos);
    }
}

TEST_CASE("ratios are invariant under rescaling each input") {
    LabSetup S = small_lab();
    FieldGen gen(20);
    for (auto t : all_estimates()) {
        EstimateId id = EstimateId::defaults(t);
        std::vector<SampledField> in;
        for (int k = 0; k < id.inputs(); ++k) in.push_back(gen.packets(S.grid, 2, 0.05));
        double base = estimate_ratio(id, in, S);
        // the LEM52 weight couples its inputs, so it is only jointly homogeneous
        cplx common = gen.scalar();
        for (auto& f : in) f = (t == EstimateTag::LEM52 ? common : gen.scalar()) * f;
        CAPTURE(estimate_name(t));
        CHECK(estimate_ratio(id, in, S) == doctest::Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("bilinear and trilinear ratios are invariant under Galilean modulation") {
    LabSetup S = small_lab();
    FieldGen gen(21);
    const double k = 2 * pi * 2 / S.grid.L;
    for (int trial = 0; trial < 3; ++trial) {
        EstimateId l1 = EstimateId::defaults(EstimateTag::LEM1);
        SampledField u = gen.packets(S.grid, 2, 0.05), v = gen.packets(S.grid, 2, 0.05);
        double a = estimate_ratio(l1, {u, v}, S);
        double b = estimate_ratio(l1, {modulate(u, k), modulate(v, -k)}, S);
        CHECK(b == doctest::Approx(a).epsilon(0.01));

        EstimateId l2 = EstimateId::defaults(EstimateTag::LEM2);
        SampledField w = gen.packets(S.grid, 2, 0.05);
        a = estimate_ratio(l2, {u, v, w}, S);
        b = estimate_ratio(l2, {modulate(u, k), modulate(v, k), modulate(w, -k)}, S);
        CHECK(b == doctest::Approx(a).epsilon(0.01));
    }
}

TEST_CASE("wrong input count and vanishing inputs are rejected") {
    LabSetup S = small_lab();
    EstimateId id = EstimateId::defaults(EstimateTag::LEM1);
    CHECK_THROWS_AS(estimate_ratio(id, {gaussian(S.grid)}, S), PreconditionError);
    SampledField zero(S.grid);
    CHECK_THROWS_AS(estimate_ratio(id, {zero, gaussian(S.grid)}, S), PreconditionError);
    SampledField other = gaussian(SpaceGrid(16.0, 128));
    CHECK_THROWS_AS(estimate_ratio(id, {other, gaussian(S.grid)}, S), PreconditionError);
}

TEST_CASE("bilinear closed form matches a mollified-delta integral") {
    SpaceGrid g(128 * pi, 2048);
    auto uh = [](double x) { return gauss_spec(x, 1.0, 4.0); };
    auto vh = [](double x) { return gauss_spec(x, 0.8, 3.0); };
    SampledField u0 = from_spectrum(g, uh), v0 = from_spectrum(g, vh);
    const double p = 2.0, w = 2e-3;
    for (double xi : {0.6, 1.0, 1.8, 2.5}) {
        for (double tau : {-0.5, 0.0, 0.4}) {
            // F(e^{it d^2}u0 e^{-it d^2}v0)(xi,tau) = int u0^(a) v0^(xi-a) delta(tau + a^2 - (xi-a)^2) da
            double acc = 0.0, da = 1e-4;
            for (double a = -6; a < 8; a += da) {
                double arg = tau + a * a - (xi - a) * (xi - a);
                acc += uh(a) * vh(xi - a) * std::exp(-0.5 * arg * arg / (w * w)) / (std::sqrt(2 * pi) * w);
            }
            double expected = std::pow(xi, 1.0 / p) * acc * da;
            double got = std::abs(bilinear_closed_form(u0, v0, p, xi, tau));
            CAPTURE(xi);
            CAPTURE(tau);
            CHECK(std::abs(got - expected) < 5e-4 * std::max(1.0, expected));
        }
    }
}

TEST_CASE("bilinear closed form vanishes off the support and rejects xi = 0") {
    SpaceGrid g(32 * pi, 512);
    auto ind = [](double x) { return std::abs(x) <= 1.0 ? 1.0 : 0.0; };
    SampledField u0 = from_spectrum(g, ind);
    // a = xi/2 - tau/(2 xi) = 3 lies outside [-1,1]
    CHECK(std::abs(bilinear_closed_form(u0, u0, 2.0, 1.0, -5.0)) < 1e-14);
    CHECK(std::abs(bilinear_closed_form(u0, u0, 2.0, 1.0, 0.0)) > 0.0);
    CHECK_THROWS_AS(bilinear_closed_form(u0, u0, 2.0, 0.0, 0.0), PreconditionError);
}

TEST_CASE("identity right-hand side for two indicators is the triangle 2 - |xi|") {
    SpaceGrid g(16 * pi, 256);
    auto ind = [](double x) {
        double a = std::abs(x);
        return a < 1.0 - 1e-12 ? 1.0 : (a < 1.0 + 1e-12 ? std::sqrt(0.5) : 0.0);
    };
    SampledField u0 = from_spectrum(g, ind);
    IdentityOptions opt;
    opt.xi_min = 0.1;
    IdentityReport rep = check_bilinear_identity(u0, u0, 2.0, TimeGrid(20.0, 64), WindowSpec::plain(), opt);
    REQUIRE(!rep.xi.empty());
    for (size_t k = 0; k < rep.xi.size(); ++k)
        if (std::abs(rep.xi[k]) < 2.0 - 0.5 * g.dxi()) CHECK(std::abs(rep.rhs[k] - (2.0 - std::abs(rep.xi[k]))) < 1e-12);
}

TEST_CASE("identity probes stay on the sum of the supports") {
    SpaceGrid g(16 * pi, 256);
    SampledField u0 = from_spectrum(g, [](double x) { return x >= 0.5 && x <= 1.0 ? 1.0 : 0.0; });
    SampledField v0 = from_spectrum(g, [](double x) { return x >= -3.0 && x <= -2.0 ? 1.0 : 0.0; });
    IdentityReport rep = check_bilinear_identity(u0, v0, 2.0, TimeGrid(20.0, 64), WindowSpec::plain());
    REQUIRE(!rep.xi.empty());
    for (double xi : rep.xi) {
        CHECK(xi >= -2.5 - g.dxi());
        CHECK(xi <= -1.0 + g.dxi());
    }
}

TEST_CASE("trilinear quadrature agrees with the brute-force lattice sum") {
    SpaceGrid g(32 * pi, 512);
    SampledField u0 = from_spectrum(g, [](double x) { return gauss_spec(x, 0.0, 1.0); });
    SampledField v0 = from_spectrum(g, [](double x) { return gauss_spec(x, 0.5, 1.0); });
    SampledField w0 = from_spectrum(g, [](double x) { return gauss_spec(x, -0.3, 1.5); });
    for (auto [xi, tau] : {std::pair{1.0, -2.0}, std::pair{0.5, 0.25}, std::pair{-0.5, 1.0}}) {
        cplx q = trilinear_quadrature(u0, v0, w0, xi, tau).value;
        cplx b = trilinear_bruteforce(u0, v0, w0, xi, tau, 0.05);
        CAPTURE(xi);
        CAPTURE(tau);
        CHECK(std::abs(q - b) < 0.05 * std::abs(q) + 1e-6);
    }
}

TEST_CASE("trilinear value vanishes when a factor vanishes") {
    SpaceGrid g(32 * pi, 256);
    SampledField u0 = from_spectrum(g, [](double x) { return gauss_spec(x, 0.0, 1.0); });
    SampledField zero(g);
    CHECK(std::abs(trilinear_quadrature(u0, zero, u0, 1.0, -1.0).value) == 0.0);
    CHECK(std::abs(trilinear_bruteforce(u0, u0, zero, 1.0, -1.0, 0.05)) == 0.0);
}

TEST_CASE("ensembles are deterministic in the seed and reject empty runs") {
    EstimateId id = EstimateId::defaults(EstimateTag::LEM1);
    LabSetup S = small_lab();
    RatioReport a = ensemble_sup_ratio(id, 3, 5, "mixed", S, false);
    RatioReport b = ensemble_sup_ratio(id, 3, 5, "mixed", S, false);
    CHECK(a.ratios == b.ratios);
    CHECK(a.ratios_refined == b.ratios_refined);
    CHECK(a.max_ratio == b.max_ratio);
    RatioReport c = ensemble_sup_ratio(id, 3, 6, "mixed", S, false);
    CHECK(c.ratios != a.ratios);
    CHECK_THROWS_AS(ensemble_sup_ratio(id, 0, 5, "mixed", S, false), PreconditionError);
}

TEST_CASE("time localisation with b = b' is flat") {
    SpaceGrid g(32.0, 128);
    TimeGrid tg(2.0, 512);
    SpacetimeField f = free_solution(gaussian(g), tg, 1);
    LocalizationResult r = time_localization(f, 2.0, 0.2, 0.2, {0.05, 0.1, 0.2});
    for (double v : r.ratios) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.slope) < 1e-10);
    CHECK_THROWS_AS(time_localization(f, 2.0, 0.4, 0.0, {0.05, 0.1}), PreconditionError);
    CHECK_THROWS_AS(time_localization(f, 2.0, 0.7, 0.0, {0.05, 0.1, 0.2}), PreconditionError);
}

TEST_CASE("log-log slope is exact on power laws and scale invariant") {
    FieldGen gen(22);
    for (int k = 0; k < 20; ++k) {
        double a = gen.rng.uniform(-3, 3), c = gen.rng.uniform(0.1, 10);
        std::vector<double> x, y, cy;
        for (int i = 1; i <= 6; ++i) {
            x.push_back(0.3 * i);
            y.push_back(std::pow(0.3 * i, a));
            cy.push_back(c * y.back());
        }
        CHECK(loglog_slope(x, y) == doctest::Approx(a).epsilon(1e-12));
        CHECK(loglog_slope(x, cy) == doctest::Approx(loglog_slope(x, y)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), PreconditionError);
    CHECK_THROWS_AS(loglog_slope({1.0, 2.0}, {1.0, -1.0}), PreconditionError);
    CHECK(fit_constant({2, 4, 6}, {1, 2, 3}) == doctest::Approx(2.0));
}
