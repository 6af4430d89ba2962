#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlslab/errors.hpp"
#include "nlslab/norms.hpp"
#include "support.hpp"

using namespace nlslab;
using namespace testing;

TEST_CASE("profile tags parse and print back") {
    for (const auto& t : profile_tags()) CHECK(DataProfile::parse(t).tag().rfind(t, 0) == 0);
    DataProfile p = DataProfile::parse("power-law(0.75)");
    CHECK(p.kind == DataProfile::power_law);
    CHECK(p.beta == 0.75);
    CHECK(DataProfile::parse("modulated-bump").modulation == 2.0);
    CHECK_THROWS_AS(DataProfile::parse("sawtooth"), PreconditionError);
    CHECK_THROWS_AS(DataProfile::parse("power-law(0.6"), PreconditionError);
}

TEST_CASE("streams are deterministic and independent") {
    Stream a(9, 1), b(9, 1), c(9, 2), d(10, 1);
    for (int k = 0; k < 100; ++k) {
        double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(c.uniform() != Stream(9, 1).uniform());
    CHECK(d.uniform() != Stream(9, 1).uniform());
}

TEST_CASE("random fields are reproducible and resolution consistent") {
    SpaceGrid g(32.0, 256), fine(32.0, 512);
    for (const auto& t : profile_tags()) {
        if (t == "power-law") continue;
        DataProfile p = DataProfile::parse(t);
        SampledField a = nlslab::random_data(p, 3, g, 4), b = nlslab::random_data(p, 3, g, 4);
        CHECK(a.values == b.values);
        CHECK(nlslab::random_data(p, 3, g, 5).values != a.values);
        SampledField f = nlslab::random_data(p, 3, fine, 4);
        for (int j = 0; j < g.n; j += 7) CHECK(std::abs(f.values[2 * j] - a.values[j]) < 1e-8);
    }
}

TEST_CASE("Gaussian draws peak at the amplitude") {
    DataProfile p = DataProfile::parse("gaussian");
    p.amplitude = 2.5;
    SpaceGrid g(32.0, 256);
    for (std::uint64_t k = 0; k < 10; ++k)
        CHECK(std::abs(nlslab::random_data(p, 1, g, k).values[g.n / 2]) == doctest::Approx(2.5));
}

TEST_CASE("power-law data lies in the Fourier-Lebesgue space exactly when beta r' > 1") {
    auto increments = [](double beta, double r) {
        DataProfile p = DataProfile::parse("power-law");
        p.beta = beta;
        std::vector<double> v;
        for (int n : {512, 1024, 2048, 4096}) {
            SampledField f = nlslab::random_data(p, 1, SpaceGrid(64.0, n));
            v.push_back(std::pow(fourier_lebesgue_norm(f, {0.0, r}), dual(r)));
        }
        return std::vector<double>{v[1] - v[0], v[2] - v[1], v[3] - v[2]};
    };
    auto conv = increments(0.9, 2.0);
    CHECK(conv[2] < conv[1]);
    CHECK(conv[1] < conv[0]);
    auto div = increments(0.4, 2.0);
    CHECK(div[2] > div[1]);
    CHECK(div[1] > div[0]);
}
