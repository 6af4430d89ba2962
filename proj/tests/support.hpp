#pragma once

#include "nlslab/data.hpp"
#include "nlslab/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace testing {

using namespace nlslab;

constexpr double pi = std::numbers::pi;

// Hand-rolled generator of smooth, well-localised random fields: a few
// Gaussian packets with random centres, widths, carriers and complex weights.
struct FieldGen {
    Stream rng;
    explicit FieldGen(std::uint64_t seed, std::uint64_t stream = 0) : rng(seed, stream) {}

    SampledField packets(const SpaceGrid& g, int count = 3, double spread = 0.1) {
        SampledField f(g);
        for (int q = 0; q < count; ++q) {
            double c = rng.uniform(-spread, spread) * g.L;
            double w = rng.uniform(0.6, 1.6);
            double k = rng.uniform(-2.0, 2.0);
            cplx a(rng.normal(), rng.normal());
            for (int j = 0; j < g.n; ++j) {
                double x = g.x(j) - c;
                f.values[j] += a * std::exp(-0.5 * x * x / (w * w)) * std::polar(1.0, k * x);
            }
        }
        return f;
    }

    cplx scalar() { return {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)}; }
};

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double max_abs_diff(const CVec& a, const CVec& b) {
    double m = 0.0;
    for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline SampledField gaussian(const SpaceGrid& g, double width = 1.0, double carrier = 0.0) {
    SampledField f(g);
    for (int j = 0; j < g.n; ++j) {
        double x = g.x(j);
        f.values[j] = std::exp(-0.5 * x * x / (width * width)) * std::polar(1.0, carrier * x);
    }
    return f;
}

} // namespace testing
