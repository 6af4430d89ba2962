#include "nlslab/data.hpp"

#include "nlslab/errors.hpp"

#include <cmath>
#include <numbers>

namespace nlslab {

namespace {

const std::vector<std::string> tags = {"gaussian", "bump", "modulated-bump", "white-spectrum", "power-law",
                                       "soliton-like"};

} // namespace

const std::vector<std::string>& profile_tags() { return tags; }

DataProfile DataProfile::parse(const std::string& tag) {
    DataProfile p;
    std::string name = tag;
    // power-law(0.6) carries its exponent inline
    auto open = tag.find('(');
    if (open != std::string::npos) {
        require(tag.back() == ')', "malformed profile tag '" + tag + "'");
        name = tag.substr(0, open);
        p.beta = std::stod(tag.substr(open + 1, tag.size() - open - 2));
    }
    for (size_t k = 0; k < tags.size(); ++k)
        if (tags[k] == name) {
            p.kind = Kind(k);
            if (p.kind == modulated_bump) p.modulation = 2.0;
            return p;
        }
    std::string all;
    for (const auto& t : tags) all += (all.empty() ? "" : ", ") + t;
    throw PreconditionError("unknown data profile '" + tag + "' (valid: " + all + ")");
}

std::string DataProfile::tag() const {
    std::string t = tags[kind];
    if (kind == power_law) t += "(" + std::to_string(beta) + ")";
    return t;
}

Stream::Stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                      std::uint32_t(index >> 32), 0x6e6c73u};
    eng_.seed(seq);
}

double Stream::uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

double Stream::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Stream::normal() {
    double u1 = uniform(), u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

double bump(double x, double R) {
    double y = x / R;
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - y * y));
}

} // namespace

SampledField random_data(const DataProfile& p, std::uint64_t seed, const SpaceGrid& grid, std::uint64_t index) {
    Stream rng(seed, index);
    const double a = p.amplitude;
    // common random parameters, drawn in a fixed order
    double width = rng.uniform(0.7, 1.5);
    double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double carrier = p.modulation != 0.0 ? rng.uniform(-std::abs(p.modulation), std::abs(p.modulation))
                                         : rng.uniform(-1.5, 1.5);
    cplx rot = std::polar(1.0, phase);
    SampledField f(grid);
    switch (p.kind) {
    case DataProfile::gaussian:
        for (int j = 0; j < grid.n; ++j) {
            double x = grid.x(j);
            f.values[j] = a * rot * std::exp(-0.5 * x * x / (width * width)) * std::polar(1.0, carrier * x);
        }
        break;
    case DataProfile::bump:
    case DataProfile::modulated_bump: {
        double R = 2.0 * width + 1.0;
        double k = p.kind == DataProfile::bump ? 0.0 : carrier;
        for (int j = 0; j < grid.n; ++j) {
            double x = grid.x(j);
            f.values[j] = a * rot * bump(x, R) * std::polar(1.0, k * x);
        }
        break;
    }
    case DataProfile::soliton_like:
        for (int j = 0; j < grid.n; ++j) {
            double x = grid.x(j);
            f.values[j] = a * rot * (1.0 / std::cosh(x / width)) * std::polar(1.0, carrier * x);
        }
        break;
    case DataProfile::white_spectrum: {
        // eight spectral atoms of width 1/2 at random centres in [-3, 3]
        const int atoms = 8;
        double c[atoms];
        cplx w[atoms];
        for (int q = 0; q < atoms; ++q) {
            c[q] = rng.uniform(-3.0, 3.0);
            w[q] = cplx(rng.normal(), rng.normal());
        }
        f = from_spectrum(grid, [&](double xi) {
            cplx s = 0.0;
            for (int q = 0; q < atoms; ++q) s += w[q] * std::exp(-2.0 * (xi - c[q]) * (xi - c[q]));
            return a * rot * s;
        });
        break;
    }
    case DataProfile::power_law:
        f = from_spectrum(grid, [&](double xi) { return cplx(a * std::pow(1.0 + xi * xi, -0.5 * p.beta)); });
        break;
    }
    return f;
}

} // namespace nlslab
