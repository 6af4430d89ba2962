#pragma once

#include "nlslab/spectral.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nlslab {

struct DataProfile {
    enum Kind { gaussian, bump, modulated_bump, white_spectrum, power_law, soliton_like };
    Kind kind = gaussian;
    double amplitude = 1.0;
    double modulation = 0.0; // carrier frequency; for random draws the upper bound of |carrier|
    double beta = 0.6;       // power-law decay exponent

    static DataProfile parse(const std::string& tag);
    std::string tag() const;
};

const std::vector<std::string>& profile_tags();

// Independent stream for (seed, stream index).  Seeding goes through
// std::seed_seq so the draws are identical on every conforming platform.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t index);
    double uniform();                 // [0, 1)
    double uniform(double a, double b);
    double normal();                  // Box-Muller on uniform()

private:
    std::mt19937_64 eng_;
};

// Deterministic field for (profile, seed, grid); `index` picks an independent
// member of the family (trial number, factor number ...).  Fields are defined
// by continuum formulas, so the same (profile, seed, index) sampled on a finer
// grid approximates the same function.
SampledField random_data(const DataProfile& profile, std::uint64_t seed, const SpaceGrid& grid,
                         std::uint64_t index = 0);

// Field given by its continuum spectrum, centred at x = 0.
template <class F>
SampledField from_spectrum(const SpaceGrid& grid, F&& spectrum) {
    SpectralField S(grid);
    for (int i = 0; i < grid.n; ++i) S.coeffs[i] = spectrum(grid.xi(i));
    return inverse_fourier(S);
}

} // namespace nlslab
