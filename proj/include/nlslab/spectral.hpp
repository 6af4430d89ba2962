#pragma once

#include <complex>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

// Periodic box [-L/2, L/2) with n points.  Frequencies xi_k = 2 pi k / L,
// k in [-n/2, n/2), stored in increasing order (index i <-> k = i - n/2).
struct SpaceGrid {
    double L = 0.0;
    int n = 0;

    SpaceGrid() = default;
    SpaceGrid(double length, int points);

    double dx() const { return L / n; }
    double dxi() const;
    double x(int j) const { return -0.5 * L + j * dx(); }
    double xi(int i) const { return dxi() * (i - n / 2); }
    RVec xs() const;
    RVec xis() const;
    // largest |xi| on the lattice (the Nyquist magnitude)
    double xi_max() const { return dxi() * (n / 2); }
    bool operator==(const SpaceGrid& o) const { return L == o.L && n == o.n; }
};

// Uniform times t_j = t0 + j*dt, dt = span/m.  The default origin centres the
// window on t = 0.
struct TimeGrid {
    double span = 0.0;
    int m = 0;
    double t0 = 0.0;

    TimeGrid() = default;
    TimeGrid(double span_, int m_);
    TimeGrid(double span_, int m_, double t0_);

    double dt() const { return span / m; }
    double dtau() const;
    double t(int j) const { return t0 + j * dt(); }
    double tau(int l) const { return dtau() * (l - m / 2); }
    bool operator==(const TimeGrid& o) const { return span == o.span && m == o.m && t0 == o.t0; }
};

struct SampledField {
    SpaceGrid grid;
    CVec values;

    SampledField() = default;
    explicit SampledField(const SpaceGrid& g) : grid(g), values(g.n, 0.0) {}
    SampledField(const SpaceGrid& g, CVec v);
    void validate() const;
};

struct SpectralField {
    SpaceGrid grid;
    CVec coeffs;

    SpectralField() = default;
    explicit SpectralField(const SpaceGrid& g) : grid(g), coeffs(g.n, 0.0) {}
    SpectralField(const SpaceGrid& g, CVec c);
    void validate() const;
    // linear interpolation of the coefficients at an arbitrary frequency, 0 outside the lattice
    cplx at(double xi) const;
};

struct WindowSpec {
    enum Kind { none, smooth };
    Kind kind = none;
    double delta = 1.0;

    static WindowSpec plain() { return {}; }
    static WindowSpec smooth_cutoff(double d) { return {smooth, d}; }
};

// Smooth cut-off: 1 on [-1,1], 0 outside [-2,2], C-infinity in between.
double cutoff(double t);
// psi(t/delta) for smooth windows, 1 for kind none.
double window_value(const WindowSpec& w, double t);

// values[j*n + k]: time index j, space index k.
struct SpacetimeField {
    SpaceGrid grid;
    TimeGrid times;
    CVec values;

    SpacetimeField() = default;
    SpacetimeField(const SpaceGrid& g, const TimeGrid& tg) : grid(g), times(tg), values(size_t(g.n) * tg.m, 0.0) {}
    cplx& operator()(int j, int k) { return values[size_t(j) * grid.n + k]; }
    cplx operator()(int j, int k) const { return values[size_t(j) * grid.n + k]; }
    void validate() const;
};

// coeffs[l*n + i]: tau index l, xi index i, both in increasing order.
struct SpacetimeSpectrum {
    SpaceGrid grid;
    TimeGrid times;
    WindowSpec window;
    CVec coeffs;

    cplx& operator()(int l, int i) { return coeffs[size_t(l) * grid.n + i]; }
    cplx operator()(int l, int i) const { return coeffs[size_t(l) * grid.n + i]; }
    double xi(int i) const { return grid.xi(i); }
    double tau(int l) const { return times.tau(l); }
    void validate() const;
};

struct MultiplierSpec {
    enum Kind { riesz, bessel, modulation, phase };
    Kind kind = bessel;
    double exponent = 0.0;
    // modulation: weight <tau + sign xi^2>^exponent; phase: exp(-i sign t xi^2)
    int sign = 1;
    double t = 0.0;
    // value used at xi = 0 for riesz with negative exponent
    bool has_zero_rule = false;
    double zero_value = 0.0;

    static MultiplierSpec riesz_of(double s);
    static MultiplierSpec bessel_of(double s);
    static MultiplierSpec modulation_of(double b, int sign = 1);
    static MultiplierSpec phase_of(double t, int sign = 1);
};

double japanese(double x); // <x> = sqrt(1 + x^2)

SpectralField forward_fourier(const SampledField& f);
SampledField inverse_fourier(const SpectralField& F);

SpectralField apply_multiplier(const SpectralField& F, const MultiplierSpec& m);
SpacetimeSpectrum apply_multiplier(const SpacetimeSpectrum& F, const MultiplierSpec& m);

// sign +1: exp(i t d_x^2), coefficient factor exp(-i t xi^2).  sign -1: the adjoint direction.
SampledField free_propagate(const SampledField& u0, double t, int sign = 1);
SpectralField free_propagate(const SpectralField& U0, double t, int sign = 1);

// Free evolution sampled on a time grid, multiplied by the window.
SpacetimeField free_solution(const SampledField& u0, const TimeGrid& tg, int sign = 1,
                             const WindowSpec& w = WindowSpec::plain());

SpacetimeSpectrum spacetime_transform(const SpacetimeField& f, const WindowSpec& w = WindowSpec::plain());
SpacetimeField inverse_spacetime_transform(const SpacetimeSpectrum& F);

// Spectral derivative d_x^order with the Nyquist mode removed for odd orders.
SampledField derivative(const SampledField& f, int order = 1);

// Discrete L^2 norms (Riemann sums on the periodic lattice).
double l2_norm(const SampledField& f);
double l2_distance(const SampledField& a, const SampledField& b);
double spectral_l2_norm(const SpectralField& F);

// Pointwise helpers.
SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator-(const SampledField& a, const SampledField& b);
SampledField operator*(cplx s, const SampledField& a);
SampledField conj(const SampledField& a);

SpacetimeField multiply(const SpacetimeField& a, const SpacetimeField& b);
SpacetimeField conj(const SpacetimeField& a);
SpacetimeField apply_window(const SpacetimeField& f, const WindowSpec& w);

} // namespace nlslab
