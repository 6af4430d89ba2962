#include "nlslab/spectral.hpp"

#include "fft.hpp"
#include "nlslab/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nlslab {

namespace {

constexpr double pi = std::numbers::pi;

// (-1)^k for signed k
double alt(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

int wrap(int k, int n) { return ((k % n) + n) % n; }

bool all_finite(const CVec& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace

SpaceGrid::SpaceGrid(double length, int points) : L(length), n(points) {
    require(length > 0 && std::isfinite(length), "grid length must be positive");
    require(points > 0 && points % 2 == 0, "grid point count must be a positive even integer");
}

double SpaceGrid::dxi() const { return 2.0 * pi / L; }

RVec SpaceGrid::xs() const {
    RVec r(n);
    for (int j = 0; j < n; ++j) r[j] = x(j);
    return r;
}

RVec SpaceGrid::xis() const {
    RVec r(n);
    for (int i = 0; i < n; ++i) r[i] = xi(i);
    return r;
}

TimeGrid::TimeGrid(double span_, int m_) : TimeGrid(span_, m_, -0.5 * span_) {}

TimeGrid::TimeGrid(double span_, int m_, double t0_) : span(span_), m(m_), t0(t0_) {
    require(span_ > 0 && std::isfinite(span_), "time span must be positive");
    require(m_ > 0 && m_ % 2 == 0, "time sample count must be a positive even integer");
}

double TimeGrid::dtau() const { return 2.0 * pi / span; }

SampledField::SampledField(const SpaceGrid& g, CVec v) : grid(g), values(std::move(v)) { validate(); }

void SampledField::validate() const {
    require(int(values.size()) == grid.n, "field length " + std::to_string(values.size()) +
                                              " does not match grid size " + std::to_string(grid.n));
    require(all_finite(values), "field contains non-finite values");
}

SpectralField::SpectralField(const SpaceGrid& g, CVec c) : grid(g), coeffs(std::move(c)) { validate(); }

void SpectralField::validate() const {
    require(int(coeffs.size()) == grid.n, "spectrum length does not match grid size");
    require(all_finite(coeffs), "spectrum contains non-finite values");
}

cplx SpectralField::at(double xi) const {
    double p = xi / grid.dxi() + grid.n / 2;
    double fl = std::floor(p);
    int i0 = int(fl);
    double w = p - fl;
    auto get = [&](int i) -> cplx { return (i >= 0 && i < grid.n) ? coeffs[i] : cplx(0.0); };
    if (w == 0.0) return get(i0);
    return (1.0 - w) * get(i0) + w * get(i0 + 1);
}

double cutoff(double t) {
    double a = std::abs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    auto h = [](double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; };
    double up = h(2.0 - a);
    return up / (up + h(a - 1.0));
}

double window_value(const WindowSpec& w, double t) {
    if (w.kind == WindowSpec::none) return 1.0;
    return cutoff(t / w.delta);
}

void SpacetimeField::validate() const {
    require(values.size() == size_t(grid.n) * times.m, "spacetime field shape mismatch");
    require(all_finite(values), "spacetime field contains non-finite values");
}

void SpacetimeSpectrum::validate() const {
    require(coeffs.size() == size_t(grid.n) * times.m, "spacetime spectrum shape mismatch");
    require(all_finite(coeffs), "spacetime spectrum contains non-finite values");
}

MultiplierSpec MultiplierSpec::riesz_of(double s) {
    MultiplierSpec m;
    m.kind = riesz;
    m.exponent = s;
    if (s < 0) {
        m.has_zero_rule = true;
        m.zero_value = 0.0;
    }
    return m;
}

MultiplierSpec MultiplierSpec::bessel_of(double s) {
    MultiplierSpec m;
    m.kind = bessel;
    m.exponent = s;
    return m;
}

MultiplierSpec MultiplierSpec::modulation_of(double b, int sign) {
    MultiplierSpec m;
    m.kind = modulation;
    m.exponent = b;
    m.sign = sign;
    return m;
}

MultiplierSpec MultiplierSpec::phase_of(double t, int sign) {
    MultiplierSpec m;
    m.kind = phase;
    m.t = t;
    m.sign = sign;
    return m;
}

double japanese(double x) { return std::sqrt(1.0 + x * x); }

SpectralField forward_fourier(const SampledField& f) {
    f.validate();
    const int n = f.grid.n;
    CVec buf = f.values;
    fft::dft1(buf.data(), n, -1);
    SpectralField F(f.grid);
    const double dx = f.grid.dx();
    for (int i = 0; i < n; ++i) {
        int k = i - n / 2;
        F.coeffs[i] = dx * alt(k) * buf[wrap(k, n)];
    }
    return F;
}

SampledField inverse_fourier(const SpectralField& F) {
    F.validate();
    const int n = F.grid.n;
    CVec buf(n);
    for (int i = 0; i < n; ++i) {
        int k = i - n / 2;
        buf[wrap(k, n)] = alt(k) * F.coeffs[i];
    }
    fft::dft1(buf.data(), n, +1);
    const double s = 1.0 / F.grid.L;
    for (auto& z : buf) z *= s;
    SampledField f;
    f.grid = F.grid;
    f.values = std::move(buf);
    return f;
}

namespace {

double space_multiplier(const MultiplierSpec& m, double xi) {
    switch (m.kind) {
    case MultiplierSpec::riesz:
        if (xi == 0.0 && m.exponent < 0) {
            require(m.has_zero_rule, "Riesz potential with negative exponent needs a zero-mode rule");
            return m.zero_value;
        }
        if (xi == 0.0 && m.exponent == 0) return 1.0;
        return std::pow(std::abs(xi), m.exponent);
    case MultiplierSpec::bessel:
        return std::pow(1.0 + xi * xi, 0.5 * m.exponent);
    default:
        return 1.0;
    }
}

} // namespace

SpectralField apply_multiplier(const SpectralField& F, const MultiplierSpec& m) {
    require(m.kind != MultiplierSpec::modulation, "modulation weights need a space-time spectrum");
    SpectralField G = F;
    for (int i = 0; i < F.grid.n; ++i) {
        double xi = F.grid.xi(i);
        if (m.kind == MultiplierSpec::phase)
            G.coeffs[i] *= std::polar(1.0, -m.sign * m.t * xi * xi);
        else
            G.coeffs[i] *= space_multiplier(m, xi);
    }
    return G;
}

SpacetimeSpectrum apply_multiplier(const SpacetimeSpectrum& F, const MultiplierSpec& m) {
    SpacetimeSpectrum G = F;
    const int n = F.grid.n;
    for (int l = 0; l < F.times.m; ++l) {
        double tau = F.tau(l);
        for (int i = 0; i < n; ++i) {
            double xi = F.xi(i);
            double v;
            if (m.kind == MultiplierSpec::modulation) {
                v = std::pow(1.0 + std::pow(tau + m.sign * xi * xi, 2), 0.5 * m.exponent);
            } else if (m.kind == MultiplierSpec::phase) {
                G(l, i) *= std::polar(1.0, -m.sign * m.t * xi * xi);
                continue;
            } else {
                v = space_multiplier(m, xi);
            }
            G(l, i) *= v;
        }
    }
    return G;
}

SpectralField free_propagate(const SpectralField& U0, double t, int sign) {
    return apply_multiplier(U0, MultiplierSpec::phase_of(t, sign));
}

SampledField free_propagate(const SampledField& u0, double t, int sign) {
    require(sign == 1 || sign == -1, "propagator sign must be +1 or -1");
    if (t == 0.0) return u0;
    return inverse_fourier(free_propagate(forward_fourier(u0), t, sign));
}

SpacetimeField free_solution(const SampledField& u0, const TimeGrid& tg, int sign, const WindowSpec& w) {
    require(sign == 1 || sign == -1, "propagator sign must be +1 or -1");
    SpectralField U0 = forward_fourier(u0);
    const int n = u0.grid.n;
    SpacetimeField f(u0.grid, tg);
    const double s = 1.0 / u0.grid.L;
    for (int j = 0; j < tg.m; ++j) {
        double t = tg.t(j);
        double wv = window_value(w, t);
        cplx* row = &f.values[size_t(j) * n];
        for (int i = 0; i < n; ++i) {
            int k = i - n / 2;
            double xi = u0.grid.xi(i);
            row[wrap(k, n)] = (s * wv * alt(k)) * U0.coeffs[i] * std::polar(1.0, -sign * t * xi * xi);
        }
    }
    fft::dft_rows(f.values.data(), n, tg.m, +1);
    return f;
}

SpacetimeField apply_window(const SpacetimeField& f, const WindowSpec& w) {
    if (w.kind == WindowSpec::none) return f;
    SpacetimeField g = f;
    for (int j = 0; j < f.times.m; ++j) {
        double wv = window_value(w, f.times.t(j));
        for (int k = 0; k < f.grid.n; ++k) g(j, k) *= wv;
    }
    return g;
}

SpacetimeSpectrum spacetime_transform(const SpacetimeField& f, const WindowSpec& w) {
    f.validate();
    if (w.kind == WindowSpec::smooth) {
        require(w.delta > 0, "window half-width must be positive");
        double tmax = std::max(std::abs(f.times.t0), std::abs(f.times.t0 + f.times.span));
        require(2.0 * w.delta <= tmax + 1e-12,
                "window support [-2 delta, 2 delta] exceeds the time span");
    }
    const int n = f.grid.n, m = f.times.m;
    SpacetimeField g = apply_window(f, w);
    fft::dft2(g.values.data(), m, n, -1);
    SpacetimeSpectrum F;
    F.grid = f.grid;
    F.times = f.times;
    F.window = w;
    F.coeffs.assign(size_t(n) * m, 0.0);
    const double scale = f.grid.dx() * f.times.dt();
    for (int l = 0; l < m; ++l) {
        int lk = l - m / 2;
        cplx tphase = std::polar(scale, -f.times.tau(l) * f.times.t0);
        const cplx* src = &g.values[size_t(wrap(lk, m)) * n];
        for (int i = 0; i < n; ++i) {
            int k = i - n / 2;
            F(l, i) = tphase * alt(k) * src[wrap(k, n)];
        }
    }
    return F;
}

SpacetimeField inverse_spacetime_transform(const SpacetimeSpectrum& F) {
    F.validate();
    const int n = F.grid.n, m = F.times.m;
    SpacetimeField f(F.grid, F.times);
    const double scale = 1.0 / (F.grid.L * F.times.span);
    for (int l = 0; l < m; ++l) {
        int lk = l - m / 2;
        cplx tphase = std::polar(scale, F.tau(l) * F.times.t0);
        cplx* dst = &f.values[size_t(wrap(lk, m)) * n];
        for (int i = 0; i < n; ++i) {
            int k = i - n / 2;
            dst[wrap(k, n)] = tphase * alt(k) * F(l, i);
        }
    }
    fft::dft2(f.values.data(), m, n, +1);
    return f;
}

SampledField derivative(const SampledField& f, int order) {
    require(order >= 0, "derivative order must be nonnegative");
    SpectralField F = forward_fourier(f);
    const int n = f.grid.n;
    for (int i = 0; i < n; ++i) {
        cplx ik(0.0, f.grid.xi(i));
        F.coeffs[i] *= std::pow(ik, order);
    }
    if (order % 2 == 1) F.coeffs[0] = 0.0;
    return inverse_fourier(F);
}

double l2_norm(const SampledField& f) {
    double s = 0.0;
    for (const auto& z : f.values) s += std::norm(z);
    return std::sqrt(s * f.grid.dx());
}

double l2_distance(const SampledField& a, const SampledField& b) {
    require(a.grid == b.grid, "fields live on different grids");
    double s = 0.0;
    for (size_t j = 0; j < a.values.size(); ++j) s += std::norm(a.values[j] - b.values[j]);
    return std::sqrt(s * a.grid.dx());
}

double spectral_l2_norm(const SpectralField& F) {
    double s = 0.0;
    for (const auto& z : F.coeffs) s += std::norm(z);
    return std::sqrt(s * F.grid.dxi());
}

SampledField operator+(const SampledField& a, const SampledField& b) {
    require(a.grid == b.grid, "fields live on different grids");
    SampledField c = a;
    for (size_t j = 0; j < c.values.size(); ++j) c.values[j] += b.values[j];
    return c;
}

SampledField operator-(const SampledField& a, const SampledField& b) {
    require(a.grid == b.grid, "fields live on different grids");
    SampledField c = a;
    for (size_t j = 0; j < c.values.size(); ++j) c.values[j] -= b.values[j];
    return c;
}

SampledField operator*(cplx s, const SampledField& a) {
    SampledField c = a;
    for (auto& z : c.values) z *= s;
    return c;
}

SampledField conj(const SampledField& a) {
    SampledField c = a;
    for (auto& z : c.values) z = std::conj(z);
    return c;
}

SpacetimeField multiply(const SpacetimeField& a, const SpacetimeField& b) {
    require(a.grid == b.grid && a.times == b.times, "spacetime fields live on different lattices");
    SpacetimeField c = a;
    for (size_t j = 0; j < c.values.size(); ++j) c.values[j] *= b.values[j];
    return c;
}

SpacetimeField conj(const SpacetimeField& a) {
    SpacetimeField c = a;
    for (auto& z : c.values) z = std::conj(z);
    return c;
}

} // namespace nlslab
