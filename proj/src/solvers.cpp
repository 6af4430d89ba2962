#include "nlslab/solvers.hpp"

#include "fft.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nlslab {

const char* equation_name(Equation eq) {
    switch (eq) {
    case Equation::NLS101: return "NLS101";
    case Equation::GDNLS110: return "GDNLS110";
    case Equation::DNLS109: return "DNLS109";
    }
    return "?";
}

SolverConfig SolverConfig::to_time(double T, double dt) {
    require(dt > 0.0, "time step must be positive");
    require(T >= 0.0, "horizon must be nonnegative");
    SolverConfig c;
    c.dt = dt;
    c.steps = int(std::llround(T / dt));
    return c;
}

double mass(const SampledField& f) {
    double s = 0.0;
    for (const auto& z : f.values) s += std::norm(z);
    return s * f.grid.dx();
}

namespace {

class Stepper {
public:
    Stepper(const SpaceGrid& g, Equation eq, const SolverConfig& cfg)
        : n_(g.n), eq_(eq), cfg_(cfg), k_(g.n), mask_(g.n, 1.0), tmp_(g.n) {
        tau_ = cfg.reverse ? -cfg.dt : cfg.dt;
        for (int q = 0; q < n_; ++q) {
            int kk = q < n_ / 2 ? q : q - n_;
            k_[q] = 2.0 * std::numbers::pi * kk / g.L;
            if (cfg.dealias && 3 * std::abs(kk) > n_) mask_[q] = 0.0;
        }
        double lin = cfg.scheme == Scheme::Strang ? 0.5 * tau_ : tau_;
        lin_.resize(n_);
        for (int q = 0; q < n_; ++q) lin_[q] = std::polar(1.0 / n_, -k_[q] * k_[q] * lin);
    }

    void step(CVec& u) {
        linear(u);
        nonlinear(u);
        if (cfg_.scheme == Scheme::Strang) linear(u);
    }

private:
    void linear(CVec& u) {
        fft::dft1(u.data(), n_, -1);
        for (int q = 0; q < n_; ++q) u[q] *= lin_[q];
        fft::dft1(u.data(), n_, +1);
    }

    void phase_rotation(CVec& u, double h, int power, double coef) {
        for (auto& z : u) {
            double a2 = std::norm(z);
            z *= std::polar(1.0, coef * std::pow(a2, power / 2) * h);
        }
    }

    // dealiased spectral derivative of f, written into out
    void ddx(const CVec& f, CVec& out) {
        out = f;
        fft::dft1(out.data(), n_, -1);
        for (int q = 0; q < n_; ++q) out[q] *= cplx(0.0, k_[q]) * mask_[q] / double(n_);
        out[n_ / 2] = 0.0;
        fft::dft1(out.data(), n_, +1);
    }

    void filter(CVec& f) {
        if (!cfg_.dealias) return;
        fft::dft1(f.data(), n_, -1);
        for (int q = 0; q < n_; ++q) f[q] *= mask_[q] / double(n_);
        fft::dft1(f.data(), n_, +1);
    }

    // time derivative contributed by the derivative nonlinearity
    void rhs(const CVec& u, CVec& out) {
        if (eq_ == Equation::DNLS109) {
            for (int j = 0; j < n_; ++j) tmp_[j] = std::norm(u[j]) * u[j];
            ddx(tmp_, out);
        } else {
            for (int j = 0; j < n_; ++j) tmp_[j] = std::conj(u[j]);
            ddx(tmp_, out);
            for (int j = 0; j < n_; ++j) out[j] = -u[j] * u[j] * out[j];
            filter(out);
        }
    }

    void rk2(CVec& u, double h) {
        CVec k1(n_), mid(n_);
        rhs(u, k1);
        for (int j = 0; j < n_; ++j) mid[j] = u[j] + 0.5 * h * k1[j];
        rhs(mid, k1);
        for (int j = 0; j < n_; ++j) u[j] += h * k1[j];
    }

    void nonlinear(CVec& u) {
        switch (eq_) {
        case Equation::NLS101:
            phase_rotation(u, tau_, 2, 1.0);
            break;
        case Equation::GDNLS110:
            phase_rotation(u, 0.5 * tau_, 4, 0.5);
            rk2(u, tau_);
            phase_rotation(u, 0.5 * tau_, 4, 0.5);
            break;
        case Equation::DNLS109:
            rk2(u, tau_);
            break;
        }
    }

    int n_;
    Equation eq_;
    SolverConfig cfg_;
    double tau_;
    RVec k_, mask_;
    CVec lin_, tmp_;
};

} // namespace

Trajectory solve(const SampledField& u0, Equation eq, const SolverConfig& cfg) {
    u0.validate();
    require(cfg.dt > 0.0 && std::isfinite(cfg.dt), "time step must be positive");
    require(cfg.steps >= 0, "step count must be nonnegative");
    Trajectory tr;
    tr.config = cfg;
    tr.equation = eq;
    const double kmax = u0.grid.xi_max();
    if (cfg.dt * kmax * kmax > std::numbers::pi) {
        std::ostringstream os;
        os << "dt * max|xi|^2 = " << cfg.dt * kmax * kmax << " exceeds pi";
        tr.warnings.push_back(os.str());
    }
    if (eq != Equation::NLS101 && !cfg.dealias) tr.warnings.push_back("derivative nonlinearity without dealiasing");

    std::vector<int> marks;
    if (cfg.save_times.empty()) {
        marks = {0, cfg.steps};
    } else {
        for (double t : cfg.save_times) {
            long long k = std::llround(std::abs(t) / cfg.dt);
            marks.push_back(int(std::clamp<long long>(k, 0, cfg.steps)));
        }
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    const double sgn = cfg.reverse ? -1.0 : 1.0;
    CVec u = u0.values;
    Stepper st(u0.grid, eq, cfg);
    size_t next = 0;
    double m_prev = mass(u0);
    auto record = [&](int k) {
        SampledField s(u0.grid);
        s.values = u;
        tr.times.push_back(sgn * k * cfg.dt);
        tr.mass.push_back(mass(s));
        tr.snapshots.push_back(std::move(s));
    };
    if (next < marks.size() && marks[next] == 0) {
        record(0);
        ++next;
    }
    for (int k = 1; k <= cfg.steps; ++k) {
        st.step(u);
        double m = 0.0;
        for (const auto& z : u) m += std::norm(z);
        m *= u0.grid.dx();
        if (!std::isfinite(m)) {
            std::ostringstream os;
            os << equation_name(eq) << ": non-finite state at step " << k;
            throw NumericalGuardError(os.str());
        }
        if (std::abs(m - m_prev) > cfg.blowup_fraction * m_prev) {
            std::ostringstream os;
            os << equation_name(eq) << ": mass changed from " << m_prev << " to " << m << " in step " << k
               << " (t = " << sgn * k * cfg.dt << ")";
            throw NumericalGuardError(os.str());
        }
        m_prev = m;
        if (next < marks.size() && marks[next] == k) {
            record(k);
            ++next;
        }
    }
    return tr;
}

Trajectory make_trajectory(const std::vector<double>& times, const std::vector<SampledField>& snaps, Equation eq) {
    require(times.size() == snaps.size(), "times and snapshots differ in count");
    Trajectory tr;
    tr.times = times;
    tr.snapshots = snaps;
    tr.equation = eq;
    for (const auto& s : snaps) tr.mass.push_back(mass(s));
    return tr;
}

namespace {

// nonlinear term as it appears on the left-hand side of the equation
SampledField nonlinear_term(const SampledField& u, Equation eq) {
    SampledField out(u.grid);
    const int n = u.grid.n;
    switch (eq) {
    case Equation::NLS101:
        for (int j = 0; j < n; ++j) out.values[j] = std::norm(u.values[j]) * u.values[j];
        break;
    case Equation::GDNLS110: {
        SampledField vbx = derivative(conj(u), 1);
        for (int j = 0; j < n; ++j) {
            cplx v = u.values[j];
            double a2 = std::norm(v);
            out.values[j] = cplx(0.0, 1.0) * v * v * vbx.values[j] + 0.5 * a2 * a2 * v;
        }
        break;
    }
    case Equation::DNLS109: {
        SampledField g(u.grid);
        for (int j = 0; j < n; ++j) g.values[j] = std::norm(u.values[j]) * u.values[j];
        SampledField gx = derivative(g, 1);
        for (int j = 0; j < n; ++j) out.values[j] = cplx(0.0, -1.0) * gx.values[j];
        break;
    }
    }
    return out;
}

} // namespace

double pde_residual(const Trajectory& traj, Equation eq) {
    const size_t K = traj.snapshots.size();
    require(K >= 3, "residual needs at least 3 snapshots");
    const double h = traj.times[1] - traj.times[0];
    require(h != 0.0, "snapshot times must be distinct");
    for (size_t j = 1; j < K; ++j)
        require(std::abs((traj.times[j] - traj.times[j - 1]) - h) <= 1e-9 * std::abs(h),
                "residual needs uniformly spaced snapshots");
    const bool fourth = K >= 5;
    const size_t lo = fourth ? 2 : 1, hi = K - lo;
    double worst = 0.0;
    for (size_t j = lo; j < hi; ++j) {
        const auto& u = traj.snapshots[j];
        SampledField ut(u.grid);
        for (int k = 0; k < u.grid.n; ++k) {
            if (fourth)
                ut.values[k] = (-traj.snapshots[j + 2].values[k] + 8.0 * traj.snapshots[j + 1].values[k] -
                                8.0 * traj.snapshots[j - 1].values[k] + traj.snapshots[j - 2].values[k]) /
                               (12.0 * h);
            else
                ut.values[k] = (traj.snapshots[j + 1].values[k] - traj.snapshots[j - 1].values[k]) / (2.0 * h);
        }
        SampledField uxx = derivative(u, 2);
        SampledField nl = nonlinear_term(u, eq);
        SampledField res(u.grid);
        for (int k = 0; k < u.grid.n; ++k)
            res.values[k] = cplx(0.0, 1.0) * ut.values[k] + uxx.values[k] + nl.values[k];
        double scale = l2_norm(ut) + l2_norm(uxx) + l2_norm(nl);
        if (scale == 0.0) continue;
        worst = std::max(worst, l2_norm(res) / scale);
    }
    return worst;
}

Trajectory solve_dnls_via_gauge(const SampledField& u0, const SolverConfig& cfg) {
    SampledField v0 = gauge_forward(u0);
    Trajectory tv = solve(v0, Equation::GDNLS110, cfg);
    Trajectory tu = tv;
    tu.equation = Equation::DNLS109;
    for (size_t j = 0; j < tu.snapshots.size(); ++j) {
        tu.snapshots[j] = gauge_inverse(tv.snapshots[j]);
        tu.mass[j] = mass(tu.snapshots[j]);
    }
    return tu;
}

} // namespace nlslab
