#include "nematiq/integrator.hpp"

#include "nematiq/diagnostics.hpp"

#include <cmath>

namespace nematiq {

int SolverConfig::steps() const {
    const double m = T / dt;
    const long r = std::lround(m);
    if (r < 1 || std::abs(m - r) > 1e-6)
        throw std::invalid_argument("SolverConfig: T must be a multiple of dt");
    return static_cast<int>(r);
}

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
    if (T < dt) throw std::invalid_argument("SolverConfig: T must be at least dt");
    for (size_t i = 1; i < k_levels.size(); ++i)
        if (!(k_levels[i] > k_levels[i - 1]))
            throw std::invalid_argument("SolverConfig: k_levels must be strictly increasing");
    steps();
}

void drift_nonlinearity(const SystemState& y, const PolynomialF& poly, const DirectorNoise& dn,
                        SpectralField& Fv, SpectralField& Fn) {
    Fv = apply_B(y.v, y.v);
    Fv += apply_M(y.n, y.n);
    Fv *= -1.0;

    Fn = apply_Btilde(y.v, y.n);
    Fn *= -1.0;
    Fn += eval_f(y.n, poly);
    if (dn.enabled()) axpy(0.5, apply_G(y.n, dn, 2), Fn);
}

void noise_increment(const SystemState& y, const DirectorNoise& dn, const VelocityNoise& vn,
                     const std::vector<double>& dW, SpectralField& Zv, SpectralField& Zn) {
    const Grid& g = y.v.grid();
    const int J = vn.modes();
    if (static_cast<int>(dW.size()) != J + 1)
        throw std::invalid_argument("noise_increment: wrong channel count");

    Zv = SpectralField(g, FieldTag::velocity);
    if (vn.enabled()) {
        if (vn.mode == VelocityNoise::Mode::smoothed_multiplicative) {
            // All modes share the kernel (I+A)^{-s} v; sum the weights first.
            double w = 0.0;
            for (int j = 0; j < J; ++j) w += vn.sigmas[j] * dW[j];
            SpectralField kern = apply_A1(y.v, -vn.smoothing_order, true);
            axpy(w, kern, Zv);
        } else {
            for (int j = 0; j < J; ++j) axpy(vn.sigmas[j] * dW[j], vn.basis[j], Zv);
        }
    }

    Zn = SpectralField(g, FieldTag::director);
    if (dn.enabled()) axpy(dW[J], apply_G(y.n, dn, 1), Zn);
}

namespace {

// Per-mode linear-solve factors, reused across steps.
struct StepTables {
    std::vector<double> factor;  // 1/(1+dt k^2) or e^{-dt k^2}

    StepTables(const Grid& g, double dt, Scheme scheme) : factor(g.size()) {
        for (int m = 0; m < g.size(); ++m)
            factor[m] = scheme == Scheme::semi_implicit_em
                            ? 1.0 / (1.0 + dt * g.k2(m))
                            : std::exp(-dt * g.k2(m));
    }

    void apply(SpectralField& f) const {
        for (int c = 0; c < f.ncomp(); ++c)
            for (size_t m = 0; m < f[c].size(); ++m) f[c][m] *= factor[m];
    }
};

SystemState step_with_tables(const SystemState& y, const std::vector<double>& dW,
                             const SolverConfig& cfg, const StepTables& tables) {
    if (!all_finite(y)) throw BlowupError("step: non-finite state");

    SpectralField Fv, Fn, Zv, Zn;
    drift_nonlinearity(y, cfg.poly, cfg.dnoise, Fv, Fn);
    noise_increment(y, cfg.dnoise, cfg.vnoise, dW, Zv, Zn);

    SystemState out(cfg.grid, y.t + cfg.dt);
    out.v = y.v;
    axpy(cfg.dt, Fv, out.v);
    out.v += Zv;
    tables.apply(out.v);

    out.n = y.n;
    axpy(cfg.dt, Fn, out.n);
    out.n += Zn;
    tables.apply(out.n);

    if (!all_finite(out)) throw BlowupError("step: blow-up detected (non-finite update)");
    return out;
}

TraceRow make_row(const SystemState& y, const SolverConfig& cfg, double xnorm_running) {
    TraceRow r;
    r.t = y.t;
    r.E = energy_E(y, cfg.poly);
    r.E_gl = energy_E_gl(y, cfg.poly);
    const DissipationParts d = dissipation_parts(y, cfg.poly);
    r.D = d.gradv2 + d.y2;
    r.psi1 = 0.5 * d.y2;
    r.psi2 = 0.5 * d.gradv2;
    r.xnorm = xnorm_running;  // Q is accumulated by the caller
    r.vL2 = l2_norm(y.v);
    r.nH1 = h1_norm(y.n);
    r.nH2 = h2_norm(y.n);
    r.lq = std::pow(lp_norm(y.n, 2.0 * cfg.poly.degree() + 2.0), 2.0 * cfg.poly.degree() + 2.0);
    r.Av2 = d.Av2;
    r.grad_y2 = d.grad_y2;
    return r;
}

}  // namespace

SystemState step(const SystemState& y, const std::vector<double>& dW, const SolverConfig& cfg) {
    StepTables tables(cfg.grid, cfg.dt, cfg.scheme);
    return step_with_tables(y, dW, cfg, tables);
}

RunResult run_trajectory(const SolverConfig& cfg, const SystemState& y0) {
    const WienerPath path(cfg.seed, cfg.dt, cfg.steps(), cfg.channels());
    return run_trajectory(cfg, y0, path);
}

RunResult run_trajectory(const SolverConfig& cfg, const SystemState& y0,
                         const WienerPath& path) {
    cfg.validate();
    const int M = cfg.steps();
    if (path.steps() < M || path.channels() != cfg.channels())
        throw std::invalid_argument("run_trajectory: path does not cover the run");
    if (std::abs(path.dt_fine() - cfg.dt) > 1e-12 * cfg.dt)
        throw std::invalid_argument("run_trajectory: path step does not match dt");

    const StepTables tables(cfg.grid, cfg.dt, cfg.scheme);

    RunResult res;
    res.traj.grid = cfg.grid;
    res.trace.poly_degree = cfg.poly.degree();
    res.trace.dt = cfg.dt;
    res.tau_crossings.assign(cfg.k_levels.size(), StoppingTime::never(StoppingKind::tau_k));

    RunningXNorm xn;
    SystemState y = y0;
    y.t = 0.0;

    double q_integral = 0.0;
    double prev_integrand = 0.0;
    const double k_max = cfg.k_levels.empty() ? std::numeric_limits<double>::infinity()
                                              : cfg.k_levels.back();

    std::vector<double> dW(cfg.channels());
    for (int m = 0; m <= M; ++m) {
        xn.push(y, y.t);
        TraceRow row = make_row(y, cfg, xn.value());
        const double h3 = h3_norm(y.n);
        const double cur_integrand = row.Av2 + h3 * h3;
        if (m > 0) q_integral += 0.5 * (cur_integrand + prev_integrand) * cfg.dt;
        prev_integrand = cur_integrand;
        row.Q = 2.0 * row.psi2 + row.nH2 * row.nH2 + q_integral;
        res.trace.rows.push_back(row);

        for (size_t i = 0; i < cfg.k_levels.size(); ++i)
            if (!res.tau_crossings[i].finite() && row.Q > cfg.k_levels[i] * cfg.k_levels[i])
                res.tau_crossings[i] =
                    StoppingTime::at_index(m, y.t, StoppingKind::tau_k);

        res.traj.times.push_back(y.t);
        if (cfg.store_states) res.traj.states.push_back(y);

        if (row.Q > k_max * k_max) {
            res.blown_up = true;
            break;
        }
        if (m == M) break;

        for (int c = 0; c < cfg.channels(); ++c) dW[c] = path.increment(c, m);
        try {
            y = step_with_tables(y, dW, cfg, tables);
        } catch (const BlowupError&) {
            res.blown_up = true;
            break;
        }
    }
    res.traj.blown_up = res.blown_up;
    return res;
}

StoppingTime detect_tau(const EnergyTrace& trace, double k) {
    for (size_t i = 0; i < trace.rows.size(); ++i)
        if (trace.rows[i].Q > k * k)
            return StoppingTime::at_index(static_cast<int>(i), trace.rows[i].t,
                                          StoppingKind::tau_k);
    return StoppingTime::never(StoppingKind::tau_k);
}

}  // namespace nematiq
