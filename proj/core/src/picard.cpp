#include "nematiq/picard.hpp"

#include "nematiq/sampling.hpp"

#include <cmath>

namespace nematiq {

double theta(double x, const CutoffSpec& spec) {
    if (x < 0.0) throw std::invalid_argument("theta: argument must be nonnegative");
    const double n = spec.n;
    if (x <= n) return 1.0;
    if (x >= 2.0 * n) return 0.0;
    const double u = (x - n) / n;
    const double s = u * u * u * (u * (6.0 * u - 15.0) + 10.0);  // quintic smoothstep
    return 1.0 - s;
}

namespace {

std::vector<double> heat_factor(const Grid& g, double dt) {
    std::vector<double> f(g.size());
    for (int m = 0; m < g.size(); ++m) f[m] = std::exp(-dt * g.k2(m));
    return f;
}

void scale_modes(SpectralField& f, const std::vector<double>& factor) {
    for (int c = 0; c < f.ncomp(); ++c)
        for (size_t m = 0; m < f[c].size(); ++m) f[c][m] *= factor[m];
}

int grid_index(double t, double dt, const char* where) {
    const long i = std::lround(t / dt);
    if (i < 0 || std::abs(t - i * dt) > 1e-9 * std::max(dt, 1.0))
        throw std::invalid_argument(std::string(where) + ": time not grid-aligned");
    return static_cast<int>(i);
}

void check_anchor_agreement(const Trajectory& u, const Trajectory& anchor, int delta_idx,
                            const char* where) {
    if (static_cast<int>(anchor.states.size()) < delta_idx + 1)
        throw std::invalid_argument(std::string(where) + ": anchor shorter than [0,delta]");
    for (int m = 0; m <= delta_idx; ++m)
        if (coeff_distance(u.states[m].v, anchor.states[m].v) != 0.0 ||
            coeff_distance(u.states[m].n, anchor.states[m].n) != 0.0)
            throw std::invalid_argument(std::string(where) +
                                        ": candidate does not agree with the anchor on [0,delta]");
}

// Core recursion shared by psi_map and the equation-defect evaluation.
// The anchor segment [0, delta_idx] passes through verbatim and the
// recursion starts at the anchor end: over an anchor that is itself a
// window fixed point this coincides with evaluating the convolutions from
// time zero, and it keeps chained windows bit-stable.  The running X-norm
// driving theta still accumulates from time zero.
Trajectory psi_recursion(const Trajectory& u, const PicardProblem& prob,
                         const CutoffSpec& cutoff, int delta_idx, int M_end) {
    const SolverConfig& cfg = prob.cfg;
    const std::vector<double> ef = heat_factor(cfg.grid, cfg.dt);

    Trajectory out;
    out.grid = cfg.grid;
    out.times = u.times;
    out.states.reserve(M_end + 1);
    for (int m = 0; m <= delta_idx; ++m) out.states.push_back(u.states[m]);

    RunningXNorm xn;
    for (int m = 0; m < delta_idx; ++m) xn.push(u.states[m], u.times[m]);

    std::vector<double> dW(cfg.channels());
    SystemState acc = u.states[delta_idx];
    for (int m = delta_idx; m < M_end; ++m) {
        xn.push(u.states[m], u.times[m]);
        const double th = theta(xn.value(), cutoff);

        SpectralField Fv, Fn, Zv, Zn;
        drift_nonlinearity(u.states[m], cfg.poly, cfg.dnoise, Fv, Fn);
        for (int c = 0; c < cfg.channels(); ++c) dW[c] = prob.path.increment(c, m);
        noise_increment(u.states[m], cfg.dnoise, cfg.vnoise, dW, Zv, Zn);

        axpy(th * cfg.dt, Fv, acc.v);
        axpy(th, Zv, acc.v);
        axpy(th * cfg.dt, Fn, acc.n);
        axpy(th, Zn, acc.n);
        scale_modes(acc.v, ef);
        scale_modes(acc.n, ef);
        acc.t = u.times[m + 1];
        out.states.push_back(acc);
    }
    return out;
}

}  // namespace

Trajectory psi_map(const Trajectory& u, const PicardWindow& win, const PicardProblem& prob) {
    const double dt = prob.cfg.dt;
    const int delta_idx = grid_index(win.t_start, dt, "psi_map");
    const int end_idx = grid_index(win.t_end, dt, "psi_map");
    if (static_cast<int>(u.states.size()) != end_idx + 1)
        throw std::invalid_argument("psi_map: candidate does not cover [0, t_end]");
    check_anchor_agreement(u, win.anchor, delta_idx, "psi_map");
    return psi_recursion(u, prob, win.cutoff, delta_idx, end_idx);
}

namespace {

// Initial iterate: anchor followed by the pure semigroup continuation.
Trajectory semigroup_continuation(const PicardWindow& win, const PicardProblem& prob,
                                  int delta_idx, int end_idx) {
    const SolverConfig& cfg = prob.cfg;
    const std::vector<double> ef = heat_factor(cfg.grid, cfg.dt);
    Trajectory u;
    u.grid = cfg.grid;
    for (int m = 0; m <= end_idx; ++m) u.times.push_back(m * cfg.dt);
    u.states.reserve(end_idx + 1);
    for (int m = 0; m <= delta_idx; ++m) u.states.push_back(win.anchor.states[m]);
    SystemState acc = u.states.back();
    for (int m = delta_idx; m < end_idx; ++m) {
        scale_modes(acc.v, ef);
        scale_modes(acc.n, ef);
        acc.t = (m + 1) * cfg.dt;
        u.states.push_back(acc);
    }
    return u;
}

}  // namespace

FixedPointResult fixed_point(const PicardWindow& win, const PicardProblem& prob, double tol,
                             int max_iter) {
    const double dt = prob.cfg.dt;
    const int delta_idx = grid_index(win.t_start, dt, "fixed_point");
    const int end_idx = grid_index(win.t_end, dt, "fixed_point");
    if (end_idx <= delta_idx) throw std::invalid_argument("fixed_point: empty window");

    FixedPointResult res;
    Trajectory u = semigroup_continuation(win, prob, delta_idx, end_idx);

    double prev_dist = -1.0;
    int bad_streak = 0;
    for (int k = 1; k <= max_iter; ++k) {
        Trajectory next = psi_map(u, win, prob);
        const double dist = xnorm_distance(next, u, 0.0, win.t_end);
        const double factor = prev_dist > 0.0 ? dist / prev_dist : 0.0;
        res.iters.push_back({0, k, dist, factor});
        u = std::move(next);
        if (dist <= tol) {
            res.converged = true;
            res.residual = dist;
            break;
        }
        if (prev_dist > 0.0) {
            bad_streak = factor >= 1.0 ? bad_streak + 1 : 0;
            if (bad_streak >= 3)
                throw WindowTooLongError(
                    "fixed_point: no contraction over 3 iterations; halve the window length");
        }
        prev_dist = dist;
        res.residual = dist;
    }
    res.traj = std::move(u);
    return res;
}

ChainResult chain_windows(const PicardProblem& prob, const CutoffSpec& cutoff,
                          double window_len, double tol, int max_iter) {
    const SolverConfig& cfg = prob.cfg;
    const int wsteps = grid_index(window_len, cfg.dt, "chain_windows");
    if (wsteps < 1) throw std::invalid_argument("chain_windows: window shorter than dt");
    const int M = cfg.steps();
    if (M % wsteps != 0)
        throw std::invalid_argument("chain_windows: window length must divide T");
    const int nwin = M / wsteps;

    ChainResult res;
    Trajectory anchor;
    anchor.grid = cfg.grid;
    anchor.times = {0.0};
    anchor.states = {prob.y0};
    anchor.states[0].t = 0.0;

    for (int w = 0; w < nwin; ++w) {
        PicardWindow win;
        win.t_start = w * wsteps * cfg.dt;
        win.t_end = (w + 1) * wsteps * cfg.dt;
        win.anchor = anchor;
        win.cutoff = cutoff;
        FixedPointResult fp = fixed_point(win, prob, tol, max_iter);
        if (!fp.converged)
            throw std::runtime_error("chain_windows: window " + std::to_string(w) +
                                     " did not converge in the iteration budget");
        for (auto& it : fp.iters) {
            it.window = w;
            res.iters.push_back(it);
        }
        anchor = std::move(fp.traj);
    }
    res.tau_n = detect_tau_truncation(anchor, cutoff.n);
    res.traj = std::move(anchor);
    return res;
}

double truncated_equation_residual(const Trajectory& u, const PicardProblem& prob,
                                   const CutoffSpec& cutoff) {
    const int M_end = static_cast<int>(u.steps());
    Trajectory mapped = psi_recursion(u, prob, cutoff, 0, M_end);
    double worst = 0.0;
    for (int m = 0; m <= M_end; ++m)
        worst = std::max(worst, std::sqrt(vnorm2_diff(u.states[m], mapped.states[m])));
    return worst;
}

double measure_contraction(const PicardWindow& win, const PicardProblem& prob, int pairs,
                           uint64_t seed, double perturb_scale) {
    const double dt = prob.cfg.dt;
    const int delta_idx = grid_index(win.t_start, dt, "measure_contraction");
    const int end_idx = grid_index(win.t_end, dt, "measure_contraction");
    const Trajectory base = semigroup_continuation(win, prob, delta_idx, end_idx);

    std::mt19937_64 rng(seed);
    const FieldSampler sampler(prob.cfg.grid, prob.cfg.grid.nx() / 4, 0.6, perturb_scale);
    auto perturbed = [&]() {
        Trajectory u = base;
        for (int m = delta_idx + 1; m <= end_idx; ++m) {
            const double ramp = double(m - delta_idx) / (end_idx - delta_idx);
            axpy(ramp, sampler.velocity(rng), u.states[m].v);
            axpy(ramp, sampler.director(rng), u.states[m].n);
        }
        return u;
    };

    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        Trajectory u1 = perturbed();
        Trajectory u2 = perturbed();
        const double d = xnorm_distance(u1, u2, 0.0, win.t_end);
        if (d == 0.0) continue;
        Trajectory p1 = psi_map(u1, win, prob);
        Trajectory p2 = psi_map(u2, win, prob);
        worst = std::max(worst, xnorm_distance(p1, p2, 0.0, win.t_end) / d);
    }
    return worst;
}

StoppingTime detect_tau_truncation(const Trajectory& u, double level) {
    RunningXNorm xn;
    for (size_t m = 0; m < u.states.size(); ++m) {
        xn.push(u.states[m], u.times[m]);
        if (xn.value() >= level)
            return StoppingTime::at_index(static_cast<int>(m), u.times[m],
                                          StoppingKind::tau_n_truncation);
    }
    return StoppingTime::never(StoppingKind::tau_n_truncation);
}

}  // namespace nematiq
