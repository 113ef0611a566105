// Truncated fixed-point construction of local solutions on short windows:
// the cutoff theta_n, the map
//   Psi(u)(t_M) = S_{t_M} a(0)
//               + sum_{m<M} S_{t_M-t_m} theta_n(|u|_{X_{t_m}}) F(u(t_m)) dt
//               + sum_{m<M} S_{t_M-t_m} theta_n(|u|_{X_{t_m}}) Z_m(u(t_m)),
// Picard iteration inside a window [delta, T] with a frozen anchor on
// [0, delta], window chaining, and the truncation time
//   tau_n = inf{ t : |u^n|_{X_t} >= n }.
// Psi is evaluated by the exact recursion
//   Psi(u)(t_{m+1}) = e^{-dt A}[ Psi(u)(t_m) + dt theta F + theta Z ],
// which keeps it affine in the noise increments and bit-stable across
// windows (a window's output is reproduced exactly as the next anchor).

#pragma once

#include "nematiq/integrator.hpp"

namespace nematiq {

struct CutoffSpec {
    double n = 1.0;  // truncation level
    // Max slope of the unit-width quintic-smoothstep profile; the cutoff
    // theta_n is Lipschitz with constant lipschitz_bound / n.
    static constexpr double lipschitz_bound = 15.0 / 8.0;
};

/// theta_n: 1 on [0,n], quintic smoothstep down on (n,2n), 0 on [2n,inf).
double theta(double x, const CutoffSpec& spec);

struct PicardProblem {
    SolverConfig cfg;
    SystemState y0;
    WienerPath path;  // fine increments at cfg.dt, channels = cfg.channels()

    PicardProblem(const SolverConfig& c, const SystemState& initial)
        : cfg(c), y0(initial), path(c.seed, c.dt, c.steps(), c.channels()) {}
    PicardProblem(const SolverConfig& c, const SystemState& initial, WienerPath p)
        : cfg(c), y0(initial), path(std::move(p)) {}
};

struct PicardWindow {
    double t_start = 0.0;  // delta, grid-aligned
    double t_end = 0.0;    // T, grid-aligned
    Trajectory anchor;     // trajectory on [0, t_start]
    CutoffSpec cutoff;
};

struct IterationRecord {
    int window = 0;
    int iter = 0;
    double distance = 0.0;
    double factor = 0.0;
};

struct WindowTooLongError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One application of the truncated map; u must live on the grid times of
/// [0, t_end] and agree with the anchor on [0, t_start].
Trajectory psi_map(const Trajectory& u, const PicardWindow& win, const PicardProblem& prob);

struct FixedPointResult {
    Trajectory traj;
    std::vector<IterationRecord> iters;
    bool converged = false;
    double residual = 0.0;
};

/// Iterate u <- Psi(u) until the X-norm distance of successive iterates is
/// <= tol.  Throws WindowTooLongError after three consecutive
/// non-contracting iterations (halve the window).
FixedPointResult fixed_point(const PicardWindow& win, const PicardProblem& prob, double tol,
                             int max_iter);

struct ChainResult {
    Trajectory traj;  // glued u^n on [0, T]
    StoppingTime tau_n;
    std::vector<IterationRecord> iters;
};

/// Solve windows of length window_len sequentially, each fixed point the
/// next anchor; window_len must divide cfg.T.
ChainResult chain_windows(const PicardProblem& prob, const CutoffSpec& cutoff,
                          double window_len, double tol, int max_iter);

/// max_t ||u(t) - Psi(u)(t)||_V over the grid, Psi taken with delta = 0;
/// the defect of u in the truncated equation.
double truncated_equation_residual(const Trajectory& u, const PicardProblem& prob,
                                   const CutoffSpec& cutoff);

/// Empirical Lipschitz factor of Psi on random candidate pairs that share
/// the window anchor.
double measure_contraction(const PicardWindow& win, const PicardProblem& prob, int pairs,
                           uint64_t seed, double perturb_scale);

/// First grid time with |u|_{X_t} >= level, or +infinity.
StoppingTime detect_tau_truncation(const Trajectory& u, double level);

}  // namespace nematiq
