// Time advancement of the Ito system
//   dv + (A v + B(v,v) + M(n,n)) dt             = S(v) dW1
//   dn + (A1 n + Btilde(v,n) - f(n) - G^2(n)/2) dt = G(n) dW2
// by semi-implicit or exponential Euler-Maruyama, plus the tau_k
// blow-up monitor Q(t) = |grad v|^2 + ||n||_2^2 + int_0^t(|Av|^2 + ||n||_3^2).

#pragma once

#include "nematiq/convolution.hpp"
#include "nematiq/operators.hpp"
#include "nematiq/trace.hpp"
#include "nematiq/trajectory.hpp"
#include "nematiq/wiener.hpp"

namespace nematiq {

enum class Scheme { semi_implicit_em, exponential_em };

struct SolverConfig {
    Grid grid;
    double dt = 1e-3;
    double T = 1.0;
    PolynomialF poly = PolynomialF::ginzburg_landau(1.0);
    DirectorNoise dnoise;                    // disabled unless amplitude != 0
    VelocityNoise vnoise;                    // off by default
    Scheme scheme = Scheme::semi_implicit_em;
    std::vector<double> k_levels = {1000.0};
    uint64_t seed = 1;
    bool store_states = false;

    explicit SolverConfig(const Grid& g) : grid(g) {}

    int steps() const;
    int channels() const { return vnoise.modes() + 1; }  // W1 modes then W2
    void validate() const;
};

struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Total drift nonlinearity (everything except the implicit linear part):
/// Fv = -B(v,v) - M(n,n),  Fn = -Btilde(v,n) + f(n) + G^2(n)/2.
void drift_nonlinearity(const SystemState& y, const PolynomialF& poly,
                        const DirectorNoise& dn, SpectralField& Fv, SpectralField& Fn);

/// Noise increment fields (Zv, Zn) = (sum_j S(v)e_j dW1_j, G(n) dW2);
/// dW has channels() entries, W2 last.
void noise_increment(const SystemState& y, const DirectorNoise& dn, const VelocityNoise& vn,
                     const std::vector<double>& dW, SpectralField& Zv, SpectralField& Zn);

/// One step of the configured scheme; throws BlowupError on NaN/Inf.
SystemState step(const SystemState& y, const std::vector<double>& dW, const SolverConfig& cfg);

struct RunResult {
    Trajectory traj;   // states stored only when cfg.store_states
    EnergyTrace trace;
    std::vector<StoppingTime> tau_crossings;  // first crossing per k_level
    bool blown_up = false;
};

RunResult run_trajectory(const SolverConfig& cfg, const SystemState& y0);
/// Same, driving the scheme with a caller-provided path whose dt_fine
/// equals cfg.dt (refinement studies coarsen the path beforehand).
RunResult run_trajectory(const SolverConfig& cfg, const SystemState& y0, const WienerPath& path);

/// First grid time with Q(t) > k^2, or +infinity.
StoppingTime detect_tau(const EnergyTrace& trace, double k);

}  // namespace nematiq
