// Hot-path microbenchmarks: transforms, nonlinear operators, one solver
// step, and one truncated-map application.

#include <benchmark/benchmark.h>

#include "nematiq/integrator.hpp"
#include "nematiq/picard.hpp"

using namespace nematiq;

namespace {

Grid grid_for(int n) { return make_grid(n, n, 2.0 / 3.0); }

SystemState bench_state(const Grid& g) {
    RealField vf(g, FieldTag::velocity), nf(g, FieldTag::director);
    for (int jy = 0; jy < g.ny(); ++jy)
        for (int jx = 0; jx < g.nx(); ++jx) {
            const double x = kTwoPi * jx / g.nx(), y = kTwoPi * jy / g.ny();
            const int m = jy * g.nx() + jx;
            vf.comp[0][m] = 0.5 * std::sin(x) * std::cos(y);
            vf.comp[1][m] = -0.5 * std::cos(x) * std::sin(y);
            nf.comp[0][m] = 0.3 * std::sin(x);
            nf.comp[1][m] = 0.3 * std::cos(y);
            nf.comp[2][m] = 1.0;
        }
    SystemState s(g);
    s.v = leray_project(dealias(to_spectral(vf, FieldTag::velocity)));
    s.n = dealias(to_spectral(nf, FieldTag::director));
    return s;
}

SolverConfig bench_config(const Grid& g) {
    SolverConfig cfg(g);
    cfg.dt = 1e-3;
    cfg.T = 1.0;
    DirectorNoise dn;
    {
        RealField hf(g, FieldTag::director);
        for (int m = 0; m < g.size(); ++m) hf.comp[2][m] = 1.0;
        dn = DirectorNoise(to_spectral(hf, FieldTag::director), 0.3);
    }
    cfg.dnoise = dn;
    cfg.vnoise = VelocityNoise::smoothed(g, 1.0, 0.3, 8);
    return cfg;
}

}  // namespace

static void BM_TransformRoundTrip(benchmark::State& state) {
    const Grid g = grid_for(static_cast<int>(state.range(0)));
    const SystemState y = bench_state(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(to_spectral(to_real(y.n), FieldTag::director));
    }
}
BENCHMARK(BM_TransformRoundTrip)->Arg(32)->Arg(64)->Arg(128);

static void BM_ApplyB(benchmark::State& state) {
    const Grid g = grid_for(static_cast<int>(state.range(0)));
    const SystemState y = bench_state(g);
    for (auto _ : state) benchmark::DoNotOptimize(apply_B(y.v, y.v));
}
BENCHMARK(BM_ApplyB)->Arg(32)->Arg(64);

static void BM_ApplyM(benchmark::State& state) {
    const Grid g = grid_for(static_cast<int>(state.range(0)));
    const SystemState y = bench_state(g);
    for (auto _ : state) benchmark::DoNotOptimize(apply_M(y.n, y.n));
}
BENCHMARK(BM_ApplyM)->Arg(32)->Arg(64);

static void BM_Step(benchmark::State& state) {
    const Grid g = grid_for(static_cast<int>(state.range(0)));
    const SolverConfig cfg = bench_config(g);
    const SystemState y = bench_state(g);
    const std::vector<double> dW(cfg.channels(), 1e-2);
    for (auto _ : state) benchmark::DoNotOptimize(step(y, dW, cfg));
}
BENCHMARK(BM_Step)->Arg(32)->Arg(64);

static void BM_PsiMapWindow(benchmark::State& state) {
    const Grid g = grid_for(32);
    SolverConfig cfg = bench_config(g);
    cfg.T = 1e-2;
    const SystemState y0 = bench_state(g);
    PicardProblem prob(cfg, y0);
    PicardWindow win;
    win.t_start = 0.0;
    win.t_end = cfg.T;
    win.anchor.grid = g;
    win.anchor.times = {0.0};
    win.anchor.states = {y0};
    win.cutoff = CutoffSpec{50.0};
    Trajectory cand;
    cand.grid = g;
    for (int m = 0; m <= cfg.steps(); ++m) {
        cand.times.push_back(m * cfg.dt);
        SystemState s = y0;
        s.t = m * cfg.dt;
        cand.states.push_back(s);
    }
    for (auto _ : state) benchmark::DoNotOptimize(psi_map(cand, win, prob));
}
BENCHMARK(BM_PsiMapWindow);

BENCHMARK_MAIN();
