#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nematiq/integrator.hpp"
#include "nematiq/diagnostics.hpp"

#include "test_support.hpp"

using namespace nematiq;
using namespace nematiq::test;

namespace {

const Grid g32 = make_grid(32, 32, 2.0 / 3.0);

SolverConfig quiet_config(const Grid& g, double dt, double T) {
    SolverConfig cfg(g);
    cfg.dt = dt;
    cfg.T = T;
    return cfg;  // noise disabled by default
}

SystemState unit_director_state(const Grid& g) {
    SystemState y(g);
    y.n[2][0] = 1.0;
    return y;
}

}  // namespace

TEST_CASE("config validation") {
    SolverConfig cfg = quiet_config(g32, 1e-3, 1.0);
    CHECK_NOTHROW(cfg.validate());
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.dt = 1e-3;
    cfg.T = 5e-4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.T = 1.0;
    cfg.k_levels = {10.0, 10.0};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("zero state with zero noise is a fixed point") {
    SolverConfig cfg = quiet_config(g32, 1e-3, 1.0);
    const SystemState z(g32);
    const SystemState out = step(z, std::vector<double>(cfg.channels(), 0.0), cfg);
    CHECK(max_abs_coeff(out.v) == 0.0);
    CHECK(max_abs_coeff(out.n) == 0.0);
}

TEST_CASE("constant unit director with zero velocity is an equilibrium") {
    SolverConfig cfg = quiet_config(g32, 1e-3, 1.0);
    const SystemState y = unit_director_state(g32);
    SystemState out = y;
    for (int m = 0; m < 10; ++m)
        out = step(out, std::vector<double>(cfg.channels(), 0.0), cfg);
    CHECK(coeff_distance(out.n, y.n) < 1e-14);
    CHECK(max_abs_coeff(out.v) == 0.0);
}

TEST_CASE("f-roots with zero velocity are exact fixed points of the noise-free scheme") {
    // gl(0.5): ftilde(r) = 4 - 4r, root at |n| = 1
    SolverConfig cfg = quiet_config(g32, 1e-3, 1.0);
    cfg.poly = PolynomialF::ginzburg_landau(0.5);
    SystemState y(g32);
    y.n[0][0] = std::sqrt(0.5);
    y.n[2][0] = std::sqrt(0.5);
    const SystemState out = step(y, std::vector<double>(cfg.channels(), 0.0), cfg);
    CHECK(coeff_distance(out.n, y.n) < 1e-14);
}

TEST_CASE("pure heat reduction matches the scalar ODE oracle at first order") {
    // Single velocity mode, no director, no noise: v evolves by 1/(1+dt|k|^2)
    // per step; compare against e^{-t|k|^2} with dt halving.
    const SpectralField mode = make_field(g32, FieldTag::velocity, [](double, double y, double* v) {
        v[0] = std::sin(2.0 * y);  // |k|^2 = 4
    });
    const double T = 0.5;
    auto run_err = [&](double dt) {
        SolverConfig cfg = quiet_config(g32, dt, T);
        SystemState y(g32);
        y.v = mode;
        const int M = cfg.steps();
        std::vector<double> no_noise(cfg.channels(), 0.0);
        for (int m = 0; m < M; ++m) y = step(y, no_noise, cfg);
        // scalar oracle: amplitude a_{m+1} = a_m / (1 + 4 dt), exact decay e^{-4T}
        double a = 1.0;
        for (int m = 0; m < M; ++m) a /= (1.0 + 4.0 * dt);
        const double got = -2.0 * y.v[0][g32.mode_index(0, 2)].imag();
        CHECK(got == doctest::Approx(a).epsilon(1e-12));  // scheme == oracle recursion
        return std::abs(got - std::exp(-4.0 * T));
    };
    const double e1 = run_err(4e-3);
    const double e2 = run_err(2e-3);
    const double e4 = run_err(1e-3);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));  // global error O(dt)
    CHECK(e2 / e4 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("exponential scheme reproduces the heat semigroup exactly on linear data") {
    SolverConfig cfg = quiet_config(g32, 1e-2, 0.1);
    cfg.scheme = Scheme::exponential_em;
    SystemState y(g32);
    y.v = make_field(g32, FieldTag::velocity,
                     [](double, double yy, double* v) { v[0] = std::sin(yy); });
    std::vector<double> no_noise(cfg.channels(), 0.0);
    SystemState out = y;
    for (int m = 0; m < 10; ++m) out = step(out, no_noise, cfg);
    CHECK(coeff_distance(out.v, semigroup_apply(y.v, 0.1)) < 1e-12);
}

TEST_CASE("noise-free Taylor-Green with constant director: energy strictly decreasing") {
    SolverConfig cfg = quiet_config(g32, 1e-3, 0.2);
    SystemState y0 = unit_director_state(g32);
    y0.v = taylor_green(g32);
    const RunResult rr = run_trajectory(cfg, y0);
    CHECK(!rr.blown_up);
    REQUIRE(rr.trace.rows.size() == size_t(cfg.steps() + 1));
    for (size_t i = 1; i < rr.trace.rows.size(); ++i)
        CHECK(rr.trace.rows[i].E < rr.trace.rows[i - 1].E);
}

TEST_CASE("same seed produces bit-identical traces") {
    SolverConfig cfg = quiet_config(g32, 1e-3, 0.05);
    cfg.dnoise = DirectorNoise(
        make_field(g32, FieldTag::director,
                   [](double x, double y, double* v) {
                       v[0] = std::sin(x);
                       v[1] = std::cos(y);
                       v[2] = 1.0;
                   }),
        0.5);
    cfg.vnoise = VelocityNoise::smoothed(g32, 1.0, 0.5, 8);
    cfg.seed = 99;
    SystemState y0 = unit_director_state(g32);
    y0.v = taylor_green(g32, 0.5);
    const RunResult a = run_trajectory(cfg, y0);
    const RunResult b = run_trajectory(cfg, y0);
    REQUIRE(a.trace.rows.size() == b.trace.rows.size());
    for (size_t i = 0; i < a.trace.rows.size(); ++i) {
        CHECK(a.trace.rows[i].E == b.trace.rows[i].E);
        CHECK(a.trace.rows[i].Q == b.trace.rows[i].Q);
        CHECK(a.trace.rows[i].xnorm == b.trace.rows[i].xnorm);
    }
}

TEST_CASE("synthetic large data crosses tau_1 at step 0") {
    SolverConfig cfg = quiet_config(g32, 1e-3, 0.01);
    cfg.k_levels = {1.0};
    SystemState y0 = unit_director_state(g32);
    y0.v = taylor_green(g32, 5.0);  // |grad v|^2 >> 1
    const RunResult rr = run_trajectory(cfg, y0);
    REQUIRE(rr.tau_crossings.size() == 1);
    CHECK(rr.tau_crossings[0].finite());
    CHECK(rr.tau_crossings[0].value == 0.0);
    CHECK(rr.tau_crossings[0].grid_index == 0);
    CHECK(rr.blown_up);  // crossing the last level ends the run
}

TEST_CASE("detect_tau on synthetic traces") {
    EnergyTrace trace;
    trace.dt = 1.0;
    SUBCASE("Q identically zero never crosses") {
        for (int i = 0; i <= 5; ++i) {
            TraceRow r;
            r.t = i;
            r.Q = 0.0;
            trace.rows.push_back(r);
        }
        CHECK(!detect_tau(trace, 1.0).finite());
    }
    SUBCASE("Q(t) = t on the unit grid crosses k=1 at t = 2") {
        for (int i = 0; i <= 5; ++i) {
            TraceRow r;
            r.t = i;
            r.Q = i;
            trace.rows.push_back(r);
        }
        const StoppingTime st = detect_tau(trace, 1.0);  // first t with Q > 1
        CHECK(st.finite());
        CHECK(st.value == 2.0);
        SUBCASE("monotone in k") {
            double prev = -1.0;
            for (double k : {0.5, 1.0, 1.5, 2.0}) {
                const StoppingTime s = detect_tau(trace, k);
                const double v = s.finite() ? s.value : 1e300;
                CHECK(v >= prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("tau_k crossings are monotone in k on a real trajectory") {
    SolverConfig cfg = quiet_config(g32, 1e-3, 0.05);
    cfg.k_levels = {1.0, 2.0, 4.0, 1000.0};
    SystemState y0 = unit_director_state(g32);
    y0.v = taylor_green(g32, 1.2);
    const RunResult rr = run_trajectory(cfg, y0);
    double prev = -1.0;
    for (const auto& st : rr.tau_crossings) {
        const double v = st.finite() ? st.value : 1e300;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("deterministic first-order convergence to a fine reference") {
    const Grid g = make_grid(16, 16, 2.0 / 3.0);
    SystemState y0(g);
    y0.v = taylor_green(g, 0.8);
    y0.n = make_field(g, FieldTag::director, [](double x, double y, double* v) {
        v[0] = 0.3 * std::sin(x);
        v[1] = 0.3 * std::cos(y);
        v[2] = 1.0;
    });
    const double T = 0.5;
    auto final_state = [&](double dt) {
        SolverConfig cfg = quiet_config(g, dt, T);
        cfg.store_states = true;
        const RunResult rr = run_trajectory(cfg, y0);
        return rr.traj.states.back();
    };
    const SystemState ref = final_state(4e-3 / 64.0);
    auto err = [&](double dt) {
        const SystemState y = final_state(dt);
        return std::sqrt(vnorm2_diff(y, ref));
    };
    const double e1 = err(4e-3), e2 = err(2e-3), e3 = err(1e-3);
    const double order1 = std::log2(e1 / e2);
    const double order2 = std::log2(e2 / e3);
    CHECK(order1 > 0.9);
    CHECK(order2 > 0.9);
}

TEST_CASE("blow-up is flagged and the partial trace returned") {
    SolverConfig cfg = quiet_config(g32, 0.5, 5.0);  // huge dt, explicit terms explode
    cfg.k_levels = {};                               // only the NaN/Inf detector
    SystemState y0(g32);
    y0.v = taylor_green(g32, 1e6);
    const RunResult rr = run_trajectory(cfg, y0);
    CHECK(rr.blown_up);
    CHECK(rr.traj.blown_up);
    CHECK(rr.trace.rows.size() < size_t(cfg.steps() + 1));
}

TEST_CASE("noise_increment validates the channel layout") {
    SolverConfig cfg = quiet_config(g32, 1e-3, 1.0);
    cfg.vnoise = VelocityNoise::smoothed(g32, 1.0, 0.5, 8);
    const SystemState y = unit_director_state(g32);
    SpectralField zv, zn;
    std::vector<double> wrong(3, 0.0);
    CHECK_THROWS_AS(noise_increment(y, cfg.dnoise, cfg.vnoise, wrong, zv, zn),
                    std::invalid_argument);
}
