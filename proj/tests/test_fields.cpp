#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nematiq/field.hpp"
#include "nematiq/norms.hpp"
#include "nematiq/snapshot.hpp"
#include "nematiq/trajectory.hpp"

#include "test_support.hpp"

#include <sstream>

using namespace nematiq;
using namespace nematiq::test;

TEST_CASE("make_grid accepts valid sizes and precomputes wavenumbers") {
    const Grid g = make_grid(32, 32, 2.0 / 3.0);
    CHECK(g.nx() == 32);
    // wavenumber set {-15,...,16} per axis
    CHECK(g.kx(g.mode_index(16, 0)) == 16.0);
    CHECK(g.kx(g.mode_index(-15, 0)) == -15.0);
    CHECK(g.k2(g.mode_index(3, -4)) == 25.0);
    CHECK_THROWS_AS(g.mode_index(-16, 0), std::out_of_range);
}

TEST_CASE("make_grid rejects odd or tiny resolutions") {
    CHECK_THROWS_AS(make_grid(9, 32, 2.0 / 3.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(32, 9, 2.0 / 3.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 32, 2.0 / 3.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(32, 32, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(32, 32, 1.5), std::invalid_argument);
}

TEST_CASE("dealias fraction 1 keeps every mode") {
    const Grid g = make_grid(8, 8, 1.0);
    for (int m = 0; m < g.size(); ++m) CHECK(g.mask(m) == 1.0);
}

TEST_CASE("transform: constant field has a single DC coefficient") {
    const Grid g = make_grid(16, 16, 1.0);
    const SpectralField f = make_scalar(g, [](double, double) { return 1.0; });
    CHECK(std::abs(f[0][g.mode_index(0, 0)] - Complex(1.0, 0.0)) < 1e-14);
    double rest = 0.0;
    for (int m = 1; m < g.size(); ++m) rest = std::max(rest, std::abs(f[0][m]));
    CHECK(rest < 1e-14);
}

TEST_CASE("transform: sin(x) lands on k=(+-1,0) with coefficients -+i/2") {
    const Grid g = make_grid(16, 16, 1.0);
    const SpectralField f = make_scalar(g, [](double x, double) { return std::sin(x); });
    CHECK(std::abs(f[0][g.mode_index(1, 0)] - Complex(0.0, -0.5)) < 1e-14);
    CHECK(std::abs(f[0][g.mode_index(-1, 0)] - Complex(0.0, 0.5)) < 1e-14);
}

TEST_CASE("transform round trip is identity to round-off") {
    const Grid g = make_grid(32, 32, 2.0 / 3.0);
    std::mt19937_64 rng(7);
    FieldSampler sampler(g, 10, 0.8);
    for (int i = 0; i < 5; ++i) {
        const SpectralField f = sampler.director(rng);
        const SpectralField back = to_spectral(to_real(f), FieldTag::director);
        CHECK(coeff_distance(f, back) <= 1e-12);
    }
}

TEST_CASE("transform rejects shape mismatches") {
    const Grid g = make_grid(16, 16, 1.0);
    RealField r(g, FieldTag::scalar);
    CHECK_THROWS_AS(to_spectral(r, FieldTag::velocity), std::invalid_argument);
    r.comp[0].resize(10);
    CHECK_THROWS_AS(to_spectral(r, FieldTag::scalar), std::invalid_argument);
}

TEST_CASE("Parseval: spectral L2 equals real-space quadrature") {
    const Grid g = make_grid(32, 32, 2.0 / 3.0);
    std::mt19937_64 rng(13);
    FieldSampler sampler(g, 9, 0.7);
    for (int i = 0; i < 20; ++i) {
        const SpectralField f = sampler.velocity(rng);
        const RealField r = to_real(f);
        double q = 0.0;
        for (const auto& c : r.comp)
            for (double v : c) q += v * v;
        q = std::sqrt(q * g.cell_area());
        CHECK(l2_norm(f) == doctest::Approx(q).epsilon(1e-10));
    }
}

TEST_CASE("sobolev_norm matches the closed-form for sin(x)") {
    const Grid g = make_grid(32, 32, 2.0 / 3.0);
    const SpectralField f = make_scalar(g, [](double x, double) { return std::sin(x); });
    // ||sin x||_{L^2([0,2pi]^2)} = sqrt(2 pi^2), oracle: int sin^2 = 2 pi^2
    const double oracle = std::sqrt(quadrature_oracle(
        [](double x, double) { return std::sin(x) * std::sin(x); }));
    CHECK(oracle == doctest::Approx(std::sqrt(2.0 * M_PI * M_PI)).epsilon(1e-12));
    CHECK(sobolev_norm(f, {0.0, true}) == doctest::Approx(oracle).epsilon(1e-12));
    // shifted H^1: multiplier 1+|k|^2 = 2 on the only active mode
    CHECK(sobolev_norm(f, {1.0, true}) ==
          doctest::Approx(std::sqrt(2.0) * oracle).epsilon(1e-12));
}

TEST_CASE("sobolev_norm of the zero field vanishes at every level") {
    const Grid g = make_grid(16, 16, 1.0);
    const SpectralField z(g, FieldTag::director);
    for (double s : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 4.0}) {
        CHECK(sobolev_norm(z, {s, true}) == 0.0);
        CHECK(sobolev_norm(z, {s, false}) == 0.0);
    }
}

TEST_CASE("sobolev_norm gradient seminorm cross-checks finite differences") {
    const Grid g = make_grid(64, 64, 1.0);
    const SpectralField f = make_scalar(g, [](double x, double y) {
        return std::sin(x) * std::cos(2.0 * y) + 0.3 * std::cos(3.0 * x);
    });
    // central-difference |grad f|_{L^2} on the sample grid
    const RealField r = to_real(f);
    const int n = g.nx();
    const double h = kTwoPi / n;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double dx =
                (r.comp[0][j * n + (i + 1) % n] - r.comp[0][j * n + (i + n - 1) % n]) / (2 * h);
            const double dy =
                (r.comp[0][((j + 1) % n) * n + i] - r.comp[0][((j + n - 1) % n) * n + i]) /
                (2 * h);
            acc += dx * dx + dy * dy;
        }
    }
    const double fd = std::sqrt(acc * g.cell_area());
    // second-order quadrature; wide tolerance
    CHECK(sobolev_norm(f, {1.0, false}) == doctest::Approx(fd).epsilon(2e-2));
}

TEST_CASE("sobolev_norm range and mean-mode guards") {
    const Grid g = make_grid(16, 16, 1.0);
    SpectralField f(g, FieldTag::scalar);
    f[0][0] = 1.0;
    CHECK_THROWS_AS(sobolev_norm(f, {4.5, true}), std::invalid_argument);
    CHECK_THROWS_AS(sobolev_norm(f, {-1.0, false}), std::invalid_argument);
    CHECK(sobolev_norm(f, {-1.0, true}) > 0.0);
}

TEST_CASE("norm ordering in s for shifted multipliers") {
    const Grid g = make_grid(32, 32, 2.0 / 3.0);
    std::mt19937_64 rng(5);
    FieldSampler sampler(g, 8, 0.7);
    for (int i = 0; i < 10; ++i) {
        const SpectralField f = sampler.director(rng);
        double prev = 0.0;
        for (double s : {-1.0, 0.0, 1.0, 2.0, 3.0}) {
            const double v = sobolev_norm(f, {s, true});
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("dealias zeroes exactly the modes beyond the fraction") {
    const Grid g = make_grid(32, 32, 2.0 / 3.0);
    SpectralField f(g, FieldTag::scalar);
    f[0][g.mode_index(16, 0)] = 1.0;  // Nyquist: 16/16 > 2/3
    CHECK(max_abs_coeff(dealias(f)) == 0.0);

    SpectralField low(g, FieldTag::scalar);
    low[0][g.mode_index(10, -10)] = Complex(0.3, 0.1);  // 10/16 < 2/3, retained
    low[0][g.mode_index(-10, 10)] = Complex(0.3, -0.1);
    CHECK(coeff_distance(dealias(low), low) == 0.0);
}

TEST_CASE("dealias preserves retained-mode energy on random fields") {
    const Grid g = make_grid(32, 32, 2.0 / 3.0);
    std::mt19937_64 rng(23);
    FieldSampler sampler(g, 14, 0.9);
    for (int i = 0; i < 10; ++i) {
        SpectralField f(g, FieldTag::scalar);
        std::normal_distribution<double> gauss;
        for (int m = 0; m < g.size(); ++m) f[0][m] = Complex(gauss(rng), gauss(rng));
        hermitian_symmetrize(f);
        const SpectralField d = dealias(f);
        for (int m = 0; m < g.size(); ++m) {
            if (g.mask(m) == 1.0) CHECK(std::abs(d[0][m] - f[0][m]) == 0.0);
            else CHECK(std::abs(d[0][m]) == 0.0);
        }
        (void)sampler;
    }
}

TEST_CASE("hermitian symmetry of real-sampled fields and the defect measure") {
    const Grid g = make_grid(16, 16, 1.0);
    const SpectralField f = make_scalar(g, [](double x, double y) {
        return std::sin(2 * x + y) + 0.5 * std::cos(3 * y);
    });
    CHECK(hermitian_defect(f) < 1e-14);
    SpectralField bad = f;
    bad[0][g.mode_index(1, 0)] += Complex(0.0, 0.25);
    CHECK(hermitian_defect(bad) > 0.1);
    hermitian_symmetrize(bad);
    CHECK(hermitian_defect(bad) < 1e-14);
}

TEST_CASE("xnorm of a constant-in-time trajectory matches the closed form") {
    const Grid g = make_grid(32, 32, 2.0 / 3.0);
    SystemState y(g);
    y.v = taylor_green(g, 0.7);
    y.n = make_field(g, FieldTag::director, [](double x, double, double* v) {
        v[0] = 0.2 * std::sin(x);
        v[2] = 1.0;
    });

    Trajectory traj;
    traj.grid = g;
    const int M = 10;
    for (int m = 0; m <= M; ++m) {
        traj.times.push_back(0.1 * m);
        SystemState s = y;
        s.t = 0.1 * m;
        traj.states.push_back(s);
    }
    const double expected = std::sqrt(vnorm2(y) + enorm2(y));  // [0,1]: integral weight 1
    CHECK(xnorm(traj, 0.0, 1.0) == doctest::Approx(expected).epsilon(1e-12));

    SUBCASE("zero trajectory") {
        Trajectory z = traj;
        for (auto& s : z.states) s = SystemState(g, s.t);
        CHECK(xnorm(z, 0.0, 1.0) == 0.0);
    }
    SUBCASE("degenerate interval reduces to the V-norm") {
        CHECK(xnorm(traj, 0.3, 0.3) == doctest::Approx(std::sqrt(vnorm2(y))).epsilon(1e-12));
    }
    SUBCASE("monotone in the right endpoint") {
        double prev = 0.0;
        for (int m = 0; m <= M; ++m) {
            const double v = xnorm(traj, 0.0, 0.1 * m);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
    }
    SUBCASE("unaligned endpoints are rejected") {
        CHECK_THROWS_AS(xnorm(traj, 0.0, 0.55), std::invalid_argument);
    }
    SUBCASE("additivity: integral parts add, sup part is the max") {
        const double ab = xnorm(traj, 0.0, 0.5), bc = xnorm(traj, 0.5, 1.0);
        const double ac = xnorm(traj, 0.0, 1.0);
        const double sup = vnorm2(y);
        CHECK(ac * ac ==
              doctest::Approx(ab * ab + bc * bc - sup).epsilon(1e-12));  // sup counted once
        CHECK(ac * ac <= ab * ab + bc * bc + 1e-12);
    }
}

TEST_CASE("RunningXNorm agrees with xnorm on a stored trajectory") {
    const Grid g = make_grid(32, 32, 2.0 / 3.0);
    std::mt19937_64 rng(3);
    FieldSampler sampler(g, 6, 0.6);
    Trajectory traj;
    traj.grid = g;
    RunningXNorm xn;
    for (int m = 0; m <= 8; ++m) {
        SystemState s(g, 0.05 * m);
        s.v = sampler.velocity(rng);
        s.n = sampler.director(rng);
        traj.times.push_back(s.t);
        traj.states.push_back(s);
        xn.push(s, s.t);
        CHECK(xn.value() == doctest::Approx(xnorm(traj, 0.0, s.t)).epsilon(1e-12));
    }
}

TEST_CASE("snapshot round trip preserves samples and header") {
    const Grid g = make_grid(16, 16, 2.0 / 3.0);
    const SpectralField f = dealias(make_field(g, FieldTag::director, [](double x, double y, double* v) {
        v[0] = std::sin(x) * std::cos(y);
        v[1] = std::cos(2 * x);
        v[2] = 1.0 + 0.1 * std::sin(y);
    }));
    std::stringstream ss;
    write_snapshot(ss, f, 0.75);
    std::string header;
    std::getline(ss, header);
    CHECK(header.rfind("NEMATIQ1 16 16 3 ", 0) == 0);
    ss.seekg(0);
    const Snapshot snap = read_snapshot(ss, 2.0 / 3.0);
    CHECK(snap.t == doctest::Approx(0.75));
    CHECK(coeff_distance(snap.field, f) < 1e-13);
}
