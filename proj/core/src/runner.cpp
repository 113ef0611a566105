#include "nematiq/runner.hpp"

#include "nematiq/picard.hpp"
#include "nematiq/snapshot.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

namespace nematiq {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
}

}  // namespace

int worker_count(int jobs) {
    int w = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NEMATIQ_WORKERS")) {
        const int e = std::atoi(env);
        if (e > 0) w = e;
    }
    if (w < 1) w = 1;
    return std::min(w, std::max(1, jobs));
}

std::string trace_to_csv(const EnergyTrace& trace, int output_stride) {
    std::string out = "t,E,D,psi1,psi2,phi,Q,xnorm,vL2,nH1,nH2\n";
    const size_t last = trace.rows.empty() ? 0 : trace.rows.size() - 1;
    for (size_t i = 0; i < trace.rows.size(); ++i) {
        if (i % output_stride != 0 && i != last) continue;
        const TraceRow& r = trace.rows[i];
        out += fmt(r.t) + "," + fmt(r.E) + "," + fmt(r.D) + "," + fmt(r.psi1) + "," +
               fmt(r.psi2) + "," + fmt(r.phi) + "," + fmt(r.Q) + "," + fmt(r.xnorm) + "," +
               fmt(r.vL2) + "," + fmt(r.nH1) + "," + fmt(r.nH2) + "\n";
    }
    return out;
}

std::string check_to_ndjson(const CheckResult& c) {
    std::string out = "{\"check\":\"" + c.check + "\",\"statistic\":\"" + c.statistic +
                      "\",\"value\":" + fmt(c.value);
    if (c.stderr_val >= 0.0) out += ",\"stderr\":" + fmt(c.stderr_val);
    else out += ",\"stderr\":null";
    out += std::string(",\"pass\":") + (c.pass ? "true" : "false") + "}\n";
    return out;
}

std::string manifest_text(const RunConfig& cfg) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    std::string out;
    out += "# nematiq manifest v1\n";
    out += std::string("# build = ") + kBuildIdent + "\n";
    out += std::string("# command = ") + command_name(cfg.command) + "\n";
    out += std::string("# config_hash = ") + hash + "\n";
    for (const auto& [k, v] : cfg.canonical()) out += k + " = " + v + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// verify suite
// ---------------------------------------------------------------------------

namespace {

struct SuiteAccum {
    std::vector<CheckResult> checks;
    void add(const std::string& name, double worst, double tol) {
        checks.push_back({name, "max_abs", worst, tol, worst <= tol, -1.0});
    }
};

// Pointwise quadrature of <v.grad n, f(n)>; the products stay alias-free
// for band <= (nx-2)/5, so the transport cancellation is exact here.
double div_potential_quadrature(const SpectralField& v, const SpectralField& n,
                                const PolynomialF& poly) {
    const Grid& g = v.grid();
    const RealField vr = to_real(v);
    const RealField nr = to_real(n);
    RealField dn[2] = {to_real(derivative(n, 0)), to_real(derivative(n, 1))};
    double acc = 0.0;
    for (int m = 0; m < g.size(); ++m) {
        const double r = nr.comp[0][m] * nr.comp[0][m] + nr.comp[1][m] * nr.comp[1][m] +
                         nr.comp[2][m] * nr.comp[2][m];
        const double s = poly.ftilde(r);
        for (int k = 0; k < 3; ++k)
            acc += (vr.comp[0][m] * dn[0].comp[k][m] + vr.comp[1][m] * dn[1].comp[k][m]) * s *
                   nr.comp[k][m];
    }
    return acc * g.cell_area();
}

// Pointwise cross product without the dealias mask (test directions).
SpectralField cross_product_raw(const SpectralField& a, const SpectralField& b) {
    const RealField ar = to_real(a);
    const RealField br = to_real(b);
    RealField out(a.grid(), FieldTag::director);
    for (int m = 0; m < a.grid().size(); ++m) {
        out.comp[0][m] = ar.comp[1][m] * br.comp[2][m] - ar.comp[2][m] * br.comp[1][m];
        out.comp[1][m] = ar.comp[2][m] * br.comp[0][m] - ar.comp[0][m] * br.comp[2][m];
        out.comp[2][m] = ar.comp[0][m] * br.comp[1][m] - ar.comp[1][m] * br.comp[0][m];
    }
    return to_spectral(out, FieldTag::director);
}

// Independent quadrature of m(n1,n2,u) = -sum_{ijk} int d_i n1^k d_j n2^k d_j u^i.
double m_quadrature(const SpectralField& n1, const SpectralField& n2, const SpectralField& u) {
    const Grid& g = u.grid();
    RealField d1[2] = {to_real(derivative(n1, 0)), to_real(derivative(n1, 1))};
    RealField d2[2] = {to_real(derivative(n2, 0)), to_real(derivative(n2, 1))};
    RealField du[2] = {to_real(derivative(u, 0)), to_real(derivative(u, 1))};
    double acc = 0.0;
    for (int m = 0; m < g.size(); ++m) {
        double s = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 3; ++k)
                    s += d1[i].comp[k][m] * d2[j].comp[k][m] * du[j].comp[i][m];
        acc += s;
    }
    return -acc * g.cell_area();
}

}  // namespace

std::vector<CheckResult> verify_suite(const RunConfig& cfg) {
    const Grid g = cfg.build_grid();
    const PolynomialF poly = cfg.build_poly();
    const SolverConfig sc = cfg.build_solver(g);
    const int samples = cfg.verify_samples;
    std::mt19937_64 rng(cfg.seed);
    // Band 6 keeps even the cubic-in-n identities alias-free at nx >= 32.
    const FieldSampler sampler(g, std::min(6, g.nx() / 4), 0.6, 1.0);
    const DirectorNoise dn = [&] {
        std::mt19937_64 hr(cfg.seed ^ 0x5bd1e995u);
        return DirectorNoise(sampler.director(hr), 1.0);
    }();

    SuiteAccum acc;
    double w_parseval = 0, w_round = 0, w_idem = 0, w_div = 0, w_b2 = 0, w_b3 = 0;
    double w_tb0 = 0, w_coupling = 0, w_divf = 0, w_dualB = 0, w_dualM = 0, w_semi = 0;
    double w_gorth = 0, w_psi = 0, w_lambda = 0, w_hs = 0;

    for (int i = 0; i < samples; ++i) {
        const SpectralField u = sampler.velocity(rng);
        const SpectralField v = sampler.velocity(rng);
        const SpectralField w = sampler.velocity(rng);
        const SpectralField n = sampler.director(rng);
        const SpectralField n2 = sampler.director(rng);

        // Parseval and the transform round trip.
        {
            const RealField ur = to_real(u);
            double q = 0.0;
            for (int c = 0; c < ur.ncomp(); ++c)
                for (double s : ur.comp[c]) q += s * s;
            q = std::sqrt(q * g.cell_area());
            const double sp = l2_norm(u);
            w_parseval = std::max(w_parseval, std::abs(q - sp) / std::max(1.0, sp));
            const SpectralField back = to_spectral(ur, FieldTag::velocity);
            w_round = std::max(w_round, coeff_distance(u, back));
        }

        // Leray projection.
        {
            const SpectralField raw = sampler.velocity(rng) + sampler.velocity(rng);
            const SpectralField p1 = leray_project(raw);
            w_idem = std::max(w_idem, coeff_distance(p1, leray_project(p1)));
            w_div = std::max(w_div, divergence_linf(p1));
        }

        // Trilinear skew symmetries.
        w_b2 = std::max(w_b2, std::abs(trilinear_b(u, v, w) + trilinear_b(u, w, v)));
        w_b3 = std::max(w_b3, std::abs(trilinear_b(u, v, v)));
        w_tb0 = std::max(w_tb0, std::abs(l2_inner(apply_Btilde(u, n), n)));

        // Coupling cancellation and the potential transport identity.
        w_coupling = std::max(
            w_coupling, std::abs(l2_inner(apply_Btilde(u, n), apply_A1(n, 1.0, false)) +
                                 l2_inner(apply_M(n, n), u)));
        w_divf = std::max(w_divf, std::abs(div_potential_quadrature(u, n, poly)));

        // Duality of B and M against the trilinear quadratures.
        w_dualB = std::max(w_dualB,
                           std::abs(l2_inner(apply_B(u, v), w) - trilinear_b(u, v, w)));
        w_dualM = std::max(w_dualM,
                           std::abs(l2_inner(apply_M(n, n2), u) - m_quadrature(n, n2, u)));

        // Semigroup composition.
        {
            const SpectralField a1 = semigroup_apply(semigroup_apply(n, 0.3), 0.7);
            const SpectralField a2 = semigroup_apply(n, 1.0);
            w_semi = std::max(w_semi, coeff_distance(a1, a2));
        }

        // G orthogonality and psi cross-consistency.
        w_gorth = std::max(w_gorth, std::abs(l2_inner(apply_G(n, dn, 1), n)));
        {
            SystemState y(g);
            y.v = u;
            y.n = n;
            const PsiValues ps = psi_functionals(y, poly);
            const double d = dissipation_D(y, poly);
            w_psi = std::max(w_psi, std::abs(ps.psi1 + ps.psi2 - 0.5 * d));
        }

        // Lambda derivative in the noise direction, central finite difference.
        {
            const double h = 1e-6;
            const SpectralField dir = cross_product_raw(n, dn.h);
            SpectralField np = n, nm = n;
            axpy(h, dir, np);
            axpy(-h, dir, nm);
            const double fd =
                (lambda_functional(np, poly) - lambda_functional(nm, poly)) / (2.0 * h);
            const double an = energy_martingale_weight(n, dn);
            w_lambda = std::max(w_lambda, std::abs(fd - an) / std::max(1.0, std::abs(an)));
        }

        // Hilbert-Schmidt growth bound of S.
        if (sc.vnoise.enabled()) {
            const double hs = hilbert_schmidt_h1_sq(u, sc.vnoise);
            const double bound = sc.vnoise.ell5 * (1.0 + std::pow(l2_norm(u), 2));
            w_hs = std::max(w_hs, hs - bound);
        }
    }

    acc.add("parseval", w_parseval, 1e-10);
    acc.add("transform_roundtrip", w_round, 1e-12);
    acc.add("leray_idempotent", w_idem, 1e-12);
    acc.add("leray_divergence", w_div, 1e-10);
    acc.add("b_skew_B2", w_b2, 1e-10);
    acc.add("b_zero_B3", w_b3, 1e-10);
    acc.add("btilde_orthogonal", w_tb0, 1e-10);
    acc.add("coupling_cancellation", w_coupling, 1e-8);
    acc.add("divergence_potential", w_divf, 1e-8);
    acc.add("duality_B", w_dualB, 1e-10);
    acc.add("duality_M", w_dualM, 1e-10);
    acc.add("semigroup_composition", w_semi, 1e-12);
    acc.add("g_orthogonality", w_gorth, 1e-12);
    acc.add("psi_consistency", w_psi, 1e-12);
    acc.add("lambda_derivative", w_lambda, 1e-6);
    if (sc.vnoise.enabled()) acc.add("hs_growth_bound", w_hs, 1e-12);

    // Cutoff contract.
    {
        CutoffSpec spec{4.0};
        double w_exact = std::max(std::abs(theta(3.0, spec) - 1.0), std::abs(theta(8.0, spec)));
        w_exact = std::max(w_exact, std::abs(theta(6.0, spec) - 0.5));
        double w_lip = 0.0;
        std::mt19937_64 trng(cfg.seed + 7);
        std::uniform_real_distribution<double> ud(0.0, 12.0);
        for (int i = 0; i < 2000; ++i) {
            const double x = ud(trng), y = ud(trng);
            if (x == y) continue;
            w_lip = std::max(w_lip, std::abs(theta(x, spec) - theta(y, spec)) / std::abs(x - y));
        }
        acc.add("theta_exact", w_exact, 0.0);
        acc.add("theta_lipschitz", w_lip, CutoffSpec::lipschitz_bound / spec.n + 1e-12);
    }

    // Probe reports (finiteness asserted, constants never).
    for (ProbeKind kind :
         {ProbeKind::gagliardo_l4, ProbeKind::est_g1, ProbeKind::lip_m, ProbeKind::lip_btilde,
          ProbeKind::lip_f, ProbeKind::slc_coupled, ProbeKind::strato_correction,
          ProbeKind::h2_equivalence}) {
        const ProbeReport rep = inequality_probe(kind, samples, cfg.seed + 11, g, poly);
        CheckResult c;
        c.check = std::string("probe_") + probe_name(kind);
        c.statistic = "max_ratio";
        c.value = rep.max_ratio;
        c.threshold = 0.0;
        c.pass = std::isfinite(rep.max_ratio);
        acc.checks.push_back(c);
    }
    return acc.checks;
}

// ---------------------------------------------------------------------------
// convolution-test suite
// ---------------------------------------------------------------------------

std::vector<CheckResult> convolution_suite(const RunConfig& cfg) {
    const Grid g = make_grid(std::min(cfg.nx, 16), std::min(cfg.ny, 16), cfg.dealias);
    std::mt19937_64 rng(cfg.seed);
    const FieldSampler sampler(g, 4, 0.6, 1.0);
    const double dt = 0.01;
    const int M = 32;

    double w_a4 = 0, w_a5 = 0, w_a6 = 0;
    for (int trial = 0; trial < cfg.verify_samples; ++trial) {
        const WienerPath path(cfg.seed * 1000 + trial, dt, M, 1);
        std::vector<SpectralField> xi;
        xi.reserve(M);
        for (int m = 0; m < M; ++m) xi.push_back(sampler.scalar(rng));
        const IntegrandFn xif = [&](int m) { return xi[m]; };
        const IncrementFn dW = [&](int m) { return path.increment(0, m); };

        std::uniform_int_distribution<int> uidx(0, M);
        const int ti = uidx(rng);
        int p = uidx(rng), q = uidx(rng);
        if (p > q) std::swap(p, q);
        const StoppingTime tau = StoppingTime::at_index(q, q * dt, StoppingKind::synthetic);
        const StoppingTime sig = StoppingTime::at_index(p, p * dt, StoppingKind::synthetic);

        const int tmin = std::min(ti, q);
        // (A4): S_{t - t^tau} I(t^tau) = I_tau(t)
        const SpectralField lhs4 = semigroup_apply(
            stochastic_convolution(xif, dW, dt, tmin, g, FieldTag::scalar), (ti - tmin) * dt);
        const SpectralField rhs4 = stopped_convolution(xif, dW, dt, ti, tau, g, FieldTag::scalar);
        w_a4 = std::max(w_a4, max_abs_coeff(lhs4 - rhs4));

        // (A5): I(t^tau) = I_tau(t^tau)
        const SpectralField lhs5 = stochastic_convolution(xif, dW, dt, tmin, g, FieldTag::scalar);
        const SpectralField rhs5 =
            stopped_convolution(xif, dW, dt, tmin, tau, g, FieldTag::scalar);
        w_a5 = std::max(w_a5, max_abs_coeff(lhs5 - rhs5));

        // (A6): sigma <= tau implies I_tau(t^sigma) = I_sigma(t^sigma)
        const int tsig = std::min(ti, p);
        const SpectralField lhs6 =
            stopped_convolution(xif, dW, dt, tsig, tau, g, FieldTag::scalar);
        const SpectralField rhs6 =
            stopped_convolution(xif, dW, dt, tsig, sig, g, FieldTag::scalar);
        w_a6 = std::max(w_a6, max_abs_coeff(lhs6 - rhs6));
    }

    std::vector<CheckResult> out;
    out.push_back({"stopped_convolution_A4", "max_abs", w_a4, 1e-12, w_a4 <= 1e-12, -1.0});
    out.push_back({"stopped_convolution_A5", "max_abs", w_a5, 1e-12, w_a5 <= 1e-12, -1.0});
    out.push_back({"stopped_convolution_A6", "max_abs", w_a6, 1e-12, w_a6 <= 1e-12, -1.0});
    return out;
}

// ---------------------------------------------------------------------------
// command drivers
// ---------------------------------------------------------------------------

namespace {

struct SeedOutcome {
    EnergyTrace trace;
    bool blown_up = false;
    std::vector<StoppingTime> crossings;
};

// Run all seeds on a worker pool; results land indexed by seed order.
std::vector<SeedOutcome> run_seeds(const RunConfig& cfg, std::ostream& log) {
    const Grid g = cfg.build_grid();
    const SystemState y0 = cfg.build_initial(g);
    const std::vector<uint64_t> seeds = cfg.resolved_seeds();
    std::vector<SeedOutcome> out(seeds.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= seeds.size()) return;
            SolverConfig sc = cfg.build_solver(g);
            sc.seed = seeds[i];
            RunResult rr = run_trajectory(sc, y0);
            annotate_phi(rr.trace, DiagnosticsConfig{});
            out[i] = {std::move(rr.trace), rr.blown_up, std::move(rr.tau_crossings)};
        }
    };
    const int nw = worker_count(static_cast<int>(seeds.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    log << command_name(cfg.command) << ": ran " << seeds.size() << " seed(s) on " << nw
        << " worker(s)\n";
    return out;
}

std::string trace_to_ndjson(const EnergyTrace& trace, int output_stride) {
    std::string out;
    const size_t last = trace.rows.empty() ? 0 : trace.rows.size() - 1;
    for (size_t i = 0; i < trace.rows.size(); ++i) {
        if (i % output_stride != 0 && i != last) continue;
        const TraceRow& r = trace.rows[i];
        out += "{\"t\":" + fmt(r.t) + ",\"E\":" + fmt(r.E) + ",\"E_gl\":" + fmt(r.E_gl) +
               ",\"D\":" + fmt(r.D) + ",\"psi1\":" + fmt(r.psi1) + ",\"psi2\":" + fmt(r.psi2) +
               ",\"phi\":" + fmt(r.phi) + ",\"Q\":" + fmt(r.Q) + ",\"xnorm\":" + fmt(r.xnorm) +
               ",\"vL2\":" + fmt(r.vL2) + ",\"nH1\":" + fmt(r.nH1) + ",\"nH2\":" + fmt(r.nH2) +
               "}\n";
    }
    return out;
}

void write_traces(const RunConfig& cfg, const std::vector<SeedOutcome>& outcomes,
                  const fs::path& dir) {
    const std::vector<uint64_t> seeds = cfg.resolved_seeds();
    for (size_t i = 0; i < seeds.size(); ++i) {
        const std::string stem = "trace_seed" + std::to_string(seeds[i]);
        if (cfg.format == "csv")
            write_file(dir / (stem + ".csv"), trace_to_csv(outcomes[i].trace, cfg.output_stride));
        else
            write_file(dir / (stem + ".ndjson"),
                       trace_to_ndjson(outcomes[i].trace, cfg.output_stride));
    }
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log, const fs::path& dir) {
    const std::vector<SeedOutcome> outcomes = run_seeds(cfg, log);
    write_traces(cfg, outcomes, dir);
    if (cfg.save_snapshots) {
        const Grid g = cfg.build_grid();
        const SystemState y0 = cfg.build_initial(g);
        write_snapshot((dir / "v0.snap").string(), y0.v, 0.0);
        write_snapshot((dir / "n0.snap").string(), y0.n, 0.0);
    }
    for (const auto& o : outcomes)
        if (o.blown_up) {
            log << "simulate: blow-up detected, trace truncated\n";
            return kExitRuntime;
        }
    return kExitOk;
}

int cmd_ensemble(const RunConfig& cfg, std::ostream& log, const fs::path& dir) {
    const std::vector<SeedOutcome> outcomes = run_seeds(cfg, log);
    write_traces(cfg, outcomes, dir);

    std::string summary;
    int exit = kExitOk;
    int blowups = 0, crossings = 0;
    for (const auto& o : outcomes) {
        if (o.blown_up) ++blowups;
        for (const auto& st : o.crossings)
            if (st.finite()) ++crossings;
    }
    summary += check_to_ndjson({"no_blowup", "count", double(blowups), 0.0, blowups == 0, -1.0});
    summary += check_to_ndjson(
        {"no_tau_crossing", "count", double(crossings), 0.0, crossings == 0, -1.0});
    if (blowups > 0) exit = kExitRuntime;

    if (outcomes.size() >= 30) {
        std::vector<EnergyTrace> traces;
        traces.reserve(outcomes.size());
        for (const auto& o : outcomes) traces.push_back(o.trace);
        DiagnosticsConfig dc;
        dc.p = cfg.moment_p;
        const MomentsReport rep =
            ensemble_moments(traces, dc, cfg.build_poly().top_potential_coeff());
        auto add = [&](const char* name, double mean, double se, bool pass) {
            summary += check_to_ndjson({name, "mean", mean, 0.0, pass, se});
        };
        add("moment_sup_Ep", rep.sup_Ep_mean, rep.sup_Ep_se, std::isfinite(rep.sup_Ep_mean));
        add("moment_dissipation", rep.diss_mean, rep.diss_se, std::isfinite(rep.diss_mean));
        add("moment_sup_phi_psi", rep.sup_phipsi_mean, rep.sup_phipsi_se,
            std::isfinite(rep.sup_phipsi_mean));
        add("moment_int_strong", rep.int_strong_mean, rep.int_strong_se,
            std::isfinite(rep.int_strong_mean));
        summary += check_to_ndjson({"dissipation_nonneg", "bool",
                                    rep.dissipation_nonneg ? 1.0 : 0.0, 0.0,
                                    rep.dissipation_nonneg, -1.0});
        summary += check_to_ndjson(
            {"phi_in_unit", "bool", rep.phi_in_unit ? 1.0 : 0.0, 0.0, rep.phi_in_unit, -1.0});
        if (!rep.dissipation_nonneg || !rep.phi_in_unit) exit = std::max(exit, kExitAssert);
    } else {
        summary += check_to_ndjson(
            {"moments_skipped", "count", double(outcomes.size()), 30.0, true, -1.0});
    }
    write_file(dir / "summary.ndjson", summary);
    return exit;
}

int cmd_picard(const RunConfig& cfg, std::ostream& log, const fs::path& dir) {
    const Grid g = cfg.build_grid();
    SolverConfig sc = cfg.build_solver(g);
    const SystemState y0 = cfg.build_initial(g);

    std::string iter_log, tau_table;
    int exit = kExitOk;
    for (double level : cfg.picard_levels) {
        PicardProblem prob(sc, y0);
        CutoffSpec cut{level};
        try {
            const ChainResult chain =
                chain_windows(prob, cut, cfg.window, cfg.picard_tol, cfg.max_iter);
            for (const auto& it : chain.iters) {
                iter_log += "{\"level\":" + fmt(level) + ",\"window\":" +
                            std::to_string(it.window) + ",\"iter\":" + std::to_string(it.iter) +
                            ",\"distance\":" + fmt(it.distance) + ",\"factor\":" +
                            fmt(it.factor) + "}\n";
            }
            tau_table += "{\"n\":" + fmt(level) + ",\"tau_n\":" +
                         (chain.tau_n.finite() ? fmt(chain.tau_n.value) : std::string("null")) +
                         "}\n";
            log << "picard: level " << level << " tau_n = "
                << (chain.tau_n.finite() ? std::to_string(chain.tau_n.value) : "inf") << "\n";
        } catch (const std::runtime_error& e) {
            log << "picard: level " << level << " failed: " << e.what() << "\n";
            exit = kExitAssert;
        }
    }
    write_file(dir / "picard_iters.ndjson", iter_log);
    write_file(dir / "tau_table.ndjson", tau_table);
    return exit;
}

int report_checks(const std::vector<CheckResult>& checks, std::ostream& log,
                  const fs::path& file) {
    std::string report;
    bool all_pass = true;
    for (const auto& c : checks) {
        report += check_to_ndjson(c);
        log << (c.pass ? "[PASS] " : "[FAIL] ") << c.check << " (" << c.statistic << " = "
            << c.value << ")\n";
        all_pass = all_pass && c.pass;
    }
    write_file(file, report);
    return all_pass ? kExitOk : kExitAssert;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        log << "cannot create output directory " << dir << ": " << ec.message() << "\n";
        return kExitRuntime;
    }
    write_file(dir / "manifest", manifest_text(cfg));

    switch (cfg.command) {
        case Command::simulate: return cmd_simulate(cfg, log, dir);
        case Command::ensemble: return cmd_ensemble(cfg, log, dir);
        case Command::picard: return cmd_picard(cfg, log, dir);
        case Command::verify: return report_checks(verify_suite(cfg), log, dir / "verify.ndjson");
        case Command::convolution_test:
            return report_checks(convolution_suite(cfg), log, dir / "convolution.ndjson");
    }
    return kExitConfig;
}

}  // namespace nematiq
