#include "nematiq/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nematiq {

Command parse_command(const std::string& name) {
    if (name == "simulate") return Command::simulate;
    if (name == "ensemble") return Command::ensemble;
    if (name == "picard") return Command::picard;
    if (name == "verify") return Command::verify;
    if (name == "convolution-test") return Command::convolution_test;
    throw ConfigError("unknown command: " + name);
}

const char* command_name(Command c) {
    switch (c) {
        case Command::simulate: return "simulate";
        case Command::ensemble: return "ensemble";
        case Command::picard: return "picard";
        case Command::verify: return "verify";
        case Command::convolution_test: return "convolution-test";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& where, const std::string& why) {
    throw ConfigError(where + ": key '" + key + "': " + why);
}

double parse_number(const std::string& key, const std::string& v, const std::string& where) {
    // Accept plain numbers and simple rationals such as 2/3.
    const auto slash = v.find('/');
    try {
        size_t pos = 0;
        if (slash == std::string::npos) {
            const double x = std::stod(v, &pos);
            if (pos != v.size()) fail(key, where, "trailing characters in number '" + v + "'");
            return x;
        }
        const double num = std::stod(v.substr(0, slash));
        const double den = std::stod(v.substr(slash + 1));
        if (den == 0.0) fail(key, where, "zero denominator");
        return num / den;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(key, where, "cannot parse number '" + v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v, const std::string& where) {
    const double x = parse_number(key, v, where);
    const long r = std::lround(x);
    if (std::abs(x - r) > 1e-12) fail(key, where, "expected an integer, got '" + v + "'");
    return r;
}

std::vector<double> parse_list(const std::string& key, const std::string& v,
                               const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_number(key, item, where));
    }
    if (out.empty()) fail(key, where, "empty list");
    return out;
}

// name(arg1, arg2, ...) -> {name, args}; bare names have no args.
struct Preset {
    std::string name;
    std::vector<double> args;
};

Preset parse_preset(const std::string& key, const std::string& v, const std::string& where) {
    Preset p;
    const auto open = v.find('(');
    if (open == std::string::npos) {
        p.name = trim(v);
        return p;
    }
    if (v.back() != ')') fail(key, where, "unbalanced parentheses in '" + v + "'");
    p.name = trim(v.substr(0, open));
    const std::string inner = v.substr(open + 1, v.size() - open - 2);
    if (!trim(inner).empty()) p.args = parse_list(key, inner, where);
    return p;
}

void set_key(RunConfig& c, const std::string& key, const std::string& value,
             const std::string& where) {
    if (key == "nx") c.nx = static_cast<int>(parse_int(key, value, where));
    else if (key == "ny") c.ny = static_cast<int>(parse_int(key, value, where));
    else if (key == "dealias") c.dealias = parse_number(key, value, where);
    else if (key == "dt") c.dt = parse_number(key, value, where);
    else if (key == "T") c.T = parse_number(key, value, where);
    else if (key == "scheme") c.scheme = value;
    else if (key == "poly") c.poly = value;
    else if (key == "h") c.h = value;
    else if (key == "dnoise_amp") c.dnoise_amp = parse_number(key, value, where);
    else if (key == "vnoise") c.vnoise = value;
    else if (key == "v0") c.v0 = value;
    else if (key == "n0") c.n0 = value;
    else if (key == "seed") c.seed = static_cast<uint64_t>(parse_int(key, value, where));
    else if (key == "seeds") {
        if (value.find(',') != std::string::npos) {
            c.seed_list.clear();
            for (double x : parse_list(key, value, where))
                c.seed_list.push_back(static_cast<uint64_t>(std::llround(x)));
            c.seeds = static_cast<int>(c.seed_list.size());
        } else {
            c.seeds = static_cast<int>(parse_int(key, value, where));
            c.seed_list.clear();
        }
    }
    else if (key == "k_levels") c.k_levels = parse_list(key, value, where);
    else if (key == "output_dir") c.output_dir = value;
    else if (key == "output_stride") c.output_stride = static_cast<int>(parse_int(key, value, where));
    else if (key == "format") c.format = value;
    else if (key == "window") c.window = parse_number(key, value, where);
    else if (key == "cutoff_n") c.cutoff_n = parse_number(key, value, where);
    else if (key == "picard_levels") c.picard_levels = parse_list(key, value, where);
    else if (key == "picard_tol") c.picard_tol = parse_number(key, value, where);
    else if (key == "max_iter") c.max_iter = static_cast<int>(parse_int(key, value, where));
    else if (key == "verify_samples") c.verify_samples = static_cast<int>(parse_int(key, value, where));
    else if (key == "moment_p") c.moment_p = static_cast<int>(parse_int(key, value, where));
    else if (key == "save_snapshots") c.save_snapshots = parse_int(key, value, where) != 0;
    else fail(key, where, "unknown key");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        const std::string where = source + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        set_key(cfg, key, value, where);
    }
    validate_config(cfg);
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    set_key(cfg, key, value, "command line");
}

void validate_config(const RunConfig& cfg) {
    const std::string where = "config";
    if (cfg.nx < 8 || cfg.nx % 2 != 0) fail("nx", where, "must be even and at least 8");
    if (cfg.ny < 8 || cfg.ny % 2 != 0) fail("ny", where, "must be even and at least 8");
    if (!(cfg.dealias > 0.0) || cfg.dealias > 1.0) fail("dealias", where, "must lie in (0,1]");
    if (!(cfg.dt > 0.0)) fail("dt", where, "must be positive");
    if (cfg.T < cfg.dt) fail("T", where, "must be at least dt");
    if (cfg.scheme != "semi_implicit_em" && cfg.scheme != "exponential_em")
        fail("scheme", where, "must be semi_implicit_em or exponential_em");
    if (cfg.format != "csv" && cfg.format != "ndjson")
        fail("format", where, "must be csv or ndjson");
    if (cfg.seeds < 1) fail("seeds", where, "must be at least 1");
    if (cfg.output_stride < 1) fail("output_stride", where, "must be at least 1");
    for (size_t i = 1; i < cfg.k_levels.size(); ++i)
        if (!(cfg.k_levels[i] > cfg.k_levels[i - 1]))
            fail("k_levels", where, "must be strictly increasing");
    if (!(cfg.window > 0.0)) fail("window", where, "must be positive");
    if (!(cfg.cutoff_n > 0.0)) fail("cutoff_n", where, "must be positive");
    if (cfg.max_iter < 1) fail("max_iter", where, "must be at least 1");
    if (cfg.verify_samples < 1) fail("verify_samples", where, "must be at least 1");
    // Preset syntax is validated eagerly so errors carry the key name.
    (void)cfg.build_poly();
}

std::vector<uint64_t> RunConfig::resolved_seeds() const {
    if (!seed_list.empty()) return seed_list;
    std::vector<uint64_t> out(seeds);
    for (int i = 0; i < seeds; ++i) out[i] = seed + i;
    return out;
}

PolynomialF RunConfig::build_poly() const {
    const Preset p = parse_preset("poly", poly, "config");
    try {
        if (p.name == "gl") {
            if (p.args.size() != 1) fail("poly", "config", "gl needs one argument: gl(eps)");
            return PolynomialF::ginzburg_landau(p.args[0]);
        }
        if (p.name == "coeffs") {
            if (p.args.size() < 2) fail("poly", "config", "coeffs needs at least a0,a1");
            return PolynomialF(p.args);
        }
    } catch (const std::invalid_argument& e) {
        fail("poly", "config", e.what());
    }
    fail("poly", "config", "unknown preset '" + p.name + "' (use gl(eps) or coeffs(...))");
}

Grid RunConfig::build_grid() const { return make_grid(nx, ny, dealias); }

namespace {

RealField sampled(const Grid& g, FieldTag tag,
                  const std::function<void(double, double, double*)>& fn) {
    RealField out(g, tag);
    for (int jy = 0; jy < g.ny(); ++jy) {
        for (int jx = 0; jx < g.nx(); ++jx) {
            const double x = kTwoPi * jx / g.nx();
            const double y = kTwoPi * jy / g.ny();
            double vals[3] = {0, 0, 0};
            fn(x, y, vals);
            for (int c = 0; c < out.ncomp(); ++c) out.comp[c][jy * g.nx() + jx] = vals[c];
        }
    }
    return out;
}

}  // namespace

SolverConfig RunConfig::build_solver(const Grid& g) const {
    SolverConfig sc(g);
    sc.dt = dt;
    sc.T = T;
    sc.poly = build_poly();
    sc.scheme = scheme == "exponential_em" ? Scheme::exponential_em : Scheme::semi_implicit_em;
    sc.k_levels = k_levels;
    sc.seed = seed;

    const Preset hp = parse_preset("h", h, "config");
    SpectralField hf(g, FieldTag::director);
    if (hp.name == "swirl") {
        const double a = hp.args.empty() ? 1.0 : hp.args[0];
        hf = to_spectral(sampled(g, FieldTag::director,
                                 [a](double x, double y, double* v) {
                                     v[0] = a * std::sin(x);
                                     v[1] = a * std::cos(y);
                                     v[2] = a;
                                 }),
                         FieldTag::director);
    } else if (hp.name == "uniform") {
        if (hp.args.size() != 3) fail("h", "config", "uniform needs three components");
        hf[0][0] = hp.args[0];
        hf[1][0] = hp.args[1];
        hf[2][0] = hp.args[2];
    } else {
        fail("h", "config", "unknown preset '" + hp.name + "' (use swirl(a) or uniform(x,y,z))");
    }
    sc.dnoise = DirectorNoise(hf, dnoise_amp);

    const Preset vp = parse_preset("vnoise", vnoise, "config");
    if (vp.name == "off") {
        sc.vnoise = VelocityNoise::off_noise();
    } else if (vp.name == "smoothed") {
        if (vp.args.size() != 3) fail("vnoise", "config", "smoothed needs (s, sigma0, J)");
        sc.vnoise = VelocityNoise::smoothed(g, vp.args[0], vp.args[1],
                                            static_cast<int>(std::lround(vp.args[2])));
    } else if (vp.name == "additive") {
        if (vp.args.size() != 2) fail("vnoise", "config", "additive needs (sigma0, J)");
        sc.vnoise = VelocityNoise::additive(g, vp.args[0],
                                            static_cast<int>(std::lround(vp.args[1])));
    } else {
        fail("vnoise", "config", "unknown preset '" + vp.name + "'");
    }
    return sc;
}

SystemState RunConfig::build_initial(const Grid& g) const {
    SystemState y(g, 0.0);

    const Preset vp = parse_preset("v0", v0, "config");
    if (vp.name == "taylor_green") {
        const double a = vp.args.empty() ? 1.0 : vp.args[0];
        y.v = leray_project(nematiq::dealias(to_spectral(
            sampled(g, FieldTag::velocity,
                    [a](double x, double yy, double* v) {
                        v[0] = a * std::sin(x) * std::cos(yy);
                        v[1] = -a * std::cos(x) * std::sin(yy);
                    }),
            FieldTag::velocity)));
    } else if (vp.name != "zero") {
        fail("v0", "config", "unknown preset '" + vp.name + "' (use taylor_green(a) or zero)");
    }

    const Preset np = parse_preset("n0", n0, "config");
    if (np.name == "tilt") {
        const double a = np.args.empty() ? 0.5 : np.args[0];
        y.n = nematiq::dealias(to_spectral(sampled(g, FieldTag::director,
                                          [a](double x, double yy, double* v) {
                                              const double s = 1.0 / std::sqrt(1.0 + a * a);
                                              v[0] = s * a * std::sin(x);
                                              v[1] = s * a * std::cos(yy);
                                              v[2] = s;
                                          }),
                                  FieldTag::director));
    } else if (np.name == "uniform") {
        if (np.args.size() != 3) fail("n0", "config", "uniform needs three components");
        y.n[0][0] = np.args[0];
        y.n[1][0] = np.args[1];
        y.n[2][0] = np.args[2];
    } else {
        fail("n0", "config", "unknown preset '" + np.name + "' (use tilt(a) or uniform(x,y,z))");
    }
    return y;
}

std::map<std::string, std::string> RunConfig::canonical() const {
    auto num = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return std::string(buf);
    };
    auto list = [&](const std::vector<double>& xs) {
        std::string s;
        for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + num(xs[i]);
        return s;
    };
    std::map<std::string, std::string> kv;
    kv["nx"] = std::to_string(nx);
    kv["ny"] = std::to_string(ny);
    kv["dealias"] = num(dealias);
    kv["dt"] = num(dt);
    kv["T"] = num(T);
    kv["scheme"] = scheme;
    kv["poly"] = poly;
    kv["h"] = h;
    kv["dnoise_amp"] = num(dnoise_amp);
    kv["vnoise"] = vnoise;
    kv["v0"] = v0;
    kv["n0"] = n0;
    kv["seed"] = std::to_string(seed);
    {
        std::string s;
        const auto sl = resolved_seeds();
        for (size_t i = 0; i < sl.size(); ++i) s += (i ? "," : "") + std::to_string(sl[i]);
        kv["seeds"] = s;
    }
    kv["k_levels"] = list(k_levels);
    kv["output_dir"] = output_dir;
    kv["output_stride"] = std::to_string(output_stride);
    kv["format"] = format;
    kv["window"] = num(window);
    kv["cutoff_n"] = num(cutoff_n);
    kv["picard_levels"] = list(picard_levels);
    kv["picard_tol"] = num(picard_tol);
    kv["max_iter"] = std::to_string(max_iter);
    kv["verify_samples"] = std::to_string(verify_samples);
    kv["moment_p"] = std::to_string(moment_p);
    kv["save_snapshots"] = save_snapshots ? "1" : "0";
    return kv;
}

uint64_t config_hash(const RunConfig& cfg) {
    uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& [k, v] : cfg.canonical()) {
        feed(k);
        feed("=");
        feed(v);
        feed("\n");
    }
    return h;
}

}  // namespace nematiq
