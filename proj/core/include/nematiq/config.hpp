// Flat key = value run configuration.  Every key has a documented default,
// unknown keys are errors, and CLI overrides are applied after the file.
// Presets (poly, noise, initial data) expand to full keys in the manifest.

#pragma once

#include "nematiq/integrator.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nematiq {

enum class Command { simulate, ensemble, picard, verify, convolution_test };

Command parse_command(const std::string& name);
const char* command_name(Command c);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::simulate;

    int nx = 32, ny = 32;
    double dealias = 2.0 / 3.0;
    double dt = 1e-3;
    double T = 1.0;
    std::string scheme = "semi_implicit_em";

    std::string poly = "gl(1)";
    std::string h = "swirl(1)";
    double dnoise_amp = 0.0;
    std::string vnoise = "off";
    std::string v0 = "taylor_green(1)";
    std::string n0 = "tilt(0.5)";

    uint64_t seed = 1;
    std::vector<uint64_t> seed_list;  // empty: derive from `seed` and `seeds`
    int seeds = 1;
    std::vector<double> k_levels = {1000.0};

    std::string output_dir = "out";
    int output_stride = 10;
    std::string format = "csv";

    // picard command
    double window = 1e-2;
    double cutoff_n = 4.0;
    std::vector<double> picard_levels = {2.0, 4.0, 8.0};
    double picard_tol = 1e-9;
    int max_iter = 30;

    // verify / convolution-test sample sizes
    int verify_samples = 100;

    int moment_p = 0;  // 0: default 2(4N+2)
    bool save_snapshots = false;

    /// Seeds to run: explicit list, else seed, seed+1, ..., seed+seeds-1.
    std::vector<uint64_t> resolved_seeds() const;

    /// All keys with their final values, sorted; the manifest body.
    std::map<std::string, std::string> canonical() const;

    Grid build_grid() const;
    SolverConfig build_solver(const Grid& g) const;
    SystemState build_initial(const Grid& g) const;
    PolynomialF build_poly() const;
};

/// Parse flat `key = value` text; `source` names it in errors.  Lines
/// starting with '#' and blank lines are ignored.
RunConfig parse_config(const std::string& text, const std::string& source = "config");

/// Apply one `--key value` override (errors name the key).
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

/// Re-validate cross-field invariants; throws ConfigError naming the key.
void validate_config(const RunConfig& cfg);

/// FNV-1a hash of the canonical key = value listing.
uint64_t config_hash(const RunConfig& cfg);

}  // namespace nematiq
