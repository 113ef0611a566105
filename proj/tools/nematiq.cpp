// nematiq <simulate|ensemble|picard|verify|convolution-test>
//         [--config FILE] [--key value ...]
//
// Flags override file values.  Exit codes: 0 ok, 1 assertion failure,
// 2 config error, 3 runtime/blow-up.

#include "nematiq/runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

void usage(std::ostream& os) {
    os << "usage: nematiq <simulate|ensemble|picard|verify|convolution-test>\n"
          "               [--config FILE] [--key value ...]\n"
          "\n"
          "Common keys (defaults in parentheses):\n"
          "  nx (32) ny (32) dealias (2/3) dt (0.001) T (1) scheme (semi_implicit_em)\n"
          "  poly (gl(1)) h (swirl(1)) dnoise_amp (0) vnoise (off)\n"
          "  v0 (taylor_green(1)) n0 (tilt(0.5)) seed (1) seeds (1) k_levels (1000)\n"
          "  output_dir (out) output_stride (10) format (csv)\n"
          "  window (0.01) cutoff_n (4) picard_levels (2,4,8) picard_tol (1e-9)\n"
          "  max_iter (30) verify_samples (100) moment_p (0) save_snapshots (0)\n"
          "Environment: NEMATIQ_WORKERS caps the seed worker pool.\n";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace nematiq;
    if (argc < 2) {
        usage(std::cerr);
        return kExitConfig;
    }
    const std::string cmd_name = argv[1];
    if (cmd_name == "-h" || cmd_name == "--help") {
        usage(std::cout);
        return kExitOk;
    }

    try {
        Command cmd = parse_command(cmd_name);

        std::string config_text;
        std::vector<std::pair<std::string, std::string>> overrides;
        for (int i = 2; i < argc; ++i) {
            std::string arg = argv[i];
            if (arg.rfind("--", 0) != 0) throw ConfigError("expected --key, got '" + arg + "'");
            const std::string key = arg.substr(2);
            if (i + 1 >= argc) throw ConfigError("missing value for --" + key);
            const std::string value = argv[++i];
            if (key == "config") {
                std::ifstream is(value);
                if (!is) throw ConfigError("cannot open config file " + value);
                std::stringstream ss;
                ss << is.rdbuf();
                config_text = ss.str();
            } else {
                overrides.emplace_back(key, value);
            }
        }

        RunConfig cfg = parse_config(config_text, "config");
        for (const auto& [k, v] : overrides) apply_override(cfg, k, v);
        validate_config(cfg);
        cfg.command = cmd;
        return run(cfg, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
