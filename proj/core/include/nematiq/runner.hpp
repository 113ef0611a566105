// Orchestration of the CLI commands: simulate / ensemble / picard / verify /
// convolution-test.  Seeds run on a worker pool (NEMATIQ_WORKERS), each seed
// writes its own files, summaries are merged in seed order, and every run
// writes a manifest that reproduces it byte for byte.

#pragma once

#include "nematiq/config.hpp"
#include "nematiq/diagnostics.hpp"

#include <iosfwd>

namespace nematiq {

inline constexpr const char* kBuildIdent = "nematiq 1.0.0";
// Exit codes: 0 ok, 1 assertion failure, 2 config error, 3 runtime/blow-up.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssert = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

struct CheckResult {
    std::string check;
    std::string statistic;
    double value = 0.0;
    double threshold = 0.0;  // 0 when the check is report-only
    bool pass = true;
    double stderr_val = -1.0;  // < 0: not applicable
};

std::string trace_to_csv(const EnergyTrace& trace, int output_stride);
std::string check_to_ndjson(const CheckResult& c);
std::string manifest_text(const RunConfig& cfg);

/// The identity/probe suite behind `verify` (also reused by tests).
std::vector<CheckResult> verify_suite(const RunConfig& cfg);

/// Appendix-A stopped-convolution identity checks over randomized
/// (path, tau) pairs.
std::vector<CheckResult> convolution_suite(const RunConfig& cfg);

/// Execute a command; writes artifacts under cfg.output_dir; returns an
/// exit code.  Messages go to `log`.
int run(const RunConfig& cfg, std::ostream& log);

int worker_count(int jobs);

}  // namespace nematiq
