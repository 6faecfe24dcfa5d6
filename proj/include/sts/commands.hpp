#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sts/config.hpp"
#include "sts/harness.hpp"

namespace sts {

/// Environment variable consulted when --out is not given.
inline constexpr const char* kOutDirEnv = "STSBENCH_OUT_DIR";

std::string default_out_dir();

struct Artifacts {
    std::vector<std::string> files;
    std::vector<AggregateResult> results;
};

/// Runs every algorithm in the spec on shared seeds and writes
/// <out>/<name>_<algo>.csv and <out>/<name>_<algo>_summary.csv.
/// Refuses to overwrite existing files unless `force`.
Artifacts run_and_write(const RunSpec& spec, const std::string& out_dir, bool force);

struct RunOptions {
    std::string config_path;
    Overrides overrides;
    std::string out_dir;
    bool force = false;
};

Artifacts cmd_run(const RunOptions& opts);

/// Built-in computational studies "1a".."1d": 250 arms, horizon 500,
/// alpha 0.99, 1000 replications, TS and STS.
RunSpec figure_spec(const std::string& figure_id);

Artifacts cmd_reproduce(const std::string& figure_id, const Overrides& overrides, const std::string& out_dir,
                        bool force);

struct VerifyOptions {
    TheoremId theorem = TheoremId::T1;
    std::optional<double> alpha;
    std::optional<std::size_t> reps;
    std::uint64_t seed = 1;
    std::optional<double> epsilon;
    unsigned threads = 0;
    /// When set, also writes verify_<id>.csv there.
    std::optional<std::string> out_dir;
    bool force = false;
};

double default_alpha(TheoremId id);
std::size_t default_reps(TheoremId id);

std::string format_report(const VerificationReport& report);
std::string report_csv(const VerificationReport& report);

/// Prints the report; returns 0 iff every non-informational check passes.
int cmd_verify(const VerifyOptions& opts, std::ostream& out);

}  // namespace sts
