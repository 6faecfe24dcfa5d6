#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sts/commands.hpp"

namespace {

void add_override_flags(CLI::App* cmd, sts::Overrides& o) {
    cmd->add_option("--seed", o.seed, "Base seed");
    cmd->add_option("--reps", o.reps, "Number of replications")->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", o.horizon, "Number of periods")->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", o.alpha, "Discount factor in [0,1)");
    cmd->add_option("--epsilon", o.epsilon, "STS tolerance");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void print_artifacts(const sts::Artifacts& a) {
    for (const auto& r : a.results) {
        std::cout << sts::to_string(r.config.algo) << ": discounted regret " << r.discounted_mean << " +/- "
                  << r.discounted_stderr << " (" << r.n_reps << " reps, horizon " << r.horizon << ")\n";
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    }
    for (const auto& f : a.files) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thompson sampling and satisficing Thompson sampling benchmarks"};
    app.require_subcommand(1);

    sts::RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment config and write CSVs");
    run_cmd->add_option("--config", run.config_path, "Experiment config file")->required();
    add_override_flags(run_cmd, run.overrides);
    run_cmd->add_option("--out", run.out_dir, "Output directory (default $STSBENCH_OUT_DIR or .)");
    run_cmd->add_flag("--force", run.force, "Overwrite existing outputs");

    std::string figure;
    sts::Overrides repro_overrides;
    std::string repro_out;
    bool repro_force = false;
    auto* repro_cmd = app.add_subcommand("reproduce", "Run a built-in computational study (1a, 1b, 1c, 1d)");
    repro_cmd->add_option("figure", figure, "Study id")->required()->check(CLI::IsMember({"1a", "1b", "1c", "1d"}));
    add_override_flags(repro_cmd, repro_overrides);
    repro_cmd->add_option("--out", repro_out, "Output directory (default $STSBENCH_OUT_DIR or .)");
    repro_cmd->add_flag("--force", repro_force, "Overwrite existing outputs");

    std::string theorem;
    sts::VerifyOptions verify;
    std::string verify_out;
    auto* verify_cmd = app.add_subcommand("verify", "Check a closed-form regret value or bound by simulation");
    verify_cmd->add_option("theorem", theorem, "T1, T2, T4 or T5")
        ->required()
        ->check(CLI::IsMember({"T1", "T2", "T4", "T5"}, CLI::ignore_case));
    verify_cmd->add_option("--alpha", verify.alpha, "Discount factor in [0,1)");
    verify_cmd->add_option("--reps", verify.reps, "Number of replications")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify.seed, "Base seed");
    verify_cmd->add_option("--epsilon", verify.epsilon, "Tolerance (T5 only)");
    verify_cmd->add_option("--threads", verify.threads, "Worker threads (0 = all cores)");
    verify_cmd->add_option("--out", verify_out, "Also write verify_<id>.csv to this directory");
    verify_cmd->add_flag("--force", verify.force, "Overwrite existing outputs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            print_artifacts(sts::cmd_run(run));
        } else if (*repro_cmd) {
            print_artifacts(sts::cmd_reproduce(figure, repro_overrides, repro_out, repro_force));
        } else if (*verify_cmd) {
            verify.theorem = sts::parse_theorem(theorem);
            if (!verify_out.empty()) verify.out_dir = verify_out;
            return sts::cmd_verify(verify, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
