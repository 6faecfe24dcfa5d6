#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sts/agents.hpp"
#include "sts/env.hpp"
#include "sts/regret.hpp"

namespace sts {

enum class EvalMode { DiscountedTruncated, GeometricHorizon, PerPeriod };

std::string to_string(EvalMode mode);
EvalMode parse_eval_mode(const std::string& name);

/// Horizon chosen so the truncated tail of the discounted sum is at most `tol`.
/// Without an explicit tol the default is 1e-4 * max_gap / (1 - alpha).
struct AutoHorizon {
    std::optional<double> tol;
};

using HorizonSpec = std::variant<std::size_t, AutoHorizon>;

struct ExperimentConfig {
    EnvFamily family = FiniteUniformDeterministic{};
    Algo algo = Algo::TS;
    double epsilon = 0.0;
    double alpha = 0.99;
    HorizonSpec horizon = std::size_t{500};
    std::size_t n_reps = 1000;
    std::uint64_t seed = 1;
    EvalMode eval_mode = EvalMode::DiscountedTruncated;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& config);
std::size_t resolve_horizon(const ExperimentConfig& config);

struct AggregateResult {
    ExperimentConfig config;
    std::size_t horizon = 0;
    std::size_t n_reps = 0;
    std::vector<double> per_period_mean;
    std::vector<double> per_period_stderr;
    /// Discounted total, or undiscounted total over the random horizon in
    /// geometric-horizon mode.
    double discounted_mean = 0.0;
    double discounted_stderr = 0.0;
    std::size_t regret_clamps = 0;
    std::size_t variance_clamps = 0;
    std::vector<std::string> warnings;
};

struct ReplicationOutcome {
    RegretTrace trace;
    double total = 0.0;
    std::vector<ActionId> actions;
    std::size_t variance_clamps = 0;
};

/// One replication on its own substreams. Identical (config, rep) pairs give
/// identical outcomes; TS and STS configs with the same seed share instance
/// and noise streams.
ReplicationOutcome run_replication(const ExperimentConfig& config, std::size_t rep,
                                   bool keep_actions = false);

AggregateResult run_experiment(const ExperimentConfig& config);

enum class TheoremId { T1, T2, T4, T5 };

std::string to_string(TheoremId id);
TheoremId parse_theorem(const std::string& name);

struct BoundCheck {
    std::string name;
    std::string relation;  // "approx" or "<="
    double estimate = 0.0;
    double stderr_ = 0.0;
    double reference = 0.0;
    bool passed = false;
    /// Informational checks are reported but do not affect the verdict.
    bool informational = false;
};

struct VerificationReport {
    TheoremId id = TheoremId::T1;
    double alpha = 0.0;
    double epsilon = 0.0;
    AggregateResult result;
    std::vector<BoundCheck> checks;

    bool passed() const;
};

/// `epsilon` only applies to T5 (default 0.2); T2 and T4 fix it from alpha.
VerificationReport verify_theorem(TheoremId id, double alpha, std::size_t n_reps, std::uint64_t seed,
                                  std::optional<double> epsilon = std::nullopt, unsigned threads = 0);

/// `estimate` within `k` standard errors of `target`.
bool within_stderr(double estimate, double stderr_, double target, double k = 3.0);

struct CurveComparison {
    AggregateResult ts;
    AggregateResult sts;
    /// First period where STS is below TS by at least 2 combined stderr.
    std::optional<std::size_t> first_sts_below;
    std::optional<std::size_t> first_ts_below;
};

/// Runs both configs on shared seeds. Throws std::invalid_argument unless the
/// configs agree on everything except algo and epsilon.
CurveComparison compare_curves(const ExperimentConfig& config_ts, const ExperimentConfig& config_sts);

/// a below b by at least k * sqrt(se_a^2 + se_b^2), with a strictly positive gap.
bool separated_below(double a, double se_a, double b, double se_b, double k = 2.0);

}  // namespace sts
