#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sts/harness.hpp"

namespace sts {

// Per-period file:
//   # <config echo>
//   t,mean_regret,stderr
//   0,<mean>,<stderr>
// Summary file:
//   # <config echo>
//   discounted_mean,discounted_stderr,alpha,epsilon,algo,family,n_reps,seed
// Reals are written in shortest round-trip form so a parse recovers them exactly.

inline constexpr const char* kPerPeriodHeader = "t,mean_regret,stderr";
inline constexpr const char* kSummaryHeader =
    "discounted_mean,discounted_stderr,alpha,epsilon,algo,family,n_reps,seed";

std::string format_real(double x);
/// Deterministic one-line description of a result's configuration.
std::string config_echo(const AggregateResult& r);

std::string per_period_csv(const AggregateResult& r);
std::string summary_csv(const AggregateResult& r);

struct PerPeriodTable {
    std::string echo;
    std::vector<std::size_t> t;
    std::vector<double> mean_regret;
    std::vector<double> stderr_;
};

struct SummaryRow {
    std::string echo;
    double discounted_mean = 0.0;
    double discounted_stderr = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;
    std::string algo;
    std::string family;
    std::size_t n_reps = 0;
    std::uint64_t seed = 0;
};

/// Throws std::runtime_error naming the offending line/column on schema mismatch.
PerPeriodTable parse_per_period_csv(const std::string& text);
SummaryRow parse_summary_csv(const std::string& text);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace sts
