#pragma once

#include <cstddef>
#include <vector>

#include "sts/rng.hpp"

namespace sts {

/// Expected-regret accounting for one replication. Increments are
/// r_star - mean(chosen), so reward noise never enters the trace.
class RegretTrace {
public:
    explicit RegretTrace(double alpha);

    void record(double r_star, double chosen_mean);

    double alpha() const { return alpha_; }
    const std::vector<double>& per_period() const { return per_period_; }
    double discounted_total() const { return discounted_total_; }
    std::size_t horizon() const { return per_period_.size(); }
    /// Undiscounted regret over the first `periods` entries.
    double undiscounted_total(std::size_t periods) const;
    /// Number of slightly negative increments that were clamped to zero.
    std::size_t clamps() const { return clamps_; }

    /// Sum alpha^t * per_period[t], recomputed from scratch.
    double recompute_discounted() const;

private:
    double alpha_;
    double weight_ = 1.0;
    double discounted_total_ = 0.0;
    std::vector<double> per_period_;
    std::size_t clamps_ = 0;
};

/// Smallest T with alpha^T * max_gap / (1 - alpha) <= tol.
std::size_t truncation_horizon(double alpha, double max_gap, double tol);

/// T ~ Geometric(1 - alpha) on {1, 2, ...}.
std::size_t geometric_horizon(double alpha, Rng& rng);

}  // namespace sts
