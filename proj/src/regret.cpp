#include "sts/regret.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sts {

namespace {

constexpr double kClampTolerance = 1e-12;

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1) for a finite discounted sum");
}

}  // namespace

RegretTrace::RegretTrace(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
}

void RegretTrace::record(double r_star, double chosen_mean) {
    double gap = r_star - chosen_mean;
    if (gap < 0.0) {
        if (gap < -kClampTolerance)
            throw std::logic_error("chosen mean exceeds r_star by more than rounding error");
        gap = 0.0;
        ++clamps_;
    }
    per_period_.push_back(gap);
    discounted_total_ += weight_ * gap;
    weight_ *= alpha_;
}

double RegretTrace::undiscounted_total(std::size_t periods) const {
    if (periods > per_period_.size()) throw std::out_of_range("periods exceeds recorded horizon");
    double total = 0.0;
    for (std::size_t t = 0; t < periods; ++t) total += per_period_[t];
    return total;
}

double RegretTrace::recompute_discounted() const {
    double total = 0.0;
    for (std::size_t t = 0; t < per_period_.size(); ++t)
        total += std::pow(alpha_, static_cast<double>(t)) * per_period_[t];
    return total;
}

std::size_t truncation_horizon(double alpha, double max_gap, double tol) {
    check_alpha(alpha);
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (!(max_gap >= 0.0)) throw std::invalid_argument("max_gap must be >= 0");
    const double scale = max_gap / (1.0 - alpha);
    if (scale <= tol) return 0;
    if (alpha == 0.0) return 1;
    // Start from the logarithmic estimate, then settle the boundary exactly.
    auto tail = [&](std::size_t t) { return std::pow(alpha, static_cast<double>(t)) * scale; };
    std::size_t t = static_cast<std::size_t>(std::max(0.0, std::floor(std::log(tol / scale) / std::log(alpha))));
    while (t > 0 && tail(t - 1) <= tol) --t;
    while (tail(t) > tol) ++t;
    return t;
}

std::size_t geometric_horizon(double alpha, Rng& rng) {
    check_alpha(alpha);
    if (alpha == 0.0) return 1;
    std::geometric_distribution<std::size_t> failures(1.0 - alpha);
    return failures(rng) + 1;
}

}  // namespace sts
