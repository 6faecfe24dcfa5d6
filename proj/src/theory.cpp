#include "sts/theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>

namespace sts::theory {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in [0, 1), got " + std::to_string(alpha));
}

void check_open_unit(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error(std::string(name) + " must lie in (0, 1), got " + std::to_string(x));
}

}  // namespace

double ts_infinite_regret(double alpha) {
    check_alpha(alpha);
    return 1.0 / (2.0 * (1.0 - alpha));
}

double sts_infinite_regret_exact(double alpha, double epsilon) {
    check_alpha(alpha);
    check_open_unit(epsilon, "epsilon");
    const double first = epsilon / (2.0 * (1.0 - alpha));
    const double second =
        (1.0 - epsilon) * (1.0 - 2.0 * epsilon) / (2.0 * (epsilon + (1.0 - alpha) * (1.0 - epsilon)));
    return first + second;
}

double sts_infinite_regret_conditional(double alpha, double epsilon) {
    check_alpha(alpha);
    check_open_unit(epsilon, "epsilon");
    return epsilon / (2.0 * (1.0 - alpha)) + (1.0 - epsilon) / (2.0 * (1.0 - alpha * (1.0 - epsilon)));
}

double sts_infinite_regret_relaxation(double alpha, double epsilon) {
    check_alpha(alpha);
    check_open_unit(epsilon, "epsilon");
    return epsilon / (2.0 * (1.0 - alpha)) + 1.0 / (2.0 * epsilon);
}

double sts_infinite_regret_bound(double alpha) {
    check_alpha(alpha);
    return 1.0 / std::sqrt(1.0 - alpha);
}

double sts_infinite_tolerance(double alpha) {
    check_alpha(alpha);
    return std::sqrt(1.0 - alpha);
}

double geometric_entropy(double p) {
    check_open_unit(p, "p");
    const double q = 1.0 - p;
    return (-q * std::log(q) - p * std::log(p)) / p;
}

double info_ratio_bound_deterministic(double epsilon) {
    check_open_unit(epsilon, "epsilon");
    return 1.0 / (4.0 * epsilon * geometric_entropy(epsilon));
}

double sts_theorem4_regret_bound(double alpha) {
    check_alpha(alpha);
    return std::sqrt(2.0 / (1.0 - alpha));
}

double sts_theorem4_tolerance(double alpha) {
    check_alpha(alpha);
    return std::sqrt((1.0 - alpha) / 2.0);
}

void validate(const BoundInputs& in) {
    check_alpha(in.alpha);
    check_open_unit(in.epsilon, "epsilon");
    if (!(in.delta > 0.0 && in.delta <= 1.0))
        throw std::domain_error("delta must lie in (0, 1], got " + std::to_string(in.delta));
}

BoundInputs uniform_bound_inputs(double alpha, double epsilon) {
    BoundInputs in{alpha, epsilon, epsilon, (1.0 - epsilon) / 2.0};
    validate(in);
    return in;
}

BoundInputs beta_bound_inputs(double alpha, double epsilon, double prior_a, double prior_b) {
    check_open_unit(epsilon, "epsilon");
    if (!(prior_a > 0.0 && prior_b > 0.0)) throw std::domain_error("Beta parameters must be > 0");
    const double cut = 1.0 - epsilon;
    const double delta = boost::math::ibetac(prior_a, prior_b, cut);
    const double mean = prior_a / (prior_a + prior_b);
    // E[theta 1{theta >= c}] = mean * P_{Beta(a+1,b)}(theta >= c).
    const double upper_mean = mean * boost::math::ibetac(prior_a + 1.0, prior_b, cut) / delta;
    BoundInputs in{alpha, epsilon, delta, upper_mean - mean};
    validate(in);
    return in;
}

double noisy_entropy_bound(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("delta must lie in (0, 1]");
    return 1.0 + std::log(1.0 / delta);
}

double noisy_info_ratio_bound(double alpha, double delta) {
    check_alpha(alpha);
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("delta must lie in (0, 1]");
    return 6.0 + 4.0 / delta + (2.0 / delta) * std::log(1.0 / (1.0 - alpha * alpha));
}

double sts_noisy_regret_bound(const BoundInputs& in) {
    validate(in);
    const double one_minus_a2 = 1.0 - in.alpha * in.alpha;
    return in.epsilon / (1.0 - in.alpha) +
           std::sqrt(noisy_info_ratio_bound(in.alpha, in.delta) * noisy_entropy_bound(in.delta) /
                     one_minus_a2);
}

}  // namespace sts::theory
