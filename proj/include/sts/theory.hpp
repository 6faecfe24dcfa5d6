#pragma once

namespace sts::theory {

// Closed forms for the infinitely-armed bandits. All logarithms are natural.
// Domain violations throw std::domain_error.

/// Discounted regret of TS on the infinite deterministic bandit: 1 / (2(1 - alpha)).
double ts_infinite_regret(double alpha);

/// Published closed form for STS on the infinite deterministic bandit:
///   eps / (2(1-alpha)) + (1-eps)(1-2eps) / (2(eps + (1-alpha)(1-eps))).
/// It charges arms played before the first (1-eps)-good arm an expected gap of
/// (1-eps)/2. Those arms are uniform on [0, 1-eps], so their gap is (1+eps)/2;
/// sts_infinite_regret_conditional carries that correction.
double sts_infinite_regret_exact(double alpha, double epsilon);

/// Discounted regret of STS on the infinite deterministic bandit obtained by
/// conditioning on the first hit time tau ~ Geometric(eps) on {0, 1, ...}:
///   eps / (2(1-alpha)) + (1-eps) / (2(1 - alpha(1-eps))).
double sts_infinite_regret_conditional(double alpha, double epsilon);

/// eps / (2(1-alpha)) + 1 / (2 eps); upper-bounds both forms above.
double sts_infinite_regret_relaxation(double alpha, double epsilon);

/// 1 / sqrt(1 - alpha), attained bound at eps = sqrt(1 - alpha).
double sts_infinite_regret_bound(double alpha);
double sts_infinite_tolerance(double alpha);

/// Entropy in nats of Geometric(p) on {1, 2, ...}: [-(1-p)ln(1-p) - p ln p] / p.
double geometric_entropy(double p);

/// 1 / (4 eps H(tau)) with tau ~ Geometric(eps).
double info_ratio_bound_deterministic(double epsilon);

/// sqrt(2 / (1 - alpha)), attained at eps = sqrt((1 - alpha) / 2).
double sts_theorem4_regret_bound(double alpha);
double sts_theorem4_tolerance(double alpha);

struct BoundInputs {
    double alpha = 0.0;
    double epsilon = 0.0;
    /// Prior probability that an arm is eps-optimal, P(theta_a > 1 - eps).
    double delta = 1.0;
    /// E[theta | theta >= 1 - eps] - E[theta].
    double l_gap = 0.0;
};

void validate(const BoundInputs& in);

/// Inputs for a Unif[0,1] prior: delta = eps, l_gap = (1 - eps) / 2.
BoundInputs uniform_bound_inputs(double alpha, double epsilon);
/// Inputs for a Beta(a, b) prior, via regularized incomplete beta functions.
BoundInputs beta_bound_inputs(double alpha, double epsilon, double prior_a, double prior_b);

/// 1 + ln(1/delta); bounds the entropy of the first eps-optimal arm.
double noisy_entropy_bound(double delta);
/// 6 + 4/delta + (2/delta) ln(1 / (1 - alpha^2)).
double noisy_info_ratio_bound(double alpha, double delta);
/// eps/(1-alpha) + sqrt(info_ratio * entropy / (1 - alpha^2)).
double sts_noisy_regret_bound(const BoundInputs& in);

}  // namespace sts::theory
