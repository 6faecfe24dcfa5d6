#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sts/env.hpp"
#include "sts/rng.hpp"

namespace sts {

/// Raised when a covariance stops being numerically positive semi-definite.
class NumericalDegeneracy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Noise-free arms: a played arm's mean is known exactly; unplayed arms keep
/// the Unif[0,1] prior. `known` grows on demand for infinite families.
struct ExactValueBelief {
    bool infinite = false;
    std::vector<std::optional<double>> known;
};

struct BetaBelief {
    bool infinite = false;
    double prior_a = 1.0;
    double prior_b = 1.0;
    std::vector<double> alpha;
    std::vector<double> beta;
};

struct NormalBelief {
    std::vector<double> mean;
    std::vector<double> var;
    double noise_var = 1.0;
    std::size_t clamps = 0;
};

/// Gaussian belief over the weight vector of a linear bandit. The covariance is
/// carried as a square-root factor S with Sigma = S S^T; rank-one updates act on
/// S directly so sampling never refactorizes.
class LinearNormalBelief {
public:
    /// Prior N(mean, covariance). Throws NumericalDegeneracy if the covariance
    /// has no Cholesky factor.
    LinearNormalBelief(std::shared_ptr<const Eigen::MatrixXd> loadings, Eigen::VectorXd mean,
                       const Eigen::MatrixXd& covariance, double noise_var);

    void update(ActionId a, double reward);
    const Eigen::VectorXd& mean() const { return mean_; }
    Eigen::MatrixXd covariance() const;
    const Eigen::MatrixXd& sqrt_covariance() const { return sqrt_cov_; }
    const Eigen::MatrixXd& loadings() const { return *loadings_; }
    double noise_var() const { return noise_var_; }
    std::size_t n_actions() const { return static_cast<std::size_t>(loadings_->rows()); }

    /// Runs a Cholesky factorization of the current covariance; throws
    /// NumericalDegeneracy (with the matrix in the message) on failure.
    void check_psd() const;

private:
    std::shared_ptr<const Eigen::MatrixXd> loadings_;
    Eigen::VectorXd mean_;
    Eigen::MatrixXd sqrt_cov_;
    double noise_var_;
    Eigen::VectorXd scratch_v_;
    Eigen::VectorXd scratch_s_;
};

using BeliefModel = std::variant<ExactValueBelief, BetaBelief, NormalBelief, LinearNormalBelief>;

/// Prior belief matching the instance's family. Linear beliefs share the
/// instance's loadings and start from N(0, I).
BeliefModel make_prior_belief(const EnvironmentInstance& instance);

struct ParameterSample {
    std::vector<double> values;
    bool infinite = false;
    /// Supremum over the (infinitely many) arms the belief has never seen.
    double untouched_sup = 1.0;
    Eigen::VectorXd theta;

    /// Lowest-index arm outside `values`; only meaningful for infinite families.
    ActionId fresh_action() const { return values.size(); }
};

void update(BeliefModel& model, ActionId a, const Outcome& outcome);
ParameterSample sample(const BeliefModel& model, Rng& rng);
double mean_under_sample(const ParameterSample& sample, ActionId a);

/// Posterior mean of arm a's expected reward.
double posterior_mean(const BeliefModel& model, ActionId a);

/// Arms the belief holds explicit state for (infinite families: touched prefix).
std::size_t tracked_arms(const BeliefModel& model);
std::size_t variance_clamps(const BeliefModel& model);

}  // namespace sts
