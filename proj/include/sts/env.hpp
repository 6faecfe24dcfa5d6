#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sts/rng.hpp"

namespace sts {

/// Actions are zero-based. For infinite families an action index is any
/// non-negative integer; means are drawn on first touch.
using ActionId = std::size_t;

struct FiniteUniformDeterministic {
    std::size_t n_actions = 250;
};

struct FiniteUniformBernoulli {
    std::size_t n_actions = 250;
};

struct FiniteGaussian {
    std::size_t n_actions = 250;
    double prior_mean = 0.0;
    double prior_var = 1.0;
    double noise_var = 1.0;
};

/// Mean rewards L * theta, rows of L uniform on the unit sphere, theta ~ N(0, I).
struct LinearGaussian {
    std::size_t n_actions = 250;
    std::size_t dim = 250;
    double noise_var = 2.0;
};

/// Countably many arms, theta_a ~ Unif[0,1], reward equals theta_a.
struct InfiniteDeterministic {};

/// Countably many arms, theta_a ~ Beta(prior_a, prior_b), Bernoulli rewards.
struct InfiniteBernoulli {
    double prior_a = 1.0;
    double prior_b = 1.0;
};

using EnvFamily = std::variant<FiniteUniformDeterministic, FiniteUniformBernoulli, FiniteGaussian,
                               LinearGaussian, InfiniteDeterministic, InfiniteBernoulli>;

/// Throws std::invalid_argument naming the offending field.
void validate(const EnvFamily& family);

std::string family_name(const EnvFamily& family);
/// Family name with its parameters, e.g. "gaussian(n_actions=250;prior_mean=0;...)".
std::string describe(const EnvFamily& family);
bool is_infinite(const EnvFamily& family);
/// True when every mean reward lies in [0,1], so per-period regret is at most 1.
bool has_unit_rewards(const EnvFamily& family);
/// Number of actions for finite families; 0 for infinite ones.
std::size_t action_count(const EnvFamily& family);

struct Outcome {
    double reward = 0.0;
};

class EnvironmentInstance {
public:
    EnvironmentInstance(EnvFamily family, std::vector<double> means, double r_star);
    EnvironmentInstance(LinearGaussian family, std::shared_ptr<const Eigen::MatrixXd> loadings,
                        Eigen::VectorXd theta);
    EnvironmentInstance(EnvFamily family, Rng prior_stream);

    const EnvFamily& family() const { return family_; }
    bool infinite() const { return infinite_; }
    double r_star() const { return r_star_; }

    /// E[R_a | theta]. Materializes the arm for infinite families.
    double arm_mean(ActionId a);
    Outcome observe(ActionId a, Rng& noise);

    /// Finite families: all means. Infinite: materialized prefix (NaN where untouched).
    const std::vector<double>& means() const { return means_; }
    std::size_t materialized_count() const { return materialized_; }

    const std::shared_ptr<const Eigen::MatrixXd>& loadings() const { return loadings_; }
    const Eigen::VectorXd& theta() const { return theta_; }

private:
    double materialize(ActionId a);

    EnvFamily family_;
    bool infinite_ = false;
    std::vector<double> means_;
    double r_star_ = 0.0;
    std::size_t materialized_ = 0;
    Rng prior_stream_;
    std::shared_ptr<const Eigen::MatrixXd> loadings_;
    Eigen::VectorXd theta_;
};

EnvironmentInstance draw_instance(const EnvFamily& family, Rng& rng);

inline Outcome observe(EnvironmentInstance& instance, ActionId a, Rng& rng) {
    return instance.observe(a, rng);
}

inline double arm_mean(EnvironmentInstance& instance, ActionId a) { return instance.arm_mean(a); }

/// n x dim matrix with rows drawn uniformly from the unit sphere.
Eigen::MatrixXd unit_sphere_rows(std::size_t n, std::size_t dim, Rng& rng);

}  // namespace sts
