#include "sts/posterior.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace sts {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_finite_index(std::size_t a, std::size_t n) {
    if (a >= n)
        throw std::out_of_range("action " + std::to_string(a) + " out of range for " +
                                std::to_string(n) + " actions");
}

double beta_draw(double a, double b, std::gamma_distribution<double>& ga,
                 std::gamma_distribution<double>& gb, Rng& rng) {
    using param = std::gamma_distribution<double>::param_type;
    const double x = ga(rng, param(a, 1.0));
    const double y = gb(rng, param(b, 1.0));
    return x / (x + y);
}

void update_exact(ExactValueBelief& m, ActionId a, double r) {
    if (!(r >= 0.0 && r <= 1.0))
        throw std::domain_error("noise-free reward " + std::to_string(r) + " outside [0,1]");
    if (m.infinite) {
        if (a >= m.known.size()) m.known.resize(a + 1);
    } else {
        check_finite_index(a, m.known.size());
    }
    auto& slot = m.known[a];
    if (slot && *slot != r)
        throw std::domain_error("conflicting noise-free observation for action " + std::to_string(a));
    slot = r;
}

void update_beta(BetaBelief& m, ActionId a, double r) {
    if (r != 0.0 && r != 1.0)
        throw std::domain_error("Bernoulli reward must be 0 or 1, got " + std::to_string(r));
    if (m.infinite) {
        if (a >= m.alpha.size()) {
            m.alpha.resize(a + 1, m.prior_a);
            m.beta.resize(a + 1, m.prior_b);
        }
    } else {
        check_finite_index(a, m.alpha.size());
    }
    m.alpha[a] += r;
    m.beta[a] += 1.0 - r;
}

void update_normal(NormalBelief& m, ActionId a, double r) {
    check_finite_index(a, m.mean.size());
    if (!std::isfinite(r)) throw std::domain_error("Gaussian reward must be finite");
    const double v = m.var[a];
    const double denom = v + m.noise_var;
    m.mean[a] = (m.mean[a] * m.noise_var + r * v) / denom;
    double nv = v * m.noise_var / denom;
    if (nv < 0.0) {
        nv = 0.0;
        ++m.clamps;
    }
    m.var[a] = nv;
}

}  // namespace

LinearNormalBelief::LinearNormalBelief(std::shared_ptr<const Eigen::MatrixXd> loadings,
                                       Eigen::VectorXd mean, const Eigen::MatrixXd& covariance,
                                       double noise_var)
    : loadings_(std::move(loadings)), mean_(std::move(mean)), noise_var_(noise_var) {
    if (!loadings_ || loadings_->cols() != mean_.size() || covariance.rows() != mean_.size() ||
        covariance.cols() != mean_.size())
        throw std::invalid_argument("linear belief dimensions do not agree");
    if (!(noise_var_ > 0.0)) throw std::invalid_argument("noise_var must be > 0");
    Eigen::LLT<Eigen::MatrixXd> llt(covariance);
    if (llt.info() != Eigen::Success) {
        std::ostringstream os;
        os << "prior covariance is not positive definite:\n" << covariance;
        throw NumericalDegeneracy(os.str());
    }
    sqrt_cov_ = llt.matrixL();
    scratch_v_.resize(mean_.size());
    scratch_s_.resize(mean_.size());
}

void LinearNormalBelief::update(ActionId a, double reward) {
    check_finite_index(a, n_actions());
    if (!std::isfinite(reward)) throw std::domain_error("Gaussian reward must be finite");
    const auto x = loadings_->row(static_cast<Eigen::Index>(a)).transpose();
    // Square-root (Potter) form of the Bayesian linear-regression update.
    scratch_v_.noalias() = sqrt_cov_.transpose() * x;
    scratch_s_.noalias() = sqrt_cov_ * scratch_v_;
    const double d = noise_var_ + scratch_v_.squaredNorm();
    const double residual = reward - x.dot(mean_);
    mean_ += scratch_s_ * (residual / d);
    const double gamma = 1.0 / (d + std::sqrt(d * noise_var_));
    sqrt_cov_.noalias() -= (gamma * scratch_s_) * scratch_v_.transpose();
}

Eigen::MatrixXd LinearNormalBelief::covariance() const {
    Eigen::MatrixXd cov = sqrt_cov_ * sqrt_cov_.transpose();
    return 0.5 * (cov + cov.transpose());
}

void LinearNormalBelief::check_psd() const {
    const Eigen::MatrixXd cov = covariance();
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success || !cov.allFinite()) {
        std::ostringstream os;
        os << "posterior covariance lost positive definiteness:\n" << cov;
        throw NumericalDegeneracy(os.str());
    }
}

BeliefModel make_prior_belief(const EnvironmentInstance& instance) {
    return std::visit(
        overloaded{
            [](const FiniteUniformDeterministic& f) -> BeliefModel {
                return ExactValueBelief{false, std::vector<std::optional<double>>(f.n_actions)};
            },
            [](const InfiniteDeterministic&) -> BeliefModel { return ExactValueBelief{true, {}}; },
            [](const FiniteUniformBernoulli& f) -> BeliefModel {
                return BetaBelief{false, 1.0, 1.0, std::vector<double>(f.n_actions, 1.0),
                                  std::vector<double>(f.n_actions, 1.0)};
            },
            [](const InfiniteBernoulli& f) -> BeliefModel {
                return BetaBelief{true, f.prior_a, f.prior_b, {}, {}};
            },
            [](const FiniteGaussian& f) -> BeliefModel {
                return NormalBelief{std::vector<double>(f.n_actions, f.prior_mean),
                                    std::vector<double>(f.n_actions, f.prior_var), f.noise_var, 0};
            },
            [&](const LinearGaussian& f) -> BeliefModel {
                const auto dim = static_cast<Eigen::Index>(f.dim);
                return LinearNormalBelief(instance.loadings(), Eigen::VectorXd::Zero(dim),
                                          Eigen::MatrixXd::Identity(dim, dim), f.noise_var);
            },
        },
        instance.family());
}

void update(BeliefModel& model, ActionId a, const Outcome& outcome) {
    const double r = outcome.reward;
    std::visit(overloaded{
                   [&](ExactValueBelief& m) { update_exact(m, a, r); },
                   [&](BetaBelief& m) { update_beta(m, a, r); },
                   [&](NormalBelief& m) { update_normal(m, a, r); },
                   [&](LinearNormalBelief& m) { m.update(a, r); },
               },
               model);
}

ParameterSample sample(const BeliefModel& model, Rng& rng) {
    ParameterSample out;
    std::visit(
        overloaded{
            [&](const ExactValueBelief& m) {
                out.infinite = m.infinite;
                out.values.resize(m.known.size());
                std::uniform_real_distribution<double> u(0.0, 1.0);
                for (std::size_t a = 0; a < m.known.size(); ++a)
                    out.values[a] = m.known[a] ? *m.known[a] : u(rng);
            },
            [&](const BetaBelief& m) {
                out.infinite = m.infinite;
                out.values.resize(m.alpha.size());
                std::gamma_distribution<double> ga;
                std::gamma_distribution<double> gb;
                for (std::size_t a = 0; a < m.alpha.size(); ++a)
                    out.values[a] = beta_draw(m.alpha[a], m.beta[a], ga, gb, rng);
            },
            [&](const NormalBelief& m) {
                out.values.resize(m.mean.size());
                std::normal_distribution<double> z;
                for (std::size_t a = 0; a < m.mean.size(); ++a) {
                    const double v = m.var[a];
                    out.values[a] = v > 0.0 ? m.mean[a] + std::sqrt(v) * z(rng) : m.mean[a];
                }
            },
            [&](const LinearNormalBelief& m) {
                const auto dim = m.mean().size();
                Eigen::VectorXd z(dim);
                std::normal_distribution<double> normal;
                for (Eigen::Index j = 0; j < dim; ++j) z(j) = normal(rng);
                out.theta = m.mean() + m.sqrt_covariance() * z;
                if (!out.theta.allFinite()) {
                    std::ostringstream os;
                    os << "non-finite parameter sample; square-root covariance:\n"
                       << m.sqrt_covariance();
                    throw NumericalDegeneracy(os.str());
                }
                const Eigen::VectorXd values = m.loadings() * out.theta;
                out.values.assign(values.data(), values.data() + values.size());
            },
        },
        model);
    return out;
}

double mean_under_sample(const ParameterSample& sample, ActionId a) {
    if (a < sample.values.size()) return sample.values[a];
    if (sample.infinite) return sample.untouched_sup;
    throw std::out_of_range("action " + std::to_string(a) + " out of range for " +
                            std::to_string(sample.values.size()) + " actions");
}

double posterior_mean(const BeliefModel& model, ActionId a) {
    return std::visit(
        overloaded{
            [&](const ExactValueBelief& m) {
                if (a < m.known.size() && m.known[a]) return *m.known[a];
                if (!m.infinite) check_finite_index(a, m.known.size());
                return 0.5;
            },
            [&](const BetaBelief& m) {
                if (a < m.alpha.size()) return m.alpha[a] / (m.alpha[a] + m.beta[a]);
                if (!m.infinite) check_finite_index(a, m.alpha.size());
                return m.prior_a / (m.prior_a + m.prior_b);
            },
            [&](const NormalBelief& m) {
                check_finite_index(a, m.mean.size());
                return m.mean[a];
            },
            [&](const LinearNormalBelief& m) {
                check_finite_index(a, m.n_actions());
                return m.loadings().row(static_cast<Eigen::Index>(a)).dot(m.mean());
            },
        },
        model);
}

std::size_t tracked_arms(const BeliefModel& model) {
    return std::visit(overloaded{
                          [](const ExactValueBelief& m) { return m.known.size(); },
                          [](const BetaBelief& m) { return m.alpha.size(); },
                          [](const NormalBelief& m) { return m.mean.size(); },
                          [](const LinearNormalBelief& m) { return m.n_actions(); },
                      },
                      model);
}

std::size_t variance_clamps(const BeliefModel& model) {
    if (const auto* m = std::get_if<NormalBelief>(&model)) return m->clamps;
    return 0;
}

}  // namespace sts
