#include "sts/env.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sts {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double beta_draw(double a, double b, Rng& rng) {
    std::gamma_distribution<double> ga(a);
    std::gamma_distribution<double> gb(b);
    const double x = ga(rng);
    const double y = gb(rng);
    return x / (x + y);
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void validate(const EnvFamily& family) {
    std::visit(overloaded{
                   [](const FiniteUniformDeterministic& f) {
                       require(f.n_actions >= 1, "n_actions must be >= 1");
                   },
                   [](const FiniteUniformBernoulli& f) {
                       require(f.n_actions >= 1, "n_actions must be >= 1");
                   },
                   [](const FiniteGaussian& f) {
                       require(f.n_actions >= 1, "n_actions must be >= 1");
                       require(f.prior_var >= 0.0 && std::isfinite(f.prior_var),
                               "prior_var must be >= 0");
                       require(f.noise_var > 0.0 && std::isfinite(f.noise_var),
                               "noise_var must be > 0");
                       require(std::isfinite(f.prior_mean), "prior_mean must be finite");
                   },
                   [](const LinearGaussian& f) {
                       require(f.n_actions >= 1, "n_actions must be >= 1");
                       require(f.dim >= 1, "dim must be >= 1");
                       require(f.noise_var > 0.0 && std::isfinite(f.noise_var),
                               "noise_var must be > 0");
                   },
                   [](const InfiniteDeterministic&) {},
                   [](const InfiniteBernoulli& f) {
                       require(f.prior_a > 0.0 && std::isfinite(f.prior_a), "prior_a must be > 0");
                       require(f.prior_b > 0.0 && std::isfinite(f.prior_b), "prior_b must be > 0");
                   },
               },
               family);
}

std::string family_name(const EnvFamily& family) {
    return std::visit(overloaded{
                          [](const FiniteUniformDeterministic&) { return "uniform-deterministic"; },
                          [](const FiniteUniformBernoulli&) { return "uniform-bernoulli"; },
                          [](const FiniteGaussian&) { return "gaussian"; },
                          [](const LinearGaussian&) { return "linear-gaussian"; },
                          [](const InfiniteDeterministic&) { return "infinite-deterministic"; },
                          [](const InfiniteBernoulli&) { return "infinite-bernoulli"; },
                      },
                      family);
}

std::string describe(const EnvFamily& family) {
    auto num = [](double x) {
        char buf[40];
        const auto res = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, res.ptr);
    };
    std::string params = std::visit(
        overloaded{
            [](const FiniteUniformDeterministic& f) { return "n_actions=" + std::to_string(f.n_actions); },
            [](const FiniteUniformBernoulli& f) { return "n_actions=" + std::to_string(f.n_actions); },
            [&](const FiniteGaussian& f) {
                return "n_actions=" + std::to_string(f.n_actions) + ";prior_mean=" + num(f.prior_mean) +
                       ";prior_var=" + num(f.prior_var) + ";noise_var=" + num(f.noise_var);
            },
            [&](const LinearGaussian& f) {
                return "n_actions=" + std::to_string(f.n_actions) + ";dim=" + std::to_string(f.dim) +
                       ";noise_var=" + num(f.noise_var);
            },
            [](const InfiniteDeterministic&) { return std::string(); },
            [&](const InfiniteBernoulli& f) {
                return "prior_a=" + num(f.prior_a) + ";prior_b=" + num(f.prior_b);
            },
        },
        family);
    return family_name(family) + "(" + params + ")";
}

bool is_infinite(const EnvFamily& family) {
    return std::holds_alternative<InfiniteDeterministic>(family) ||
           std::holds_alternative<InfiniteBernoulli>(family);
}

bool has_unit_rewards(const EnvFamily& family) {
    return !std::holds_alternative<FiniteGaussian>(family) &&
           !std::holds_alternative<LinearGaussian>(family);
}

std::size_t action_count(const EnvFamily& family) {
    return std::visit(overloaded{
                          [](const FiniteUniformDeterministic& f) { return f.n_actions; },
                          [](const FiniteUniformBernoulli& f) { return f.n_actions; },
                          [](const FiniteGaussian& f) { return f.n_actions; },
                          [](const LinearGaussian& f) { return f.n_actions; },
                          [](const auto&) { return std::size_t{0}; },
                      },
                      family);
}

EnvironmentInstance::EnvironmentInstance(EnvFamily family, std::vector<double> means, double r_star)
    : family_(std::move(family)), means_(std::move(means)), r_star_(r_star) {
    if (is_infinite(family_))
        throw std::invalid_argument("infinite families are constructed from a prior stream");
    materialized_ = means_.size();
}

EnvironmentInstance::EnvironmentInstance(LinearGaussian family,
                                         std::shared_ptr<const Eigen::MatrixXd> loadings,
                                         Eigen::VectorXd theta)
    : family_(family), loadings_(std::move(loadings)), theta_(std::move(theta)) {
    if (!loadings_ || static_cast<std::size_t>(loadings_->rows()) != family.n_actions ||
        static_cast<std::size_t>(loadings_->cols()) != family.dim ||
        static_cast<std::size_t>(theta_.size()) != family.dim)
        throw std::invalid_argument("loadings/theta shape does not match the family");
    const Eigen::VectorXd m = (*loadings_) * theta_;
    means_.assign(m.data(), m.data() + m.size());
    r_star_ = *std::max_element(means_.begin(), means_.end());
    materialized_ = means_.size();
}

EnvironmentInstance::EnvironmentInstance(EnvFamily family, Rng prior_stream)
    : family_(std::move(family)), infinite_(true), r_star_(1.0),
      prior_stream_(std::move(prior_stream)) {
    if (!is_infinite(family_)) throw std::invalid_argument("family is not infinite");
}

double EnvironmentInstance::materialize(ActionId a) {
    if (a >= means_.size()) means_.resize(a + 1, std::numeric_limits<double>::quiet_NaN());
    double& m = means_[a];
    if (std::isnan(m)) {
        if (const auto* b = std::get_if<InfiniteBernoulli>(&family_)) {
            m = beta_draw(b->prior_a, b->prior_b, prior_stream_);
        } else {
            m = std::uniform_real_distribution<double>(0.0, 1.0)(prior_stream_);
        }
        ++materialized_;
    }
    return m;
}

double EnvironmentInstance::arm_mean(ActionId a) {
    if (infinite_) return materialize(a);
    if (a >= means_.size())
        throw std::out_of_range("action " + std::to_string(a) + " out of range for " +
                                std::to_string(means_.size()) + " actions");
    return means_[a];
}

Outcome EnvironmentInstance::observe(ActionId a, Rng& noise) {
    const double m = arm_mean(a);
    return std::visit(
        overloaded{
            [&](const FiniteUniformDeterministic&) { return Outcome{m}; },
            [&](const InfiniteDeterministic&) { return Outcome{m}; },
            [&](const FiniteUniformBernoulli&) {
                return Outcome{std::bernoulli_distribution(m)(noise) ? 1.0 : 0.0};
            },
            [&](const InfiniteBernoulli&) {
                return Outcome{std::bernoulli_distribution(m)(noise) ? 1.0 : 0.0};
            },
            [&](const FiniteGaussian& f) {
                return Outcome{m + std::normal_distribution<double>(0.0, std::sqrt(f.noise_var))(noise)};
            },
            [&](const LinearGaussian& f) {
                return Outcome{m + std::normal_distribution<double>(0.0, std::sqrt(f.noise_var))(noise)};
            },
        },
        family_);
}

Eigen::MatrixXd unit_sphere_rows(std::size_t n, std::size_t dim, Rng& rng) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd out(n, dim);
    for (std::size_t i = 0; i < n; ++i) {
        double norm = 0.0;
        do {
            for (std::size_t j = 0; j < dim; ++j) out(i, j) = z(rng);
            norm = out.row(i).norm();
        } while (norm == 0.0);
        out.row(i) /= norm;
    }
    return out;
}

EnvironmentInstance draw_instance(const EnvFamily& family, Rng& rng) {
    return std::visit(
        overloaded{
            [&](const FiniteUniformDeterministic& f) {
                std::uniform_real_distribution<double> u(0.0, 1.0);
                std::vector<double> means(f.n_actions);
                for (auto& m : means) m = u(rng);
                const double r_star = *std::max_element(means.begin(), means.end());
                return EnvironmentInstance(family, std::move(means), r_star);
            },
            [&](const FiniteUniformBernoulli& f) {
                std::uniform_real_distribution<double> u(0.0, 1.0);
                std::vector<double> means(f.n_actions);
                for (auto& m : means) m = u(rng);
                const double r_star = *std::max_element(means.begin(), means.end());
                return EnvironmentInstance(family, std::move(means), r_star);
            },
            [&](const FiniteGaussian& f) {
                std::vector<double> means(f.n_actions, f.prior_mean);
                if (f.prior_var > 0.0) {
                    std::normal_distribution<double> n(f.prior_mean, std::sqrt(f.prior_var));
                    for (auto& m : means) m = n(rng);
                }
                const double r_star = *std::max_element(means.begin(), means.end());
                return EnvironmentInstance(family, std::move(means), r_star);
            },
            [&](const LinearGaussian& f) {
                auto loadings =
                    std::make_shared<const Eigen::MatrixXd>(unit_sphere_rows(f.n_actions, f.dim, rng));
                std::normal_distribution<double> z;
                Eigen::VectorXd theta(f.dim);
                for (std::size_t j = 0; j < f.dim; ++j) theta(j) = z(rng);
                return EnvironmentInstance(f, std::move(loadings), std::move(theta));
            },
            [&](const auto&) {
                // Arm means for infinite families come from a dedicated child stream so
                // their values depend only on touch order, not on interleaved draws.
                Rng child(rng());
                return EnvironmentInstance(family, std::move(child));
            },
        },
        family);
}

}  // namespace sts
