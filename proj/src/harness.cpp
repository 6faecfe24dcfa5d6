#include "sts/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sts/posterior.hpp"
#include "sts/theory.hpp"

namespace sts {

namespace {

constexpr std::size_t kBlockSize = 256;

double max_gap_for(const EnvFamily& family) {
    if (!has_unit_rewards(family))
        throw std::invalid_argument(
            "an automatic horizon needs rewards bounded in [0,1]; set an explicit horizon for " +
            family_name(family));
    return 1.0;
}

/// Running mean/variance, merged in a fixed order for reproducibility.
struct Welford {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double stderr_() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

std::string to_string(EvalMode mode) {
    switch (mode) {
        case EvalMode::DiscountedTruncated: return "discounted-truncated";
        case EvalMode::GeometricHorizon: return "geometric-horizon";
        case EvalMode::PerPeriod: return "per-period";
    }
    return "?";
}

EvalMode parse_eval_mode(const std::string& name) {
    if (name == "discounted-truncated" || name == "discounted") return EvalMode::DiscountedTruncated;
    if (name == "geometric-horizon" || name == "geometric") return EvalMode::GeometricHorizon;
    if (name == "per-period") return EvalMode::PerPeriod;
    throw std::invalid_argument("unknown eval_mode '" + name +
                                "' (expected discounted-truncated, geometric-horizon or per-period)");
}

void validate(const ExperimentConfig& c) {
    validate(c.family);
    if (c.n_reps < 1) throw std::invalid_argument("n_reps must be >= 1");
    if (!(c.epsilon >= 0.0) || !std::isfinite(c.epsilon))
        throw std::invalid_argument("epsilon must be >= 0");
    const bool needs_discount = std::holds_alternative<AutoHorizon>(c.horizon) ||
                                c.eval_mode == EvalMode::GeometricHorizon;
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    if (needs_discount && c.alpha >= 1.0)
        throw std::invalid_argument("alpha must lie in [0, 1) for an automatic or geometric horizon");
    if (c.alpha >= 1.0 && c.eval_mode == EvalMode::DiscountedTruncated)
        throw std::invalid_argument("alpha = 1 requires eval_mode per-period with an explicit horizon");
    if (const auto* h = std::get_if<std::size_t>(&c.horizon); h && *h < 1)
        throw std::invalid_argument("horizon must be >= 1");
    if (const auto* a = std::get_if<AutoHorizon>(&c.horizon)) {
        if (a->tol && !(*a->tol > 0.0)) throw std::invalid_argument("tol must be > 0");
        max_gap_for(c.family);
    }
}

std::size_t resolve_horizon(const ExperimentConfig& c) {
    if (const auto* h = std::get_if<std::size_t>(&c.horizon)) return *h;
    const auto& a = std::get<AutoHorizon>(c.horizon);
    const double gap = max_gap_for(c.family);
    const double tol = a.tol ? *a.tol : 1e-4 * gap / (1.0 - c.alpha);
    return std::max<std::size_t>(1, truncation_horizon(c.alpha, gap, tol));
}

ReplicationOutcome run_replication(const ExperimentConfig& c, std::size_t rep, bool keep_actions) {
    Rng instance_rng = make_stream(c.seed, rep, StreamTag::Instance);
    Rng noise_rng = make_stream(c.seed, rep, StreamTag::Noise);
    Rng agent_rng = make_stream(c.seed, rep, StreamTag::Agent);

    const std::size_t horizon = resolve_horizon(c);
    std::size_t steps = horizon;
    std::size_t random_horizon = 0;
    if (c.eval_mode == EvalMode::GeometricHorizon) {
        Rng horizon_rng = make_stream(c.seed, rep, StreamTag::Horizon);
        random_horizon = geometric_horizon(c.alpha, horizon_rng);
        steps = std::max(steps, random_horizon);
    }

    EnvironmentInstance instance = draw_instance(c.family, instance_rng);
    const double eps = c.algo == Algo::STS ? c.epsilon : 0.0;
    AgentState agent(make_prior_belief(instance), c.algo, eps);

    ReplicationOutcome out{RegretTrace(c.alpha), 0.0, {}, 0};
    if (keep_actions) out.actions.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        const StepResult r = step(agent, instance, agent_rng, noise_rng);
        out.trace.record(instance.r_star(), instance.arm_mean(r.selection.chosen));
        if (keep_actions) out.actions.push_back(r.selection.chosen);
    }
    out.total = c.eval_mode == EvalMode::GeometricHorizon ? out.trace.undiscounted_total(random_horizon)
                                                          : out.trace.discounted_total();
    out.variance_clamps = variance_clamps(agent.belief());
    return out;
}

AggregateResult run_experiment(const ExperimentConfig& config) {
    validate(config);
    AggregateResult res;
    res.config = config;
    res.horizon = resolve_horizon(config);
    res.n_reps = config.n_reps;
    if (config.algo == Algo::TS && config.epsilon != 0.0)
        res.warnings.push_back("epsilon is ignored for ts");

    std::vector<Welford> per_period(res.horizon);
    Welford totals;

    std::vector<std::optional<ReplicationOutcome>> block;
    for (std::size_t start = 0; start < config.n_reps; start += kBlockSize) {
        const std::size_t count = std::min(kBlockSize, config.n_reps - start);
        block.assign(count, std::nullopt);

        std::atomic<std::size_t> next{0};
        std::mutex err_mu;
        std::exception_ptr err;
        std::size_t err_rep = 0;
        auto worker = [&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    block[i] = run_replication(config, start + i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!err || start + i < err_rep) {
                        err = std::current_exception();
                        err_rep = start + i;
                    }
                }
            }
        };
        const unsigned n_workers = worker_count(config.threads, count);
        if (n_workers == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(n_workers);
            for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        }
        if (err) {
            std::string what = "unknown error";
            try {
                std::rethrow_exception(err);
            } catch (const std::exception& e) {
                what = e.what();
            } catch (...) {
            }
            throw std::runtime_error("replication " + std::to_string(err_rep) + " failed (substream " +
                                     std::to_string(substream_key(config.seed, err_rep, StreamTag::Agent)) +
                                     ", seed " + std::to_string(config.seed) + "): " + what);
        }

        // Ordered reduction keeps aggregates independent of scheduling.
        for (std::size_t i = 0; i < count; ++i) {
            const ReplicationOutcome& r = *block[i];
            const auto& gaps = r.trace.per_period();
            for (std::size_t t = 0; t < res.horizon; ++t) per_period[t].add(gaps[t]);
            totals.add(r.total);
            res.regret_clamps += r.trace.clamps();
            res.variance_clamps += r.variance_clamps;
        }
    }

    res.per_period_mean.resize(res.horizon);
    res.per_period_stderr.resize(res.horizon);
    for (std::size_t t = 0; t < res.horizon; ++t) {
        res.per_period_mean[t] = per_period[t].mean;
        res.per_period_stderr[t] = per_period[t].stderr_();
    }
    res.discounted_mean = totals.mean;
    res.discounted_stderr = totals.stderr_();
    return res;
}

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::T1: return "T1";
        case TheoremId::T2: return "T2";
        case TheoremId::T4: return "T4";
        case TheoremId::T5: return "T5";
    }
    return "?";
}

TheoremId parse_theorem(const std::string& name) {
    if (name == "T1" || name == "t1") return TheoremId::T1;
    if (name == "T2" || name == "t2") return TheoremId::T2;
    if (name == "T4" || name == "t4") return TheoremId::T4;
    if (name == "T5" || name == "t5") return TheoremId::T5;
    throw std::invalid_argument("unknown theorem '" + name + "' (expected T1, T2, T4 or T5)");
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const BoundCheck& c) { return c.informational || c.passed; });
}

bool within_stderr(double estimate, double stderr_, double target, double k) {
    return std::abs(estimate - target) <= k * stderr_;
}

VerificationReport verify_theorem(TheoremId id, double alpha, std::size_t n_reps, std::uint64_t seed,
                                  std::optional<double> epsilon, unsigned threads) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    ExperimentConfig c;
    c.alpha = alpha;
    c.n_reps = n_reps;
    c.seed = seed;
    c.threads = threads;
    c.family = InfiniteDeterministic{};
    c.horizon = AutoHorizon{1e-4};

    VerificationReport rep;
    rep.id = id;
    rep.alpha = alpha;

    auto approx = [](std::string name, const AggregateResult& r, double ref, bool info = false) {
        return BoundCheck{std::move(name), "approx", r.discounted_mean, r.discounted_stderr, ref,
                          within_stderr(r.discounted_mean, r.discounted_stderr, ref), info};
    };
    auto upper = [](std::string name, const AggregateResult& r, double bound) {
        return BoundCheck{std::move(name), "<=", r.discounted_mean, r.discounted_stderr, bound,
                          r.discounted_mean <= bound + 3.0 * r.discounted_stderr, false};
    };

    switch (id) {
        case TheoremId::T1: {
            c.algo = Algo::TS;
            rep.result = run_experiment(c);
            rep.checks.push_back(approx("ts regret = 1/(2(1-alpha))", rep.result,
                                        theory::ts_infinite_regret(alpha)));
            break;
        }
        case TheoremId::T2: {
            c.algo = Algo::STS;
            c.epsilon = theory::sts_infinite_tolerance(alpha);
            rep.result = run_experiment(c);
            rep.checks.push_back(upper("sts regret <= 1/sqrt(1-alpha)", rep.result,
                                       theory::sts_infinite_regret_bound(alpha)));
            if (c.epsilon > 0.0 && c.epsilon < 1.0) {
                rep.checks.push_back(approx("sts regret = published closed form", rep.result,
                                            theory::sts_infinite_regret_exact(alpha, c.epsilon)));
                rep.checks.push_back(approx("sts regret = conditional closed form", rep.result,
                                            theory::sts_infinite_regret_conditional(alpha, c.epsilon),
                                            true));
            }
            break;
        }
        case TheoremId::T4: {
            c.algo = Algo::STS;
            c.epsilon = theory::sts_theorem4_tolerance(alpha);
            rep.result = run_experiment(c);
            rep.checks.push_back(upper("sts regret <= sqrt(2/(1-alpha))", rep.result,
                                       theory::sts_theorem4_regret_bound(alpha)));
            break;
        }
        case TheoremId::T5: {
            const InfiniteBernoulli family{1.0, 1.0};
            c.family = family;
            c.algo = Algo::STS;
            c.epsilon = epsilon.value_or(0.2);
            c.horizon = AutoHorizon{1e-3};
            const auto inputs =
                theory::beta_bound_inputs(alpha, c.epsilon, family.prior_a, family.prior_b);
            rep.result = run_experiment(c);
            rep.checks.push_back(
                upper("noisy sts regret <= information-ratio bound", rep.result,
                      theory::sts_noisy_regret_bound(inputs)));
            break;
        }
    }
    rep.epsilon = c.epsilon;
    return rep;
}

bool separated_below(double a, double se_a, double b, double se_b, double k) {
    const double gap = b - a;
    return gap > 0.0 && gap >= k * std::sqrt(se_a * se_a + se_b * se_b);
}

CurveComparison compare_curves(const ExperimentConfig& config_ts, const ExperimentConfig& config_sts) {
    if (describe(config_ts.family) != describe(config_sts.family))
        throw std::invalid_argument("compared configs must share the environment family");
    if (resolve_horizon(config_ts) != resolve_horizon(config_sts))
        throw std::invalid_argument("compared configs must share the horizon");
    if (config_ts.alpha != config_sts.alpha || config_ts.seed != config_sts.seed ||
        config_ts.n_reps != config_sts.n_reps || config_ts.eval_mode != config_sts.eval_mode)
        throw std::invalid_argument("compared configs must share alpha, seed, n_reps and eval_mode");

    CurveComparison out{run_experiment(config_ts), run_experiment(config_sts), {}, {}};
    for (std::size_t t = 0; t < out.ts.horizon; ++t) {
        const double a = out.ts.per_period_mean[t], sa = out.ts.per_period_stderr[t];
        const double b = out.sts.per_period_mean[t], sb = out.sts.per_period_stderr[t];
        if (!out.first_sts_below && separated_below(b, sb, a, sa)) out.first_sts_below = t;
        if (!out.first_ts_below && separated_below(a, sa, b, sb)) out.first_ts_below = t;
    }
    return out;
}

}  // namespace sts
