#include "sts/agents.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace sts {

std::string to_string(Algo algo) { return algo == Algo::TS ? "ts" : "sts"; }

Algo parse_algo(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "ts") return Algo::TS;
    if (lower == "sts") return Algo::STS;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected ts or sts)");
}

AgentState::AgentState(BeliefModel belief, Algo algo, double epsilon)
    : belief_(std::move(belief)), algo_(algo), epsilon_(epsilon) {
    if (!(epsilon_ >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
}

void AgentState::remember(ActionId a) {
    if (in_history(a)) return;
    if (a >= seen_.size()) seen_.resize(a + 1, false);
    seen_[a] = true;
    history_.push_back(a);
}

ActionId greedy_action(const ParameterSample& sample) {
    ActionId best = 0;
    double best_value = sample.values.empty() ? -std::numeric_limits<double>::infinity()
                                              : sample.values.front();
    for (ActionId a = 1; a < sample.values.size(); ++a) {
        if (sample.values[a] > best_value) {
            best_value = sample.values[a];
            best = a;
        }
    }
    // Untouched arms have larger indices than every tracked arm, so they only
    // win when strictly better.
    if (sample.infinite && (sample.values.empty() || sample.untouched_sup > best_value))
        return sample.fresh_action();
    return best;
}

SelectionRecord satisficing_choice(const ParameterSample& sample,
                                   const std::vector<ActionId>& history, double epsilon) {
    SelectionRecord rec;
    rec.chosen = greedy_action(sample);
    const double target = mean_under_sample(sample, rec.chosen);
    for (std::size_t k = 0; k < history.size(); ++k) {
        if (mean_under_sample(sample, history[k]) + epsilon >= target) {
            rec.chosen = history[k];
            rec.satisficed = true;
            rec.tau_hat = k;
            break;
        }
    }
    return rec;
}

SelectionRecord select_ts(const AgentState& state, Rng& rng) {
    const ParameterSample s = sample(state.belief(), rng);
    return SelectionRecord{greedy_action(s), false, std::nullopt};
}

SelectionRecord select_sts(const AgentState& state, Rng& rng) {
    const ParameterSample s = sample(state.belief(), rng);
    return satisficing_choice(s, state.history(), state.epsilon());
}

SelectionRecord select(const AgentState& state, Rng& rng) {
    return state.algo() == Algo::TS ? select_ts(state, rng) : select_sts(state, rng);
}

StepResult step(AgentState& state, EnvironmentInstance& instance, Rng& agent_rng, Rng& noise_rng) {
    StepResult r;
    r.selection = select(state, agent_rng);
    r.outcome = instance.observe(r.selection.chosen, noise_rng);
    update(state.belief(), r.selection.chosen, r.outcome);
    state.remember(r.selection.chosen);
    return r;
}

MatchingFrequencies matching_probabilities(const AgentState& state, std::size_t n_samples, Rng& rng) {
    if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
    MatchingFrequencies out;
    out.n_samples = n_samples;
    for (ActionId a : state.history()) out.existing[a] = 0.0;
    std::size_t fresh = 0;
    std::map<ActionId, std::size_t> counts;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const SelectionRecord rec = select_sts(state, rng);
        if (state.in_history(rec.chosen))
            ++counts[rec.chosen];
        else
            ++fresh;
    }
    const double n = static_cast<double>(n_samples);
    for (const auto& [a, c] : counts) out.existing[a] = static_cast<double>(c) / n;
    out.new_action = static_cast<double>(fresh) / n;
    return out;
}

}  // namespace sts
