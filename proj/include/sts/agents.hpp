#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sts/env.hpp"
#include "sts/posterior.hpp"
#include "sts/rng.hpp"

namespace sts {

enum class Algo { TS, STS };

std::string to_string(Algo algo);
/// Accepts "ts" / "sts" (case-insensitive). Throws std::invalid_argument.
Algo parse_algo(const std::string& name);

class AgentState {
public:
    AgentState(BeliefModel belief, Algo algo, double epsilon = 0.0);

    const BeliefModel& belief() const { return belief_; }
    BeliefModel& belief() { return belief_; }
    Algo algo() const { return algo_; }
    double epsilon() const { return epsilon_; }

    /// Distinct actions in order of first selection.
    const std::vector<ActionId>& history() const { return history_; }
    bool in_history(ActionId a) const { return a < seen_.size() && seen_[a]; }
    void remember(ActionId a);

private:
    BeliefModel belief_;
    Algo algo_;
    double epsilon_;
    std::vector<ActionId> history_;
    std::vector<bool> seen_;
};

struct SelectionRecord {
    ActionId chosen = 0;
    bool satisficed = false;
    /// Position in history() of the re-selected action when satisficed.
    std::optional<std::size_t> tau_hat;
};

/// argmax of the sampled means; ties go to the smallest index. For infinite
/// families the untouched block is represented by its lowest index.
ActionId greedy_action(const ParameterSample& sample);

/// STS steps 2-4 applied to a given sample. With epsilon = 0 and no ties this
/// reduces to greedy_action.
SelectionRecord satisficing_choice(const ParameterSample& sample,
                                   const std::vector<ActionId>& history, double epsilon);

SelectionRecord select_ts(const AgentState& state, Rng& rng);
SelectionRecord select_sts(const AgentState& state, Rng& rng);
SelectionRecord select(const AgentState& state, Rng& rng);

struct StepResult {
    SelectionRecord selection;
    Outcome outcome;
};

/// One select -> observe -> update round. `agent_rng` drives posterior
/// sampling, `noise_rng` drives observation noise.
StepResult step(AgentState& state, EnvironmentInstance& instance, Rng& agent_rng, Rng& noise_rng);

struct MatchingFrequencies {
    std::map<ActionId, double> existing;
    double new_action = 0.0;
    std::size_t n_samples = 0;
};

/// Empirical selection frequencies of STS under a frozen belief.
MatchingFrequencies matching_probabilities(const AgentState& state, std::size_t n_samples, Rng& rng);

}  // namespace sts
