#include <gtest/gtest.h>

#include <cmath>

#include "sts/agents.hpp"

namespace sts {

namespace {

AgentState degenerate_pair(double a, double b, Algo algo = Algo::TS, double eps = 0.0) {
    return AgentState(NormalBelief{{a, b}, {0.0, 0.0}, 1.0, 0}, algo, eps);
}

ParameterSample finite_sample(std::vector<double> values) {
    ParameterSample s;
    s.values = std::move(values);
    return s;
}

}  // namespace

TEST(Agents, TsPicksDegenerateArgmax) {
    Rng rng(1);
    const AgentState s = degenerate_pair(0.3, 0.9);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(select_ts(s, rng).chosen, 1u);
}

TEST(Agents, TsBreaksTiesBySmallestIndex) {
    Rng rng(2);
    const AgentState s = degenerate_pair(0.5, 0.5);
    EXPECT_EQ(select_ts(s, rng).chosen, 0u);
    EXPECT_EQ(greedy_action(finite_sample({0.1, 0.8, 0.8, 0.2})), 1u);
}

TEST(Agents, TsOnInfiniteDeterministicAlwaysTriesAFreshArm) {
    AgentState s(ExactValueBelief{true, {}}, Algo::TS);
    Rng rng(3);
    EXPECT_EQ(select_ts(s, rng).chosen, 0u);
    update(s.belief(), 0, Outcome{0.99});
    s.remember(0);
    update(s.belief(), 1, Outcome{0.2});
    s.remember(1);
    EXPECT_EQ(select_ts(s, rng).chosen, 2u);
}

TEST(Agents, StsReturnsEarliestSatisfyingHistoryAction) {
    // history values 0.7, 0.95 under the sample; candidate arm 2 at 1.0.
    const auto rec = satisficing_choice(finite_sample({0.7, 0.95, 1.0}), {0, 1}, 0.05);
    EXPECT_EQ(rec.chosen, 1u);
    EXPECT_TRUE(rec.satisficed);
    EXPECT_EQ(rec.tau_hat, 1u);
}

TEST(Agents, StsScansHistoryInFirstSelectionOrder) {
    // Both history actions qualify; the earlier-selected one wins even though
    // the other has a larger sampled mean and a smaller index.
    const auto rec = satisficing_choice(finite_sample({0.99, 0.98, 1.0}), {1, 0}, 0.05);
    EXPECT_EQ(rec.chosen, 1u);
    EXPECT_EQ(rec.tau_hat, 0u);
    EXPECT_EQ(rec.chosen, std::vector<ActionId>({1, 0})[*rec.tau_hat]);
}

TEST(Agents, StsWithoutQualifyingHistoryKeepsCandidate) {
    const auto rec = satisficing_choice(finite_sample({0.2, 0.3, 1.0}), {0, 1}, 0.05);
    EXPECT_EQ(rec.chosen, 2u);
    EXPECT_FALSE(rec.satisficed);
    EXPECT_FALSE(rec.tau_hat.has_value());
}

TEST(Agents, StsWithEmptyHistoryBehavesAsTs) {
    Rng a(4), b(4);
    AgentState ts(BetaBelief{false, 1, 1, std::vector<double>(10, 1.0), std::vector<double>(10, 1.0)}, Algo::TS);
    AgentState sts(BetaBelief{false, 1, 1, std::vector<double>(10, 1.0), std::vector<double>(10, 1.0)}, Algo::STS,
                   0.3);
    EXPECT_EQ(select_ts(ts, a).chosen, select_sts(sts, b).chosen);
}

TEST(Agents, ZeroToleranceStsIsPathwiseTs) {
    Rng env_rng(5);
    auto inst_a = draw_instance(FiniteUniformBernoulli{30}, env_rng);
    auto inst_b = inst_a;
    AgentState ts(make_prior_belief(inst_a), Algo::TS);
    AgentState sts(make_prior_belief(inst_b), Algo::STS, 0.0);
    Rng ra(6), rb(6), na(7), nb(7);
    for (int t = 0; t < 300; ++t) {
        const auto x = step(ts, inst_a, ra, na);
        const auto y = step(sts, inst_b, rb, nb);
        ASSERT_EQ(x.selection.chosen, y.selection.chosen) << "t=" << t;
    }
}

TEST(Agents, StsStopsSearchingOnInfiniteDeterministic) {
    Rng env_rng(8);
    auto inst = draw_instance(InfiniteDeterministic{}, env_rng);
    const double eps = 0.2;
    AgentState s(make_prior_belief(inst), Algo::STS, eps);
    Rng agent(9), noise(10);
    std::optional<ActionId> settled;
    for (int t = 0; t < 200; ++t) {
        const auto r = step(s, inst, agent, noise);
        if (settled) {
            EXPECT_EQ(r.selection.chosen, *settled);
            EXPECT_TRUE(r.selection.satisficed);
        } else if (inst.arm_mean(r.selection.chosen) >= 1.0 - eps) {
            settled = r.selection.chosen;
        } else {
            EXPECT_EQ(r.selection.chosen, s.history().size() - 1);
        }
    }
    ASSERT_TRUE(settled.has_value());
}

TEST(Agents, StepLearnsDeterministicArm) {
    EnvironmentInstance inst(FiniteUniformDeterministic{1}, {0.42}, 0.42);
    AgentState s(make_prior_belief(inst), Algo::TS);
    Rng a(11), n(12);
    const auto r = step(s, inst, a, n);
    EXPECT_EQ(r.selection.chosen, 0u);
    EXPECT_EQ(posterior_mean(s.belief(), 0), 0.42);
    EXPECT_EQ(s.history(), std::vector<ActionId>{0});
}

TEST(Agents, InfiniteTsNeverRepeats) {
    Rng env_rng(13);
    auto inst = draw_instance(InfiniteDeterministic{}, env_rng);
    AgentState s(make_prior_belief(inst), Algo::TS);
    Rng a(14), n(15);
    for (std::size_t t = 1; t <= 100; ++t) {
        step(s, inst, a, n);
        EXPECT_EQ(s.history().size(), t);
    }
}

TEST(Agents, SeededRunsAreReproducible) {
    auto run = [] {
        Rng env_rng(16);
        auto inst = draw_instance(FiniteGaussian{50}, env_rng);
        AgentState s(make_prior_belief(inst), Algo::STS, 0.5);
        Rng a(17), n(18);
        std::vector<ActionId> actions;
        for (int t = 0; t < 500; ++t) actions.push_back(step(s, inst, a, n).selection.chosen);
        return actions;
    };
    EXPECT_EQ(run(), run());
}

TEST(Agents, HistoryHasNoDuplicates) {
    AgentState s(NormalBelief{{0, 0, 0}, {1, 1, 1}, 1.0, 0}, Algo::TS);
    s.remember(2);
    s.remember(0);
    s.remember(2);
    EXPECT_EQ(s.history(), (std::vector<ActionId>{2, 0}));
    EXPECT_THROW(AgentState(NormalBelief{}, Algo::STS, -0.1), std::invalid_argument);
}

TEST(Agents, MatchingWithEmptyHistorySelectsNewAction) {
    AgentState s(ExactValueBelief{true, {}}, Algo::STS, 0.2);
    Rng rng(19);
    const auto f = matching_probabilities(s, 1000, rng);
    EXPECT_EQ(f.new_action, 1.0);
    EXPECT_TRUE(f.existing.empty());
}

TEST(Agents, MatchingOnInfiniteDeterministicIsFirstHit) {
    // Known values 0.5, 0.85, 0.9 with eps = 0.2: tau is the second arm.
    AgentState s(ExactValueBelief{true, {}}, Algo::STS, 0.2);
    for (ActionId a = 0; a < 3; ++a) {
        update(s.belief(), a, Outcome{std::vector<double>{0.5, 0.85, 0.9}[a]});
        s.remember(a);
    }
    Rng rng(20);
    const auto f = matching_probabilities(s, 500, rng);
    EXPECT_EQ(f.existing.at(0), 0.0);
    EXPECT_EQ(f.existing.at(1), 1.0);
    EXPECT_EQ(f.existing.at(2), 0.0);
    EXPECT_EQ(f.new_action, 0.0);
}

TEST(Agents, MatchingFrequenciesSumToOne) {
    AgentState s(BetaBelief{true, 1.0, 1.0, {}, {}}, Algo::STS, 0.1);
    for (ActionId a = 0; a < 4; ++a) {
        update(s.belief(), a, Outcome{a % 2 == 0 ? 1.0 : 0.0});
        s.remember(a);
    }
    Rng rng(21);
    const auto f = matching_probabilities(s, 10007, rng);
    double total = f.new_action;
    for (const auto& [a, p] : f.existing) total += p;
    EXPECT_NEAR(total, 1.0, 1.0 / 10007);
    EXPECT_THROW(matching_probabilities(s, 0, rng), std::invalid_argument);
}

TEST(Agents, ParseAlgo) {
    EXPECT_EQ(parse_algo("TS"), Algo::TS);
    EXPECT_EQ(parse_algo("sts"), Algo::STS);
    EXPECT_THROW(parse_algo("ucb"), std::invalid_argument);
}

}  // namespace sts
