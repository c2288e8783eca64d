// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "support.hpp"

namespace ccra {
namespace {

using testing::Builder;

Ballot b(std::initializer_list<int> ids) {
    std::vector<CandidateId> out;
    for (int i : ids) out.emplace_back(i);
    return Ballot(out);
}

TEST(RuleUnion, Examples) {
    const std::vector<Ballot> in{b({1, 2}), b({2, 3})};
    EXPECT_EQ(rule_union(in), b({1, 2, 3}));
    const std::vector<Ballot> one{b({1})};
    EXPECT_EQ(rule_union(one), b({1}));
}

TEST(RuleApproval, Examples) {
    const std::vector<Ballot> one{b({1})};
    EXPECT_EQ(rule_approval(one), b({1}));
    const std::vector<Ballot> tie{b({1}), b({1, 2}), b({2})};
    EXPECT_EQ(rule_approval(tie), b({1, 2}));
    const std::vector<Ballot> clear{b({1, 2}), b({1}), b({3})};
    EXPECT_EQ(rule_approval(clear), b({1}));
}

TEST(RuleGreedyMrc, Examples) {
    const std::vector<Ballot> one{b({1})};
    EXPECT_EQ(rule_greedy_mrc(one), b({1}));
    const std::vector<Ballot> two_rounds{b({1}), b({1, 2}), b({3})};
    EXPECT_EQ(rule_greedy_mrc(two_rounds), b({1, 3}));
    const std::vector<Ballot> together{b({1, 2}), b({1, 2})};
    EXPECT_EQ(rule_greedy_mrc(together), b({1, 2}));
}

TEST(Rules, MultisetInputsCountTwice) {
    const std::vector<Ballot> in{b({1}), b({1}), b({2, 3})};
    EXPECT_EQ(rule_approval(in), b({1}));
    EXPECT_EQ(rule_greedy_mrc(in), b({1, 2, 3}));
}

TEST(Rules, EmptyInput) {
    for (auto rule : {UnravelRule::kUnion, UnravelRule::kApproval, UnravelRule::kGreedyMrc}) {
        try {
            (void)apply_unravel_rule(rule, std::span<const Ballot>{});
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
        }
        const std::vector<Ballot> with_empty{b({1}), Ballot{}};
        EXPECT_THROW((void)apply_unravel_rule(rule, with_empty), Error);
    }
}

TEST(Rules, Names) {
    for (auto rule : {UnravelRule::kUnion, UnravelRule::kApproval, UnravelRule::kGreedyMrc}) {
        EXPECT_EQ(parse_rule(to_string(rule)), rule);
    }
    EXPECT_EQ(to_string(UnravelRule::kGreedyMrc), "greedy_mrc");
    EXPECT_FALSE(parse_rule("borda"));
}

TEST(Unravel, ExampleOne) {
    const Instance inst = testing::example1();
    const auto profile = unravel(inst);
    using S = std::set<std::string>;
    EXPECT_EQ(testing::names(inst, profile.of(testing::id(inst, "v2"))), (S{"c1", "c2", "cstar"}));
    EXPECT_EQ(testing::names(inst, profile.of(testing::id(inst, "v5"))), (S{"c1", "c2"}));
    EXPECT_EQ(testing::names(inst, profile.of(testing::id(inst, "v1"))), (S{"c1", "c2", "c3", "cstar"}));
}

TEST(Unravel, DelegateBallotsOfV2) {
    const Instance inst = testing::example1();
    const std::vector<Ballot> in{*inst.ballot(testing::id(inst, "v3")), *inst.ballot(testing::id(inst, "v4"))};
    EXPECT_EQ(testing::names(inst, rule_union(in)), (std::set<std::string>{"c1", "c2", "cstar"}));
}

TEST(Unravel, AllActive) {
    const Instance inst = Builder({"cstar", "c1", "c2"}, "cstar", 0).active("a", {"c1"}).active("b", {"c2", "cstar"}).build();
    const auto profile = unravel(inst);
    EXPECT_EQ(profile.of(VoterId(0)), *inst.ballot(VoterId(0)));
    EXPECT_EQ(profile.of(VoterId(1)), *inst.ballot(VoterId(1)));
}

TEST(Unravel, ChainUnderEveryRule) {
    for (auto rule : {UnravelRule::kUnion, UnravelRule::kApproval, UnravelRule::kGreedyMrc}) {
        const Instance inst =
            Builder({"cstar", "c1"}, "cstar", 0, rule).active("a", {"c1"}).passive("p1", {{"a", 1}}).passive("p2", {{"p1", 1}}).build();
        const auto profile = unravel(inst);
        for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(testing::names(inst, profile.of(VoterId(v))), std::set<std::string>{"c1"});
    }
}

TEST(Unravel, RulesDifferOnSharedDelegates) {
    // p delegates to x({c1}), y({c1}) and z({c2}).
    auto build = [](UnravelRule rule) {
        return Builder({"cstar", "c1", "c2"}, "cstar", 0, rule)
            .active("x", {"c1"})
            .active("y", {"c1"})
            .active("z", {"c2"})
            .passive("p", {{"x", 1}, {"y", 1}, {"z", 1}})
            .build();
    };
    using S = std::set<std::string>;
    auto resolved = [&build](UnravelRule rule) {
        const Instance inst = build(rule);
        return testing::names(inst, unravel(inst).of(VoterId(3)));
    };
    EXPECT_EQ(resolved(UnravelRule::kUnion), (S{"c1", "c2"}));
    EXPECT_EQ(resolved(UnravelRule::kApproval), (S{"c1"}));
    EXPECT_EQ(resolved(UnravelRule::kGreedyMrc), (S{"c1", "c2"}));
}

GenConfig dag_config(std::uint64_t seed, UnravelRule rule) {
    GenConfig cfg;
    cfg.n = 3 + seed % 8;
    cfg.m = 2 + seed % 4;
    cfg.max_out_degree = 1 + seed % 4;
    cfg.max_ballot_size = 1 + seed % 3;
    cfg.max_cost = 3;
    cfg.seed = seed;
    cfg.rule = rule;
    return cfg;
}

TEST(UnravelProperty, MatchesNaiveResolution) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        for (auto rule : {UnravelRule::kUnion, UnravelRule::kApproval, UnravelRule::kGreedyMrc}) {
            const Instance inst = gen_random(dag_config(seed, rule));
            const auto profile = unravel(inst);
            const auto naive = testing::naive_unravel(inst);
            for (std::size_t v = 0; v < inst.num_voters(); ++v) {
                ASSERT_EQ(testing::to_naive(profile.resolved[v]), naive[v]) << "seed " << seed << " voter " << v;
            }
        }
    }
}

TEST(UnravelProperty, UnionIsReachableActives) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = gen_random(dag_config(seed, UnravelRule::kUnion));
        const auto profile = unravel(inst);
        const auto reach = testing::reachable_actives(inst);
        for (std::size_t v = 0; v < inst.num_voters(); ++v) {
            testing::NaiveBallot expected;
            for (auto a : reach[v]) {
                const auto nb = testing::to_naive(*inst.ballot(VoterId(a)));
                expected.insert(nb.begin(), nb.end());
            }
            ASSERT_EQ(testing::to_naive(profile.resolved[v]), expected);
        }
    }
}

TEST(UnravelProperty, SingleDelegationCollapse) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        GenConfig cfg = dag_config(seed, UnravelRule::kUnion);
        cfg.max_out_degree = 1;
        const InstanceDraft d = gen_random_draft(cfg);
        std::vector<UnraveledProfile> profiles;
        for (auto rule : {UnravelRule::kUnion, UnravelRule::kApproval, UnravelRule::kGreedyMrc}) {
            InstanceDraft copy = d;
            copy.rule = rule;
            profiles.push_back(unravel(validate_instance(copy)));
        }
        EXPECT_EQ(profiles[0], profiles[1]);
        EXPECT_EQ(profiles[0], profiles[2]);
    }
}

TEST(RuleProperty, ContainmentAndCover) {
    Rng rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = rng.between(1, 6);
        std::vector<Ballot> in(rng.between(1, 6));
        for (auto& ballot : in) {
            std::vector<CandidateId> ids;
            for (auto c : rng.sample(m, rng.between(1, m))) ids.emplace_back(c);
            ballot = Ballot(ids);
        }
        const Ballot u = rule_union(in);
        const Ballot a = rule_approval(in);
        const Ballot g = rule_greedy_mrc(in);
        EXPECT_TRUE(a.is_subset_of(u));
        EXPECT_TRUE(g.is_subset_of(u));
        EXPECT_TRUE(a.is_subset_of(g));
        for (const auto& ballot : in) EXPECT_TRUE(ballot.intersects(g));
        EXPECT_FALSE(a.empty());
    }
}

TEST(ProfileEvaluator, MatchesUnravel) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = gen_random(dag_config(seed, UnravelRule::kGreedyMrc));
        ProfileEvaluator eval(inst);
        ASSERT_TRUE(eval.evaluate_original());
        const auto profile = unravel(inst);
        for (std::size_t v = 0; v < inst.num_voters(); ++v) EXPECT_EQ(eval.resolved(VoterId(v)), profile.resolved[v]);
        EXPECT_EQ(eval.preferred_is_unique_winner(), is_unique_winner(tally(inst), inst.preferred()));
    }
}

TEST(ProfileEvaluator, RejectsCycle) {
    const Instance inst =
        Builder({"cstar", "c1"}, "cstar", 0).active("a", {"c1"}).passive("p", {{"a", 1}}).passive("q", {{"p", 1}}).build();
    ProfileEvaluator eval(inst);
    // p -> q, q -> p
    const std::vector<VoterId> heads{testing::id(inst, "q"), testing::id(inst, "p")};
    EXPECT_FALSE(eval.evaluate(heads));
}

TEST(Unravel, Deterministic) {
    const Instance inst = gen_random(dag_config(17, UnravelRule::kGreedyMrc));
    EXPECT_EQ(unravel(inst), unravel(inst));
}

}  // namespace
}  // namespace ccra
