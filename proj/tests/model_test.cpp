// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "support.hpp"

namespace ccra {
namespace {

using testing::Builder;
using testing::id;

std::vector<ErrorCode> codes_of(const InstanceDraft& d) {
    try {
        validate_instance(d);
    } catch (const ValidationError& e) {
        std::vector<ErrorCode> out;
        for (const auto& v : e.violations()) out.push_back(v.code);
        return out;
    }
    return {};
}

bool has_code(const InstanceDraft& d, ErrorCode code) {
    const auto codes = codes_of(d);
    return std::find(codes.begin(), codes.end(), code) != codes.end();
}

TEST(Validate, ExampleOneIsValid) {
    const Instance inst = testing::example1();
    const auto& st = inst.stats();
    EXPECT_EQ(st.n, 6u);
    EXPECT_EQ(st.m, 4u);
    EXPECT_EQ(st.t, 3u);
    EXPECT_EQ(st.max_out_degree, 2u);
    EXPECT_EQ(st.delegations(), st.max_out_degree);
    EXPECT_EQ(st.max_in_degree, 2u);
    EXPECT_EQ(st.longest_path, 2u);
    EXPECT_EQ(st.max_ballot_size, 2u);
}

TEST(Validate, SingleActiveVoter) {
    const Instance inst = Builder({"cstar", "c1"}, "cstar", 0).active("a", {"cstar"}).build();
    EXPECT_EQ(inst.stats().n, 1u);
    EXPECT_EQ(inst.stats().t, 1u);
    EXPECT_EQ(inst.stats().longest_path, 0u);
}

TEST(Validate, TwoCycle) {
    auto d = Builder({"cstar", "c1"}, "cstar", 0).passive("a", {{"b", 1}}).passive("b", {{"a", 1}}).draft();
    EXPECT_TRUE(has_code(d, ErrorCode::kCycleDetected));
}

TEST(Validate, BallotOnPassiveVoter) {
    auto d = Builder({"cstar", "c1"}, "cstar", 0).active("a", {"c1"}).passive("p", {{"a", 1}}).draft();
    d.voters[1].ballot = std::vector<std::string>{"c1"};
    EXPECT_TRUE(has_code(d, ErrorCode::kBallotOnPassiveVoter));
}

TEST(Validate, MissingBallot) {
    auto d = Builder({"cstar", "c1"}, "cstar", 0).active("a", {"c1"}).draft();
    d.voters[0].ballot.reset();
    EXPECT_TRUE(has_code(d, ErrorCode::kMissingBallotOnActiveVoter));
}

TEST(Validate, ParallelArc) {
    auto d = Builder({"cstar", "c1"}, "cstar", 0).active("a", {"c1"}).passive("p", {{"a", 1}, {"a", 2}}).draft();
    EXPECT_TRUE(has_code(d, ErrorCode::kParallelArc));
}

TEST(Validate, UnknownIds) {
    auto d = Builder({"cstar", "c1"}, "cstar", 0).active("a", {"c9"}).passive("p", {{"zz", 1}}).draft();
    const auto codes = codes_of(d);
    EXPECT_EQ(std::count(codes.begin(), codes.end(), ErrorCode::kUnknownId), 2);
    auto bad_pref = Builder({"cstar", "c1"}, "nobody", 0).active("a", {"c1"}).draft();
    EXPECT_TRUE(has_code(bad_pref, ErrorCode::kUnknownId));
}

TEST(Validate, EmptyBallot) {
    auto d = Builder({"cstar", "c1"}, "cstar", 0).active("a", {}).draft();
    EXPECT_TRUE(has_code(d, ErrorCode::kEmptyBallot));
}

TEST(Validate, SelfLoopAndDuplicates) {
    auto d = Builder({"cstar", "c1", "c1"}, "cstar", 0).active("a", {"c1"}).passive("p", {{"p", 1}}).draft();
    EXPECT_TRUE(has_code(d, ErrorCode::kSelfDelegation));
    EXPECT_TRUE(has_code(d, ErrorCode::kDuplicateName));
}

TEST(Validate, ReportsEveryViolation) {
    auto d = Builder({"cstar", "c1"}, "cstar", 0).active("a", {}).passive("b", {{"c", 1}}).passive("c", {{"b", 1}}).draft();
    const auto codes = codes_of(d);
    EXPECT_NE(std::find(codes.begin(), codes.end(), ErrorCode::kEmptyBallot), codes.end());
    EXPECT_NE(std::find(codes.begin(), codes.end(), ErrorCode::kCycleDetected), codes.end());
}

TEST(Validate, InfiniteCostIsRepresentable) {
    const Instance inst = Builder({"cstar", "c1"}, "cstar", 5).active("a", {"c1"}).passive("p", {{"a", kInfiniteCost}}).build();
    EXPECT_FALSE(is_finite(inst.arc(0).cost));
    EXPECT_EQ(add_cost(kInfiniteCost, 3), kInfiniteCost);
}

TEST(Validate, RoundTripThroughDraft) {
    const Instance inst = testing::example1();
    const Instance again = validate_instance(to_draft(inst));
    EXPECT_EQ(again.parts().arcs.size(), inst.num_arcs());
    EXPECT_EQ(tally(again), tally(inst));
}

TEST(Apply, ExampleOneRedirection) {
    const Instance inst = testing::example1();
    const std::vector<Redirection> s{testing::redirect(inst, "v5", "v3", "v6")};
    const Instance after = apply_redirections(inst, s);
    EXPECT_TRUE(after.find_arc(id(after, "v5"), id(after, "v6")));
    EXPECT_FALSE(after.find_arc(id(after, "v5"), id(after, "v3")));
    EXPECT_EQ(after.num_arcs(), inst.num_arcs());
    EXPECT_EQ(redirection_cost(inst, s), 1u);
}

TEST(Apply, EmptySetIsIdentity) {
    const Instance inst = testing::example1();
    const Instance after = apply_redirections(inst, {});
    EXPECT_EQ(to_draft(after).voters.size(), to_draft(inst).voters.size());
    for (ArcIndex a = 0; a < inst.num_arcs(); ++a) {
        EXPECT_EQ(after.arc(a).from, inst.arc(a).from);
        EXPECT_EQ(after.arc(a).to, inst.arc(a).to);
        EXPECT_EQ(after.arc(a).cost, inst.arc(a).cost);
    }
}

TEST(Apply, ChainCycleRejected) {
    const Instance inst = Builder({"cstar", "c1"}, "cstar", 5).active("c", {"c1"}).passive("b", {{"c", 1}}).passive("a", {{"b", 1}}).build();
    try {
        apply_redirections(inst, std::vector<Redirection>{testing::redirect(inst, "b", "c", "a")});
        FAIL() << "expected WouldCreateCycle";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kWouldCreateCycle);
    }
}

ErrorCode apply_error(const Instance& inst, std::vector<Redirection> s, BudgetCheck check = BudgetCheck::kIgnore) {
    try {
        apply_redirections(inst, s, check);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::kInvalidArgument;
}

TEST(Apply, Errors) {
    const Instance inst = testing::example1();
    EXPECT_EQ(apply_error(inst, {testing::redirect(inst, "v5", "v4", "v6")}), ErrorCode::kArcNotFound);
    EXPECT_EQ(apply_error(inst, {testing::redirect(inst, "v5", "v3", "v6"), testing::redirect(inst, "v5", "v3", "v4")}),
              ErrorCode::kDuplicateArcRedirect);
    EXPECT_EQ(apply_error(inst, {testing::redirect(inst, "v2", "v3", "v4")}), ErrorCode::kWouldCreateParallelArc);
    EXPECT_EQ(apply_error(inst, {testing::redirect(inst, "v2", "v3", "v3")}), ErrorCode::kInvalidRedirection);
    EXPECT_EQ(apply_error(inst, {testing::redirect(inst, "v2", "v3", "v2")}), ErrorCode::kWouldCreateCycle);
    EXPECT_EQ(apply_error(inst, {testing::redirect(inst, "v5", "v3", "v6"), testing::redirect(inst, "v1", "v6", "v4")},
                          BudgetCheck::kEnforce),
              ErrorCode::kBudgetExceeded);
    EXPECT_EQ(apply_error(inst, {{VoterId(40), VoterId(1), VoterId(2)}}), ErrorCode::kUnknownId);
}

TEST(Apply, SwappingTargetsIsNotParallel) {
    // v2 -> {v3, v4}: send v3's arc to v6 and v4's arc to v3 simultaneously.
    const Instance inst = testing::example1();
    const Instance after = apply_redirections(
        inst, std::vector<Redirection>{testing::redirect(inst, "v2", "v3", "v6"), testing::redirect(inst, "v2", "v4", "v3")});
    EXPECT_TRUE(after.find_arc(id(after, "v2"), id(after, "v6")));
    EXPECT_TRUE(after.find_arc(id(after, "v2"), id(after, "v3")));
}

TEST(Apply, PropertiesOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        GenConfig cfg;
        cfg.n = 7;
        cfg.m = 3;
        cfg.max_out_degree = 3;
        cfg.max_ballot_size = 2;
        cfg.max_cost = 4;
        cfg.seed = seed;
        const Instance inst = gen_random(cfg);
        Rng rng(seed * 7 + 1);
        std::vector<Redirection> s;
        for (ArcIndex a = 0; a < inst.num_arcs(); ++a) {
            if (rng.between(0, 2) != 0) continue;
            const auto target = VoterId(rng.between(0, inst.num_voters() - 1));
            s.push_back({inst.arc(a).from, inst.arc(a).to, target});
        }
        Instance after = inst;
        try {
            after = apply_redirections(inst, s);
        } catch (const Error&) {
            continue;
        }
        std::multiset<Cost> before_costs, after_costs;
        for (const auto& arc : inst.arcs()) before_costs.insert(arc.cost);
        for (const auto& arc : after.arcs()) after_costs.insert(arc.cost);
        EXPECT_EQ(before_costs, after_costs);
        EXPECT_EQ(after.num_arcs(), inst.num_arcs());
        EXPECT_EQ(after.stats().t, inst.stats().t);
        for (std::size_t v = 0; v < inst.num_voters(); ++v) {
            EXPECT_EQ(after.out_arcs(VoterId(v)).size(), inst.out_arcs(VoterId(v)).size());
        }
        EXPECT_NO_THROW(validate_instance(to_draft(after)));
    }
}

TEST(Instance, WithBudget) {
    const Instance inst = testing::example1();
    EXPECT_EQ(inst.with_budget(7).budget(), 7u);
    EXPECT_EQ(inst.budget(), 1u);
}

TEST(Ballot, SetOperations) {
    Ballot b({CandidateId(3), CandidateId(1), CandidateId(3)});
    EXPECT_EQ(b.size(), 2u);
    EXPECT_TRUE(b.contains(CandidateId(1)));
    EXPECT_FALSE(b.contains(CandidateId(2)));
    Ballot c({CandidateId(1)});
    EXPECT_TRUE(c.is_subset_of(b));
    EXPECT_TRUE(c.intersects(b));
    EXPECT_FALSE(Ballot({CandidateId(2)}).intersects(b));
}

}  // namespace
}  // namespace ccra
