// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ccra/model.hpp"
#include "ccra/tally.hpp"

namespace ccra {

struct Solution {
    std::vector<Redirection> redirections;  // sorted by (from, to)
    Cost total_cost = 0;
    ScoreBoard scores_after;

    [[nodiscard]] std::size_t num_redirections() const { return redirections.size(); }
};

struct SolverResult {
    std::optional<Solution> solution;  // absent: no redirection set within budget works
    std::uint64_t guesses_explored = 0;
    std::string note;

    [[nodiscard]] bool feasible() const { return solution.has_value(); }
};

// Applies the redirections to `inst` and records the resulting scores.
[[nodiscard]] inline Solution finalize_solution(const Instance& inst, std::vector<Redirection> redirections) {
    std::sort(redirections.begin(), redirections.end());
    Solution s;
    s.total_cost = redirection_cost(inst, redirections);
    Instance after = apply_redirections(inst, redirections);
    s.scores_after = tally(after);
    s.redirections = std::move(redirections);
    return s;
}

struct SolutionCheck {
    bool applies = false;
    bool cost_matches = false;
    bool within_budget = false;
    bool preferred_unique_winner = false;
    std::string error;

    [[nodiscard]] bool ok() const { return applies && cost_matches && within_budget && preferred_unique_winner; }
};

// Re-applies, re-unravels and re-tallies a solution from scratch.
[[nodiscard]] inline SolutionCheck verify_solution(const Instance& inst, const Solution& s) {
    SolutionCheck check;
    try {
        Instance after = apply_redirections(inst, s.redirections);
        check.applies = true;
        const Cost cost = redirection_cost(inst, s.redirections);
        check.cost_matches = cost == s.total_cost;
        check.within_budget = cost <= inst.budget();
        check.preferred_unique_winner = is_unique_winner(tally(after), inst.preferred());
    } catch (const Error& e) {
        check.error = e.what();
    }
    return check;
}

}  // namespace ccra
