// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Approximation scheme for out-degree <= 1 when, after preprocessing, exactly
// one active voter approves the preferred candidate and approves nothing else.
//
// All moved votes go to that voter. For a guess w of the most expensive arc
// used, arcs above w are dropped and each rival tree gets a budget from a
// geometric grid with ratio 1 + epsilon/3; the tree then gives up as many
// votes as its budget allows. The cheapest winning combination is returned.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ccra/model.hpp"
#include "ccra/preprocess.hpp"
#include "ccra/solution.hpp"
#include "ccra/solvers/tree_dp.hpp"

namespace ccra {

struct FptasOptions {
    std::uint64_t guess_limit = 100'000'000;
};

namespace detail {

struct SpecialSetting {
    VoterId star_root;
    std::vector<VoterId> rivals;
};

// Throws NotSpecialSetting unless `p` (already preprocessed) qualifies.
inline SpecialSetting special_setting(const Instance& p) {
    SpecialSetting s;
    bool found = false;
    for (VoterId r : p.active_voters()) {
        const Ballot& b = *p.ballot(r);
        if (!b.contains(p.preferred())) {
            s.rivals.push_back(r);
        } else if (b.size() == 1 && !found) {
            s.star_root = r;
            found = true;
        } else {
            throw Error(ErrorCode::kNotSpecialSetting, "preferred candidate is approved together with others");
        }
    }
    if (!found) throw Error(ErrorCode::kNotSpecialSetting, "no active voter approves only the preferred candidate");
    return s;
}

// floor((1 + eps/3)^p) for p between the grid ends, deduplicated.
inline std::vector<Cost> budget_grid(Cost w, std::size_t n, double epsilon) {
    if (w == 0) return {0};
    const double base = 1.0 + epsilon / 3.0;
    const double lo = epsilon * static_cast<double>(w) / (2.0 * static_cast<double>(n));
    const double hi = static_cast<double>(n) * static_cast<double>(w);
    const auto p_lo = static_cast<long>(std::floor(std::log(lo) / std::log(base))) - 1;
    const auto p_hi = static_cast<long>(std::ceil(std::log(hi) / std::log(base))) + 1;
    std::set<Cost> grid;
    for (long p = p_lo; p <= p_hi; ++p) grid.insert(static_cast<Cost>(std::floor(std::pow(base, static_cast<double>(p)))));
    return {grid.begin(), grid.end()};
}

}  // namespace detail

inline bool is_special_setting(const Instance& inst) {
    if (!inst.stats().single_delegation()) return false;
    try {
        detail::special_setting(add_virtual_actives(inst));
        return true;
    } catch (const Error&) {
        return false;
    }
}

inline SolverResult solve_fptas(const Instance& inst, double epsilon, const FptasOptions& options = {}) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw Error(ErrorCode::kInvalidEpsilon, "epsilon must lie in (0, 1]");
    }
    detail::require_single_delegation(inst);
    const Preprocessed pre = preprocess_with_map(inst);
    const Instance& p = pre.instance;
    const auto setting = detail::special_setting(p);
    if (auto r = detail::already_winning(inst, "preferred candidate already wins"); r.feasible()) return r;

    SolverResult result;
    const std::size_t r = setting.rivals.size();
    const std::uint64_t star_votes = tree_min_cost_arrays(p, setting.star_root).tree_votes;
    std::vector<VoteArrays> full(r);
    std::set<Cost> arc_costs;
    for (std::size_t i = 0; i < r; ++i) {
        full[i] = tree_min_cost_arrays(p, setting.rivals[i]);
        for (VoterId v : detail::tree_postorder(p, setting.rivals[i])) {
            if (v == setting.rivals[i]) continue;
            const Cost c = p.arc(p.out_arcs(v).front()).cost;
            if (is_finite(c)) arc_costs.insert(c);
        }
    }

    std::vector<std::int64_t> scores(p.num_candidates());
    auto wins = [&](const std::vector<std::size_t>& moved) {
        std::fill(scores.begin(), scores.end(), 0);
        std::int64_t star = static_cast<std::int64_t>(star_votes);
        for (std::size_t i = 0; i < r; ++i) {
            star += static_cast<std::int64_t>(moved[i]);
            const auto left = static_cast<std::int64_t>(full[i].tree_votes - moved[i]);
            for (CandidateId c : *p.ballot(setting.rivals[i])) scores[c.index()] += left;
        }
        return std::all_of(scores.begin(), scores.end(), [&](std::int64_t s) { return s < star; });
    };

    std::vector<std::size_t> most(r);
    for (std::size_t i = 0; i < r; ++i) most[i] = max_votes_under_budget(full[i], kInfiniteCost - 1).votes;
    if (!wins(most)) {
        result.note = "infeasible at any cost";
        return result;
    }

    Cost best_cost = kInfiniteCost;
    std::vector<ArcIndex> best_arcs;
    for (Cost w : arc_costs) {
        const auto grid = detail::budget_grid(w, inst.num_voters(), epsilon);
        // Grid budgets only grow, so a budget giving no more votes than the
        // previous one adds nothing; only distinct vote levels are kept.
        std::vector<std::vector<BudgetedVotes>> levels(r);
        std::uint64_t product = 1;
        for (std::size_t i = 0; i < r; ++i) {
            const VoteArrays capped = tree_min_cost_arrays(p, setting.rivals[i], w);
            for (Cost b : grid) {
                auto option = max_votes_under_budget(capped, b);
                if (levels[i].empty() || option.votes > levels[i].back().votes) levels[i].push_back(std::move(option));
            }
            if (product > options.guess_limit / levels[i].size()) {
                throw Error(ErrorCode::kGuessSpaceTooLarge,
                            "more than " + std::to_string(options.guess_limit) + " budget tuples");
            }
            product *= levels[i].size();
        }
        std::vector<std::size_t> moved(r, 0);
        std::vector<std::size_t> pick(r, 0);
        auto search = [&](auto&& self, std::size_t i, Cost cost) -> void {
            if (cost >= best_cost) return;
            if (i == r) {
                ++result.guesses_explored;
                if (wins(moved)) {
                    best_cost = cost;
                    best_arcs.clear();
                    for (std::size_t k = 0; k < r; ++k) {
                        const auto& arcs = levels[k][pick[k]].arcs;
                        best_arcs.insert(best_arcs.end(), arcs.begin(), arcs.end());
                    }
                }
                return;
            }
            for (std::size_t k = 0; k < levels[i].size(); ++k) {
                pick[i] = k;
                moved[i] = levels[i][k].votes;
                self(self, i + 1, add_cost(cost, levels[i][k].cost));
            }
            moved[i] = 0;
        };
        search(search, 0, 0);
    }

    if (!is_finite(best_cost)) {
        result.note = "no budget guess makes the preferred candidate win";
        return result;
    }
    if (best_cost > inst.budget()) {
        result.note = "approximate cost exceeds budget";
        return result;
    }
    std::vector<Redirection> redirections;
    for (ArcIndex a : best_arcs) redirections.push_back({p.arc(a).from, p.arc(a).to, setting.star_root});
    result.solution = finalize_solution(inst, map_to_original(pre, inst, redirections));
    return result;
}

}  // namespace ccra
