// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exhaustive search over redirection sets. This is the ground truth the
// other solvers are tested against, so it deliberately does not normalize
// redirect targets (unless a whitelist is given) and handles any out-degree.

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ccra/model.hpp"
#include "ccra/solution.hpp"
#include "ccra/unravel.hpp"

namespace ccra {

struct BruteForceOptions {
    // Restricts the new targets of redirected arcs.
    std::optional<std::vector<VoterId>> target_whitelist;
    // Upper bound on the number of redirection sets that may need evaluating.
    std::uint64_t count_limit = 100'000'000;
    // Extra feasibility test on a candidate redirection set.
    std::function<bool(std::span<const Redirection>)> admissible;
};

// Minimum-cost redirection set within budget, over all sets that keep the
// graph acyclic and free of parallel arcs. Among minimum-cost sets the
// lexicographically smallest (from, to, new_to) list is returned.
inline SolverResult solve_brute_force(const Instance& inst, const BruteForceOptions& options = {}) {
    const std::size_t n = inst.num_voters();

    std::vector<ArcIndex> arcs;
    for (ArcIndex a = 0; a < inst.num_arcs(); ++a) {
        if (is_finite(inst.arc(a).cost) && inst.arc(a).cost <= inst.budget()) arcs.push_back(a);
    }
    std::sort(arcs.begin(), arcs.end(), [&](ArcIndex x, ArcIndex y) {
        return std::pair(inst.arc(x).from, inst.arc(x).to) < std::pair(inst.arc(y).from, inst.arc(y).to);
    });
    if (arcs.size() > 62) throw Error(ErrorCode::kInstanceTooLarge, "too many redirectable arcs to enumerate");

    std::vector<char> allowed(n, 1);
    if (options.target_whitelist) {
        std::fill(allowed.begin(), allowed.end(), 0);
        for (VoterId v : *options.target_whitelist) {
            if (v.index() >= n) throw Error(ErrorCode::kUnknownId, "whitelisted voter out of range");
            allowed[v.index()] = 1;
        }
    }
    std::vector<std::vector<VoterId>> targets(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const Arc& arc = inst.arc(arcs[i]);
        for (std::size_t w = 0; w < n; ++w) {
            if (allowed[w] && w != arc.from.index() && w != arc.to.index()) targets[i].emplace_back(w);
        }
    }

    struct Subset {
        Cost cost;
        std::vector<std::uint8_t> members;  // positions in `arcs`
    };
    std::vector<Subset> subsets;
    std::uint64_t work = 0;
    std::vector<std::uint8_t> current;
    constexpr std::size_t kMaxStoredSubsets = std::size_t{1} << 23;
    auto over_limit = [&] { return work > options.count_limit || subsets.size() > kMaxStoredSubsets; };
    // Depth-first enumeration of every affordable subset, weighted by the
    // number of target assignments it spans.
    auto enumerate = [&](auto&& self, std::size_t next, Cost cost, std::uint64_t combos) -> void {
        if (over_limit()) return;
        subsets.push_back({cost, current});
        work += combos;
        for (std::size_t i = next; i < arcs.size(); ++i) {
            if (targets[i].empty()) continue;
            const Cost c = add_cost(cost, inst.arc(arcs[i]).cost);
            if (c > inst.budget()) continue;
            std::uint64_t more = combos;
            if (more > options.count_limit / targets[i].size() + 1) {
                more = options.count_limit + 1;
            } else {
                more *= targets[i].size();
            }
            current.push_back(static_cast<std::uint8_t>(i));
            self(self, i + 1, c, more);
            current.pop_back();
        }
    };
    enumerate(enumerate, 0, 0, 1);
    if (over_limit()) {
        throw Error(ErrorCode::kInstanceTooLarge, "enumeration exceeds the configured bound of " +
                                                      std::to_string(options.count_limit) + " redirection sets");
    }
    std::stable_sort(subsets.begin(), subsets.end(), [](const Subset& x, const Subset& y) {
        if (x.cost != y.cost) return x.cost < y.cost;
        return x.members < y.members;
    });

    SolverResult result;
    ProfileEvaluator eval(inst);
    std::vector<VoterId> heads;
    for (const auto& arc : inst.arcs()) heads.push_back(arc.to);
    const std::vector<VoterId> original_heads = heads;

    auto no_parallel = [&](const Subset& s) {
        for (auto pos : s.members) {
            const VoterId from = inst.arc(arcs[pos]).from;
            auto outs = inst.out_arcs(from);
            for (std::size_t i = 0; i < outs.size(); ++i) {
                for (std::size_t j = i + 1; j < outs.size(); ++j) {
                    if (heads[outs[i]] == heads[outs[j]]) return false;
                }
            }
        }
        return true;
    };

    std::optional<std::vector<Redirection>> best;
    Cost best_cost = kInfiniteCost;
    std::vector<std::size_t> choice;
    for (const Subset& s : subsets) {
        if (best && s.cost > best_cost) break;
        choice.assign(s.members.size(), 0);
        while (true) {
            for (std::size_t k = 0; k < s.members.size(); ++k) {
                heads[arcs[s.members[k]]] = targets[s.members[k]][choice[k]];
            }
            ++result.guesses_explored;
            if (no_parallel(s) && eval.evaluate(heads) && eval.preferred_is_unique_winner()) {
                std::vector<Redirection> key;
                for (std::size_t k = 0; k < s.members.size(); ++k) {
                    const Arc& arc = inst.arc(arcs[s.members[k]]);
                    key.push_back({arc.from, arc.to, targets[s.members[k]][choice[k]]});
                }
                if (!options.admissible || options.admissible(key)) {
                    if (!best || key < *best) {
                        best = std::move(key);
                        best_cost = s.cost;
                    }
                    break;  // odometer order is lexicographic, later choices are larger
                }
            }
            std::size_t k = s.members.size();
            while (k > 0) {
                --k;
                if (++choice[k] < targets[s.members[k]].size()) break;
                choice[k] = 0;
                if (k == 0) {
                    k = s.members.size() + 1;
                    break;
                }
            }
            if (s.members.empty() || k == s.members.size() + 1) break;
        }
        for (auto pos : s.members) heads[arcs[pos]] = original_heads[arcs[pos]];
    }
    if (best) result.solution = finalize_solution(inst, std::move(*best));
    return result;
}

}  // namespace ccra
