// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact solver for out-degree <= 1 with arbitrary approval sets, polynomial
// for a fixed number of active voters after preprocessing.
//
// Votes leaving one tree can end up in any of the other trees. For every tree
// the solver tabulates, per vector d of votes sent to each other root, the
// cheapest arc set realizing exactly d. A guess picks one vector per tree;
// the final vote of every root is then known and the scores follow directly.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "ccra/model.hpp"
#include "ccra/preprocess.hpp"
#include "ccra/solution.hpp"
#include "ccra/solvers/tree_dp.hpp"

namespace ccra {

struct XpOptions {
    std::uint64_t guess_limit = 100'000'000;
};

// Bundle multisets are stored as sorted (descending) vectors of positive sizes.
struct MultiTargetTable {
    VoterId root;
    std::size_t bundles = 0;
    std::uint64_t tree_votes = 0;
    // Cheapest arc set moving out exactly these bundles, each to its own target.
    std::map<std::vector<std::uint32_t>, Cost> exact;
    // Cheapest arc set whose bundles dominate the key. Defined for every key
    // with at most `bundles` parts and total at most the movable votes.
    std::map<std::vector<std::uint32_t>, Cost> at_least;
};

namespace detail {

struct DistributionCell {
    Cost cost = kInfiniteCost;
    std::vector<std::pair<ArcIndex, std::uint32_t>> witness;  // (arc, target slot)
};
using DistributionTable = std::map<std::vector<std::uint32_t>, DistributionCell>;

inline void offer(DistributionTable& table, std::vector<std::uint32_t> key, Cost cost,
                  const std::vector<std::pair<ArcIndex, std::uint32_t>>& w1,
                  const std::vector<std::pair<ArcIndex, std::uint32_t>>& w2, std::uint64_t limit) {
    auto [it, inserted] = table.try_emplace(std::move(key));
    if (cost < it->second.cost) {
        it->second.cost = cost;
        it->second.witness = w1;
        it->second.witness.insert(it->second.witness.end(), w2.begin(), w2.end());
    }
    if (inserted && table.size() > limit) {
        throw Error(ErrorCode::kGuessSpaceTooLarge,
                    "vote distribution table exceeds the guess limit of " + std::to_string(limit));
    }
}

// Exact vote distributions of the tree of `root` over `slots` labelled
// targets. `skip_slot` (the tree's own slot) never receives votes.
inline DistributionTable distribution_table(const Instance& inst, VoterId root, std::size_t slots,
                                            std::optional<std::size_t> skip_slot, std::uint64_t limit) {
    require_single_delegation(inst);
    if (root.index() >= inst.num_voters() || !inst.is_active(root)) {
        throw Error(ErrorCode::kNotActiveRoot, "tree root must be an active voter");
    }
    const auto order = tree_postorder(inst, root);
    std::vector<std::uint64_t> size(inst.num_voters(), 0);
    std::vector<DistributionTable> up(inst.num_voters());
    const std::vector<std::uint32_t> zero(slots, 0);

    for (VoterId v : order) {
        DistributionTable f;
        f[zero] = {0, {}};
        size[v.index()] = vote_weight(inst, v);
        for (ArcIndex in : inst.in_arcs(v)) {
            const VoterId child = inst.arc(in).from;
            DistributionTable merged;
            for (const auto& [d1, c1] : f) {
                for (const auto& [d2, c2] : up[child.index()]) {
                    std::vector<std::uint32_t> d = d1;
                    for (std::size_t s = 0; s < slots; ++s) d[s] += d2[s];
                    offer(merged, std::move(d), add_cost(c1.cost, c2.cost), c1.witness, c2.witness, limit);
                }
            }
            f = std::move(merged);
            size[v.index()] += size[child.index()];
            up[child.index()].clear();
        }
        if (v == root) return f;

        const ArcIndex arc = inst.out_arcs(v).front();
        const Cost arc_cost = inst.arc(arc).cost;
        DistributionTable g = f;
        if (is_finite(arc_cost)) {
            for (const auto& [d, cell] : f) {
                std::uint64_t moved = 0;
                for (auto x : d) moved += x;
                const std::uint64_t rest = size[v.index()] - moved;
                if (rest == 0) continue;
                for (std::size_t s = 0; s < slots; ++s) {
                    if (skip_slot && *skip_slot == s) continue;
                    std::vector<std::uint32_t> key = d;
                    key[s] += static_cast<std::uint32_t>(rest);
                    offer(g, std::move(key), add_cost(cell.cost, arc_cost), cell.witness,
                          {{arc, static_cast<std::uint32_t>(s)}}, limit);
                }
            }
        }
        up[v.index()] = std::move(g);
    }
    return {};
}

[[nodiscard]] inline std::vector<std::uint32_t> to_multiset(std::vector<std::uint32_t> d) {
    std::sort(d.begin(), d.end(), std::greater<>());
    while (!d.empty() && d.back() == 0) d.pop_back();
    return d;
}

[[nodiscard]] inline bool dominates(const std::vector<std::uint32_t>& big, const std::vector<std::uint32_t>& small) {
    if (big.size() < small.size()) return false;
    for (std::size_t i = 0; i < small.size(); ++i) {
        if (big[i] < small[i]) return false;
    }
    return true;
}

// All descending vectors with at most `parts` positive entries summing to at most `total`.
inline void partitions(std::size_t parts, std::uint32_t total, std::uint32_t cap, std::vector<std::uint32_t>& cur,
                       std::vector<std::vector<std::uint32_t>>& out) {
    out.push_back(cur);
    if (cur.size() == parts) return;
    for (std::uint32_t x = std::min(total, cap); x >= 1; --x) {
        cur.push_back(x);
        partitions(parts, total - x, x, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

inline MultiTargetTable multi_target_table(const Instance& inst, VoterId root, std::size_t bundles,
                                           std::uint64_t limit = 100'000'000) {
    MultiTargetTable table;
    table.root = root;
    table.bundles = bundles;
    const auto dist = detail::distribution_table(inst, root, bundles, std::nullopt, limit);
    for (const auto& [d, cell] : dist) {
        auto key = detail::to_multiset(d);
        auto [it, inserted] = table.exact.try_emplace(key, cell.cost);
        if (!inserted) it->second = std::min(it->second, cell.cost);
    }
    for (VoterId v : detail::tree_postorder(inst, root)) table.tree_votes += detail::vote_weight(inst, v);
    const auto movable = static_cast<std::uint32_t>(table.tree_votes - detail::vote_weight(inst, root));

    std::vector<std::vector<std::uint32_t>> keys;
    std::vector<std::uint32_t> cur;
    detail::partitions(bundles, movable, movable, cur, keys);
    for (const auto& key : keys) {
        Cost best = kInfiniteCost;
        for (const auto& [s, c] : table.exact) {
            if (c < best && detail::dominates(s, key)) best = c;
        }
        table.at_least[key] = best;
    }
    return table;
}

inline SolverResult solve_xp_active(const Instance& inst, const XpOptions& options = {}) {
    detail::require_single_delegation(inst);
    if (auto r = detail::already_winning(inst, "preferred candidate already wins"); r.feasible()) return r;

    const Preprocessed pre = preprocess_with_map(inst);
    const Instance& p = pre.instance;
    const auto roots = p.active_voters();
    const std::size_t t = roots.size();
    SolverResult result;

    std::vector<std::uint64_t> tree_votes(t, 0);
    std::vector<std::vector<std::pair<std::vector<std::uint32_t>, const detail::DistributionCell*>>> lists(t);
    std::vector<detail::DistributionTable> tables;
    tables.reserve(t);
    std::uint64_t product = 1;
    for (std::size_t i = 0; i < t; ++i) {
        for (VoterId v : detail::tree_postorder(p, roots[i])) tree_votes[i] += detail::vote_weight(p, v);
        tables.push_back(detail::distribution_table(p, roots[i], t, i, options.guess_limit));
        for (const auto& [d, cell] : tables.back()) {
            if (is_finite(cell.cost) && cell.cost <= p.budget()) lists[i].emplace_back(d, &cell);
        }
        if (product > options.guess_limit / lists[i].size()) {
            throw Error(ErrorCode::kGuessSpaceTooLarge,
                        "more than " + std::to_string(options.guess_limit) + " guesses over " +
                            std::to_string(t) + " trees");
        }
        product *= lists[i].size();
    }

    const CandidateId star = p.preferred();
    std::vector<std::int64_t> votes(t);
    for (std::size_t i = 0; i < t; ++i) votes[i] = static_cast<std::int64_t>(tree_votes[i]);
    std::vector<std::size_t> pick(t, 0);
    std::optional<std::vector<std::size_t>> best_pick;
    Cost best_cost = kInfiniteCost;
    std::vector<std::int64_t> scores(p.num_candidates());

    auto evaluate = [&] {
        std::fill(scores.begin(), scores.end(), 0);
        for (std::size_t i = 0; i < t; ++i) {
            for (CandidateId c : *p.ballot(roots[i])) scores[c.index()] += votes[i];
        }
        for (std::size_t c = 0; c < scores.size(); ++c) {
            if (c != star.index() && scores[c] >= scores[star.index()]) return false;
        }
        return true;
    };
    auto search = [&](auto&& self, std::size_t i, Cost cost) -> void {
        if (i == t) {
            ++result.guesses_explored;
            if (evaluate()) {
                best_cost = cost;
                best_pick = pick;
            }
            return;
        }
        for (std::size_t k = 0; k < lists[i].size(); ++k) {
            const auto& [d, cell] = lists[i][k];
            const Cost c = add_cost(cost, cell->cost);
            if (c > p.budget() || (best_pick && c >= best_cost)) continue;
            std::int64_t moved = 0;
            for (std::size_t s = 0; s < t; ++s) {
                votes[s] += d[s];
                moved += d[s];
            }
            votes[i] -= moved;
            pick[i] = k;
            self(self, i + 1, c);
            for (std::size_t s = 0; s < t; ++s) votes[s] -= d[s];
            votes[i] += moved;
        }
    };
    search(search, 0, 0);

    if (!best_pick) {
        result.note = "no guess within budget makes the preferred candidate win";
        return result;
    }
    std::vector<Redirection> redirections;
    for (std::size_t i = 0; i < t; ++i) {
        for (const auto& [arc, slot] : lists[i][(*best_pick)[i]].second->witness) {
            redirections.push_back({p.arc(arc).from, p.arc(arc).to, roots[slot]});
        }
    }
    result.solution = finalize_solution(inst, map_to_original(pre, inst, redirections));
    return result;
}

}  // namespace ccra
