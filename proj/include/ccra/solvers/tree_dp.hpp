// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Single-delegation dynamic programs.
//
// With out-degree at most one the delegation graph is a forest of in-trees,
// one per active voter. For a tree rooted at active voter r, VoteArrays holds
// A[j] = minimum cost of a set of tree arcs whose redirection moves at least
// j votes out of the tree (the root's own vote never moves). The arrays are
// built bottom-up: B_v over the arcs strictly inside the subtree of v, A_v
// additionally allowing the arc from v to its parent, and B_v as the
// min-plus convolution of the children's A arrays.

#include <algorithm>
#include <optional>
#include <vector>

#include "ccra/model.hpp"
#include "ccra/preprocess.hpp"
#include "ccra/solution.hpp"

namespace ccra {

struct VoteArrays {
    VoterId root;
    std::vector<Cost> min_cost;                  // index = votes moved out of the tree
    std::vector<std::vector<ArcIndex>> witness;  // arcs realizing min_cost[j]
    std::uint64_t tree_votes = 0;                // real voters in the tree, root included

    [[nodiscard]] std::size_t max_votes() const { return min_cost.size() - 1; }
};

struct BudgetedVotes {
    std::size_t votes = 0;
    Cost cost = 0;
    std::vector<ArcIndex> arcs;
};

namespace detail {

inline void require_single_delegation(const Instance& inst) {
    if (!inst.stats().single_delegation()) {
        throw Error(ErrorCode::kNotSingleDelegation,
                    "some voter delegates to " + std::to_string(inst.stats().max_out_degree) + " voters");
    }
}

// Voters of the in-tree of `root`, every child before its parent.
[[nodiscard]] inline std::vector<VoterId> tree_postorder(const Instance& inst, VoterId root) {
    std::vector<VoterId> order;
    std::vector<std::pair<VoterId, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [v, pos] = stack.back();
        auto ins = inst.in_arcs(v);
        if (pos < ins.size()) {
            VoterId child = inst.arc(ins[pos++]).from;
            stack.emplace_back(child, 0);
        } else {
            order.push_back(v);
            stack.pop_back();
        }
    }
    return order;
}

[[nodiscard]] inline std::uint64_t vote_weight(const Instance& inst, VoterId v) {
    return inst.voter(v).is_virtual ? 0 : 1;
}

struct CostArray {
    std::vector<Cost> cost;
    std::vector<std::vector<ArcIndex>> witness;
};

// out[j] = min over x + y = j of acc[x] + child[y]. Both inputs are
// nondecreasing, so restricting to exact splits loses nothing.
[[nodiscard]] inline CostArray min_plus_merge(const CostArray& acc, const CostArray& child) {
    CostArray out;
    const std::size_t len = acc.cost.size() + child.cost.size() - 1;
    out.cost.assign(len, kInfiniteCost);
    out.witness.assign(len, {});
    for (std::size_t x = 0; x < acc.cost.size(); ++x) {
        if (!is_finite(acc.cost[x])) continue;
        for (std::size_t y = 0; y < child.cost.size(); ++y) {
            const Cost c = add_cost(acc.cost[x], child.cost[y]);
            if (c < out.cost[x + y]) {
                out.cost[x + y] = c;
                auto& w = out.witness[x + y];
                w = acc.witness[x];
                w.insert(w.end(), child.witness[y].begin(), child.witness[y].end());
            }
        }
    }
    return out;
}

}  // namespace detail

// Arcs costlier than `max_arc_cost` are treated as unredirectable.
inline VoteArrays tree_min_cost_arrays(const Instance& inst, VoterId root, Cost max_arc_cost = kInfiniteCost) {
    detail::require_single_delegation(inst);
    if (root.index() >= inst.num_voters() || !inst.is_active(root)) {
        throw Error(ErrorCode::kNotActiveRoot, "tree root must be an active voter");
    }
    const auto order = detail::tree_postorder(inst, root);
    std::vector<std::uint64_t> size(inst.num_voters(), 0);
    std::vector<detail::CostArray> a_arrays(inst.num_voters());
    detail::CostArray root_b;

    for (VoterId v : order) {
        detail::CostArray b{{0}, {{}}};
        size[v.index()] = detail::vote_weight(inst, v);
        for (ArcIndex in : inst.in_arcs(v)) {
            const VoterId child = inst.arc(in).from;
            b = detail::min_plus_merge(b, a_arrays[child.index()]);
            size[v.index()] += size[child.index()];
            a_arrays[child.index()] = {};
        }
        if (v == root) {
            root_b = std::move(b);
            break;
        }
        const ArcIndex up = inst.out_arcs(v).front();
        const Cost up_cost = inst.arc(up).cost <= max_arc_cost ? inst.arc(up).cost : kInfiniteCost;
        const std::size_t len = size[v.index()] + 1;
        detail::CostArray a;
        a.cost.assign(len, kInfiniteCost);
        a.witness.assign(len, {});
        for (std::size_t j = 0; j < len; ++j) {
            if (j < b.cost.size()) {
                a.cost[j] = b.cost[j];
                a.witness[j] = b.witness[j];
            }
            // Redirecting the arc to the parent moves the whole subtree.
            if (up_cost < a.cost[j]) {
                a.cost[j] = up_cost;
                a.witness[j] = {up};
            }
        }
        a_arrays[v.index()] = std::move(a);
    }

    VoteArrays out;
    out.root = root;
    out.min_cost = std::move(root_b.cost);
    out.witness = std::move(root_b.witness);
    out.tree_votes = size[root.index()];
    for (auto& w : out.witness) std::sort(w.begin(), w.end());
    return out;
}

// Largest j with A[j] within budget. A[0] = 0, so the result always exists.
[[nodiscard]] inline BudgetedVotes max_votes_under_budget(const VoteArrays& arrays, Cost budget) {
    BudgetedVotes best;
    for (std::size_t j = 0; j < arrays.min_cost.size(); ++j) {
        if (arrays.min_cost[j] <= budget) best = {j, arrays.min_cost[j], arrays.witness[j]};
    }
    return best;
}

namespace detail {

[[nodiscard]] inline std::optional<VoterId> root_with_ballot_containing(const Instance& inst,
                                                                         const std::vector<VoterId>& roots,
                                                                         CandidateId c) {
    for (VoterId r : roots) {
        if (inst.ballot(r)->contains(c)) return r;
    }
    return std::nullopt;
}

inline SolverResult already_winning(const Instance& inst, std::string note) {
    SolverResult r;
    if (is_unique_winner(tally(inst), inst.preferred())) {
        r.solution = finalize_solution(inst, {});
        r.note = std::move(note);
    }
    return r;
}

}  // namespace detail

// Exact solver for out-degree <= 1 and ballots of size 1.
//
// After preprocessing each candidate owns at most one tree. Votes are only
// ever redirected into the preferred candidate's tree. Table cell (i, k, x)
// holds the cheapest way to move at least k votes out of the first i rival
// trees while each of them keeps at most x votes; a cell is acceptable when
// the preferred candidate's own votes plus k exceed x.
inline SolverResult solve_single_single(const Instance& inst) {
    detail::require_single_delegation(inst);
    if (inst.stats().max_ballot_size > 1) {
        throw Error(ErrorCode::kNotSingleApproval, "some ballot approves more than one candidate");
    }
    if (auto r = detail::already_winning(inst, "preferred candidate already wins"); r.feasible()) return r;

    const Preprocessed pre = preprocess_with_map(inst);
    const Instance& p = pre.instance;
    const auto roots = p.active_voters();
    const auto star_root = detail::root_with_ballot_containing(p, roots, p.preferred());
    SolverResult result;
    if (!star_root) {
        result.note = "no voter approves the preferred candidate";
        return result;
    }

    std::vector<VoteArrays> rivals;
    for (VoterId r : roots) {
        if (r != *star_root) rivals.push_back(tree_min_cost_arrays(p, r));
    }
    const std::uint64_t star_votes = tree_min_cost_arrays(p, *star_root).tree_votes;

    std::size_t max_k = 0;
    std::size_t max_x = 0;
    for (const auto& a : rivals) {
        max_k += a.max_votes();
        max_x = std::max<std::size_t>(max_x, a.tree_votes);
    }
    const std::size_t width = max_x + 1;
    auto cell = [width](std::size_t k, std::size_t x) { return k * width + x; };

    // rows[i] covers the first i rival trees; choice[i] records the j used.
    std::vector<std::vector<Cost>> rows(rivals.size() + 1, std::vector<Cost>((max_k + 1) * width, kInfiniteCost));
    std::vector<std::vector<std::uint32_t>> choice(rivals.size() + 1,
                                                   std::vector<std::uint32_t>((max_k + 1) * width, 0));
    for (std::size_t x = 0; x <= max_x; ++x) rows[0][cell(0, x)] = 0;

    for (std::size_t i = 1; i <= rivals.size(); ++i) {
        const VoteArrays& arr = rivals[i - 1];
        const auto& prev = rows[i - 1];
        auto& cur = rows[i];
        for (std::size_t x = 0; x <= max_x; ++x) {
            const std::size_t j_min = arr.tree_votes > x ? arr.tree_votes - x : 0;
            for (std::size_t j = j_min; j <= arr.max_votes(); ++j) {
                if (!is_finite(arr.min_cost[j])) continue;
                for (std::size_t k = 0; k <= max_k; ++k) {
                    const std::size_t k_prev = k > j ? k - j : 0;
                    const Cost c = add_cost(arr.min_cost[j], prev[cell(k_prev, x)]);
                    if (c < cur[cell(k, x)]) {
                        cur[cell(k, x)] = c;
                        choice[i][cell(k, x)] = static_cast<std::uint32_t>(j);
                    }
                }
            }
        }
    }

    Cost best = kInfiniteCost;
    std::size_t best_k = 0;
    std::size_t best_x = 0;
    for (std::size_t x = 0; x <= max_x; ++x) {
        for (std::size_t k = 0; k <= max_k; ++k) {
            if (star_votes + k < x + 1) continue;
            if (rows.back()[cell(k, x)] < best) {
                best = rows.back()[cell(k, x)];
                best_k = k;
                best_x = x;
            }
        }
    }
    result.guesses_explored = rivals.size() * (max_k + 1) * width;
    if (!is_finite(best)) {
        result.note = "infeasible at any cost";
        return result;
    }
    if (best > inst.budget()) {
        result.note = "cheapest solution costs " + std::to_string(best) + ", above the budget";
        return result;
    }

    std::vector<Redirection> redirections;
    std::size_t k = best_k;
    for (std::size_t i = rivals.size(); i >= 1; --i) {
        const std::size_t j = choice[i][cell(k, best_x)];
        for (ArcIndex a : rivals[i - 1].witness[j]) redirections.push_back({p.arc(a).from, p.arc(a).to, *star_root});
        k = k > j ? k - j : 0;
    }
    result.solution = finalize_solution(inst, map_to_original(pre, inst, redirections));
    return result;
}

}  // namespace ccra
