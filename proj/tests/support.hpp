// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fixtures, generators and independent oracles shared by the test binaries.
// Nothing here calls into the solvers.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccra/ccra.hpp"

namespace ccra::testing {

class Builder {
public:
    Builder(std::vector<std::string> candidates, std::string preferred, Cost budget,
            UnravelRule rule = UnravelRule::kUnion) {
        d_.candidates = std::move(candidates);
        d_.preferred = std::move(preferred);
        d_.budget = budget;
        d_.rule = rule;
    }

    Builder& active(std::string name, std::vector<std::string> ballot) {
        d_.voters.push_back({std::move(name), std::move(ballot), {}, false});
        return *this;
    }

    Builder& passive(std::string name, std::vector<DraftDelegation> delegates) {
        d_.voters.push_back({std::move(name), std::nullopt, std::move(delegates), false});
        return *this;
    }

    [[nodiscard]] const InstanceDraft& draft() const { return d_; }
    [[nodiscard]] Instance build() const { return validate_instance(d_); }

private:
    InstanceDraft d_;
};

inline VoterId id(const Instance& inst, const std::string& name) { return *inst.find_voter(name); }
inline CandidateId cand(const Instance& inst, const std::string& name) { return *inst.find_candidate(name); }

inline std::set<std::string> names(const Instance& inst, const Ballot& b) {
    std::set<std::string> out;
    for (CandidateId c : b) out.insert(inst.candidate_name(c));
    return out;
}

inline Redirection redirect(const Instance& inst, const std::string& from, const std::string& to,
                            const std::string& new_to) {
    return {id(inst, from), id(inst, to), id(inst, new_to)};
}

// Fig. 1(a) with the ballot completion chosen by the acceptance search.
inline InstanceDraft example1_draft(std::string v3 = "c1,c2", std::string v4 = "c1,cstar",
                                    std::string v6 = "c3,cstar") {
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (start <= s.size()) {
            auto comma = s.find(',', start);
            if (comma == std::string::npos) comma = s.size();
            out.push_back(s.substr(start, comma - start));
            start = comma + 1;
        }
        return out;
    };
    return Builder({"c1", "c2", "c3", "cstar"}, "cstar", 1)
        .passive("v1", {{"v2", 1}, {"v6", 1}})
        .passive("v2", {{"v3", 1}, {"v4", 1}})
        .active("v3", split(v3))
        .active("v4", split(v4))
        .passive("v5", {{"v3", 1}})
        .active("v6", split(v6))
        .draft();
}

inline Instance example1() { return validate_instance(example1_draft()); }

// Active voters reachable from every voter, by plain graph search.
inline std::vector<std::set<std::size_t>> reachable_actives(const Instance& inst) {
    std::vector<std::set<std::size_t>> out(inst.num_voters());
    for (std::size_t s = 0; s < inst.num_voters(); ++s) {
        std::vector<std::size_t> stack{s};
        std::vector<char> seen(inst.num_voters(), 0);
        seen[s] = 1;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            if (inst.is_active(VoterId(v))) out[s].insert(v);
            for (ArcIndex a : inst.out_arcs(VoterId(v))) {
                const std::size_t w = inst.arc(a).to.index();
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return out;
}

using NaiveBallot = std::set<std::size_t>;

inline NaiveBallot naive_union(const std::vector<NaiveBallot>& in) {
    NaiveBallot out;
    for (const auto& b : in) out.insert(b.begin(), b.end());
    return out;
}

inline NaiveBallot naive_most_approved(const std::vector<NaiveBallot>& in) {
    std::map<std::size_t, std::size_t> count;
    for (const auto& b : in) {
        for (auto c : b) ++count[c];
    }
    std::size_t top = 0;
    for (auto [c, k] : count) top = std::max(top, k);
    NaiveBallot out;
    for (auto [c, k] : count) {
        if (k == top) out.insert(c);
    }
    return out;
}

inline NaiveBallot naive_greedy_mrc(std::vector<NaiveBallot> in) {
    NaiveBallot out;
    while (!in.empty()) {
        const NaiveBallot add = naive_most_approved(in);
        out.insert(add.begin(), add.end());
        std::erase_if(in, [&](const NaiveBallot& b) {
            return std::any_of(b.begin(), b.end(), [&](std::size_t c) { return add.count(c) > 0; });
        });
    }
    return out;
}

inline NaiveBallot naive_rule(UnravelRule rule, const std::vector<NaiveBallot>& in) {
    switch (rule) {
        case UnravelRule::kUnion: return naive_union(in);
        case UnravelRule::kApproval: return naive_most_approved(in);
        case UnravelRule::kGreedyMrc: return naive_greedy_mrc(in);
    }
    return {};
}

// Resolution by memoized recursion over delegates in index order.
inline std::vector<NaiveBallot> naive_unravel(const Instance& inst) {
    std::vector<std::optional<NaiveBallot>> memo(inst.num_voters());
    auto resolve = [&](auto&& self, std::size_t v) -> NaiveBallot {
        if (memo[v]) return *memo[v];
        NaiveBallot out;
        if (inst.is_active(VoterId(v))) {
            for (CandidateId c : *inst.ballot(VoterId(v))) out.insert(c.index());
        } else {
            std::vector<std::size_t> heads;
            for (ArcIndex a : inst.out_arcs(VoterId(v))) heads.push_back(inst.arc(a).to.index());
            std::sort(heads.begin(), heads.end());
            std::vector<NaiveBallot> in;
            for (auto h : heads) in.push_back(self(self, h));
            out = naive_rule(inst.rule(), in);
        }
        memo[v] = out;
        return out;
    };
    std::vector<NaiveBallot> out;
    for (std::size_t v = 0; v < inst.num_voters(); ++v) out.push_back(resolve(resolve, v));
    return out;
}

inline NaiveBallot to_naive(const Ballot& b) {
    NaiveBallot out;
    for (CandidateId c : b) out.insert(c.index());
    return out;
}

// Union-rule scores from reachability alone.
inline std::vector<std::uint64_t> naive_union_scores(const Instance& inst) {
    std::vector<std::uint64_t> scores(inst.num_candidates(), 0);
    const auto reach = reachable_actives(inst);
    for (std::size_t v = 0; v < inst.num_voters(); ++v) {
        if (inst.voter(VoterId(v)).is_virtual) continue;
        std::set<std::size_t> approved;
        for (std::size_t a : reach[v]) {
            for (CandidateId c : *inst.ballot(VoterId(a))) approved.insert(c.index());
        }
        for (std::size_t c : approved) ++scores[c];
    }
    return scores;
}

// Minimum cost of a subset of the tree's arcs that moves at least j real
// voters away from the root, for every j, by enumerating all subsets.
inline std::vector<Cost> exhaustive_tree_costs(const Instance& inst, VoterId root) {
    std::vector<std::size_t> members;
    std::vector<ArcIndex> arcs;
    std::vector<std::size_t> stack{root.index()};
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        members.push_back(v);
        for (ArcIndex a : inst.in_arcs(VoterId(v))) {
            arcs.push_back(a);
            stack.push_back(inst.arc(a).from.index());
        }
    }
    std::size_t real = 0;
    for (std::size_t v : members) real += inst.voter(VoterId(v)).is_virtual ? 0 : 1;
    const std::size_t root_weight = inst.voter(root).is_virtual ? 0 : 1;
    std::vector<Cost> best(real - root_weight + 1, kInfiniteCost);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << arcs.size()); ++mask) {
        Cost cost = 0;
        std::set<ArcIndex> chosen;
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            if (mask >> i & 1) {
                cost = add_cost(cost, inst.arc(arcs[i]).cost);
                chosen.insert(arcs[i]);
            }
        }
        std::size_t moved = 0;
        for (std::size_t v : members) {
            if (inst.voter(VoterId(v)).is_virtual) continue;
            for (std::size_t u = v; u != root.index();) {
                const ArcIndex up = inst.out_arcs(VoterId(u)).front();
                if (chosen.count(up)) {
                    ++moved;
                    break;
                }
                u = inst.arc(up).to.index();
            }
        }
        for (std::size_t j = 0; j <= moved; ++j) best[j] = std::min(best[j], cost);
    }
    return best;
}

// Draft with exactly one active voter approving only cstar and no other
// ballot containing it.
inline InstanceDraft special_setting_draft(const GenConfig& cfg) {
    InstanceDraft d = gen_random_draft(cfg);
    bool star_given = false;
    for (auto& v : d.voters) {
        if (!v.ballot) continue;
        if (!star_given) {
            *v.ballot = {"cstar"};
            star_given = true;
            continue;
        }
        auto& b = *v.ballot;
        b.erase(std::remove(b.begin(), b.end(), "cstar"), b.end());
        if (b.empty()) b.push_back("c1");
    }
    return d;
}

inline std::size_t distinct_active_ballots(const Instance& inst) {
    std::set<Ballot> seen;
    for (VoterId v : inst.active_voters()) seen.insert(*inst.ballot(v));
    return seen.size();
}

inline CubicGraph k4() {
    return make_cubic_graph({"1", "2", "3", "4"}, {{"1", "2"}, {"1", "3"}, {"1", "4"}, {"2", "3"}, {"2", "4"}, {"3", "4"}});
}

inline CubicGraph petersen() {
    std::vector<std::string> v;
    for (int i = 0; i < 10; ++i) v.push_back(std::to_string(i));
    std::vector<std::pair<std::string, std::string>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(std::to_string(i), std::to_string((i + 1) % 5));
        e.emplace_back(std::to_string(i), std::to_string(i + 5));
        e.emplace_back(std::to_string(i + 5), std::to_string((i + 2) % 5 + 5));
    }
    return make_cubic_graph(v, e);
}

// Every vertex cover of g of size at most `limit`, smallest first, by subset enumeration.
inline std::vector<std::vector<std::string>> vertex_covers(const CubicGraph& g, std::size_t limit) {
    std::vector<std::vector<std::string>> out;
    const std::size_t n = g.vertices.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) > limit) continue;
        bool ok = std::all_of(g.edges.begin(), g.edges.end(),
                              [&](auto e) { return (mask >> e.first & 1) || (mask >> e.second & 1); });
        if (!ok) continue;
        std::vector<std::string> cover;
        for (std::size_t v = 0; v < n; ++v) {
            if (mask >> v & 1) cover.push_back(g.vertices[v]);
        }
        out.push_back(std::move(cover));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

}  // namespace ccra::testing
