// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Equivalence-class preprocessing. Active voters sharing an approval set are
// routed, through arcs of infinite cost, into one virtual active voter that
// carries the set but casts no vote. Afterwards the number of active voters
// equals the number of distinct approval sets.

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ccra/model.hpp"

namespace ccra {

struct Preprocessed {
    Instance instance;
    std::size_t original_voters = 0;
    // For every virtual voter of `instance`, the voters of its approval class
    // in index order; empty for the other voters.
    std::vector<std::vector<VoterId>> class_members;

    [[nodiscard]] bool is_added(VoterId v) const { return v.index() >= original_voters; }
};

namespace detail {

inline std::string fresh_virtual_name(const Instance& inst, const Ballot& ballot,
                                      const std::vector<Voter>& taken_extra) {
    std::string base = "virtual{";
    bool first = true;
    for (CandidateId c : ballot) {
        if (!first) base += ",";
        base += inst.candidate_name(c);
        first = false;
    }
    base += "}";
    auto taken = [&](const std::string& s) {
        if (inst.find_voter(s)) return true;
        return std::any_of(taken_extra.begin(), taken_extra.end(), [&](const Voter& v) { return v.name == s; });
    };
    std::string name = base;
    for (int suffix = 2; taken(name); ++suffix) name = base + "#" + std::to_string(suffix);
    return name;
}

}  // namespace detail

inline Preprocessed preprocess_with_map(const Instance& inst) {
    const std::size_t n = inst.num_voters();
    std::map<Ballot, std::vector<VoterId>> classes;
    std::vector<Ballot> class_order;
    for (VoterId v : inst.active_voters()) {
        const Ballot& b = *inst.ballot(v);
        auto [it, inserted] = classes.try_emplace(b);
        if (inserted) class_order.push_back(b);
        it->second.push_back(v);
    }

    InstanceParts parts = inst.parts();
    std::vector<std::vector<VoterId>> members_of(n);
    std::vector<Voter> added;
    for (const Ballot& b : class_order) {
        const auto& members = classes[b];
        auto virt = std::find_if(members.begin(), members.end(),
                                 [&](VoterId v) { return inst.voters()[v.index()].is_virtual; });
        VoterId rep;
        if (virt != members.end()) {
            rep = *virt;
        } else {
            rep = VoterId(n + added.size());
            added.push_back({detail::fresh_virtual_name(inst, b, added), true});
            parts.voters.push_back(added.back());
            parts.ballots.emplace_back(b);
            members_of.emplace_back();
        }
        for (VoterId v : members) {
            if (v == rep) continue;
            parts.arcs.push_back({v, rep, kInfiniteCost});
            parts.ballots[v.index()].reset();
        }
        members_of[rep.index()] = members;
    }
    return Preprocessed{make_instance(std::move(parts)), n, std::move(members_of)};
}

[[nodiscard]] inline Instance add_virtual_actives(const Instance& inst) { return preprocess_with_map(inst).instance; }

namespace detail {

// Assigns every redirection whose target is an added virtual voter to a
// distinct member of that voter's class, avoiding the old head and every
// other head of the redirected voter. Returns false if no assignment exists.
inline bool assign_class_members(const Preprocessed& pre, const Instance& original, std::vector<Redirection>& out) {
    std::vector<std::vector<VoterId>> heads(original.num_voters());
    for (const auto& arc : original.arcs()) heads[arc.from.index()].push_back(arc.to);
    for (const auto& r : out) {
        if (pre.is_added(r.from) || pre.is_added(r.to)) {
            throw Error(ErrorCode::kInvalidRedirection, "redirection of an arc added by preprocessing");
        }
        auto& h = heads[r.from.index()];
        if (auto it = std::find(h.begin(), h.end(), r.to); it != h.end()) h.erase(it);
    }
    for (const auto& r : out) {
        if (!pre.is_added(r.new_to)) heads[r.from.index()].push_back(r.new_to);
    }

    // Groups of redirections sharing the redirected voter and the virtual target.
    std::map<std::pair<VoterId, VoterId>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (pre.is_added(out[i].new_to)) groups[{out[i].from, out[i].new_to}].push_back(i);
    }
    for (const auto& [key, group] : groups) {
        const auto& h = heads[key.first.index()];
        std::vector<VoterId> free;
        for (VoterId m : pre.class_members[key.second.index()]) {
            if (m != key.first && std::find(h.begin(), h.end(), m) == h.end()) free.push_back(m);
        }
        // Bipartite matching by augmenting paths; groups are tiny.
        std::vector<int> owner(free.size(), -1);
        auto augment = [&](auto&& self, std::size_t r, std::vector<char>& seen) -> bool {
            for (std::size_t f = 0; f < free.size(); ++f) {
                if (seen[f] || free[f] == out[group[r]].to) continue;
                seen[f] = 1;
                if (owner[f] < 0 || self(self, static_cast<std::size_t>(owner[f]), seen)) {
                    owner[f] = static_cast<int>(r);
                    return true;
                }
            }
            return false;
        };
        for (std::size_t r = 0; r < group.size(); ++r) {
            std::vector<char> seen(free.size(), 0);
            if (!augment(augment, r, seen)) return false;
        }
        for (std::size_t f = 0; f < free.size(); ++f) {
            if (owner[f] >= 0) out[group[static_cast<std::size_t>(owner[f])]].new_to = free[f];
        }
    }
    std::sort(out.begin(), out.end());
    return true;
}

}  // namespace detail

// Rewrites redirections found on the preprocessed instance so that they apply
// to the original one: a target that is an added virtual voter becomes a
// member of its class that does not create a parallel arc.
inline std::vector<Redirection> map_to_original(const Preprocessed& pre, const Instance& original,
                                                std::span<const Redirection> redirections) {
    std::vector<Redirection> out(redirections.begin(), redirections.end());
    if (!detail::assign_class_members(pre, original, out)) {
        throw Error(ErrorCode::kInvalidRedirection, "no class member can replace a virtual target");
    }
    return out;
}

// Whether map_to_original succeeds. Under multi-delegation a virtual target
// can stand for a class whose members are all delegates already.
[[nodiscard]] inline bool can_map_to_original(const Preprocessed& pre, const Instance& original,
                                              std::span<const Redirection> redirections) {
    for (const auto& r : redirections) {
        if (pre.is_added(r.from) || pre.is_added(r.to)) return false;
    }
    std::vector<Redirection> out(redirections.begin(), redirections.end());
    return detail::assign_class_members(pre, original, out);
}

}  // namespace ccra
