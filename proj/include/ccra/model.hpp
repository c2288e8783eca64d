// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Instances of control by redirecting arcs: voters, delegation arcs with
// redirect costs, approval ballots of the active voters, the preferred
// candidate, the budget and the unraveling rule.
//
// An Instance can only be obtained through validation and is immutable
// afterwards. All transformations (redirection, preprocessing) build a new one.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ccra/ballot.hpp"
#include "ccra/common.hpp"

namespace ccra {

enum class UnravelRule { kUnion, kApproval, kGreedyMrc };

[[nodiscard]] constexpr std::string_view to_string(UnravelRule rule) {
    switch (rule) {
        case UnravelRule::kUnion: return "union";
        case UnravelRule::kApproval: return "approval";
        case UnravelRule::kGreedyMrc: return "greedy_mrc";
    }
    return "union";
}

[[nodiscard]] inline std::optional<UnravelRule> parse_rule(std::string_view name) {
    if (name == "union") return UnravelRule::kUnion;
    if (name == "approval") return UnravelRule::kApproval;
    if (name == "greedy_mrc") return UnravelRule::kGreedyMrc;
    return std::nullopt;
}

struct Voter {
    std::string name;
    // Virtual voters resolve like active voters but never add to any score.
    bool is_virtual = false;
};

struct Arc {
    VoterId from;
    VoterId to;
    Cost cost = 1;
};

struct InstanceStats {
    std::size_t n = 0;  // voters
    std::size_t m = 0;  // candidates
    std::size_t t = 0;  // active voters
    std::size_t max_out_degree = 0;
    std::size_t max_in_degree = 0;
    std::size_t longest_path = 0;  // in arcs
    std::size_t max_ballot_size = 0;

    [[nodiscard]] std::size_t delegations() const { return max_out_degree; }
    [[nodiscard]] std::size_t approvals() const { return max_ballot_size; }
    [[nodiscard]] bool single_delegation() const { return max_out_degree <= 1; }
};

// Replace arc (from, to) by (from, new_to), paying the cost of the original arc.
struct Redirection {
    VoterId from;
    VoterId to;
    VoterId new_to;

    friend auto operator<=>(const Redirection&, const Redirection&) = default;
};

struct Violation {
    ErrorCode code;
    std::string message;
};

class ValidationError : public Error {
  public:
    explicit ValidationError(std::vector<Violation> violations)
        : Error(violations.empty() ? ErrorCode::kInvalidArgument : violations.front().code, summarize(violations)),
          violations_(std::move(violations)) {}

    [[nodiscard]] const std::vector<Violation>& violations() const noexcept { return violations_; }

  private:
    static std::string summarize(const std::vector<Violation>& violations) {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += std::string(to_string(v.code)) + " (" + v.message + ")";
        }
        return out;
    }

    std::vector<Violation> violations_;
};

// Name-based record as read from JSON or produced by a generator.
struct DraftDelegation {
    std::string to;
    Cost cost = 1;
};

struct DraftVoter {
    std::string name;
    std::optional<std::vector<std::string>> ballot;
    std::vector<DraftDelegation> delegates;
    bool is_virtual = false;
};

struct InstanceDraft {
    std::vector<std::string> candidates;
    std::string preferred;
    Cost budget = 0;
    UnravelRule rule = UnravelRule::kUnion;
    std::vector<DraftVoter> voters;
};

// Index-based record; the input of the final validation step.
struct InstanceParts {
    std::vector<std::string> candidates;
    std::vector<Voter> voters;
    std::vector<Arc> arcs;
    std::vector<std::optional<Ballot>> ballots;  // one slot per voter
    CandidateId preferred;
    Cost budget = 0;
    UnravelRule rule = UnravelRule::kUnion;
};

class Instance;
std::vector<Violation> check_parts(const InstanceParts& parts);
Instance make_instance(InstanceParts parts);

class Instance {
  public:
    [[nodiscard]] std::size_t num_voters() const { return voters_.size(); }
    [[nodiscard]] std::size_t num_candidates() const { return candidates_.size(); }
    [[nodiscard]] std::size_t num_arcs() const { return arcs_.size(); }

    [[nodiscard]] const std::vector<std::string>& candidates() const { return candidates_; }
    [[nodiscard]] const std::string& candidate_name(CandidateId c) const { return candidates_[c.index()]; }
    [[nodiscard]] const std::vector<Voter>& voters() const { return voters_; }
    [[nodiscard]] const Voter& voter(VoterId v) const { return voters_[v.index()]; }
    [[nodiscard]] const std::string& voter_name(VoterId v) const { return voters_[v.index()].name; }
    [[nodiscard]] const std::vector<Arc>& arcs() const { return arcs_; }
    [[nodiscard]] const Arc& arc(ArcIndex a) const { return arcs_[a]; }
    [[nodiscard]] const std::optional<Ballot>& ballot(VoterId v) const { return ballots_[v.index()]; }

    [[nodiscard]] CandidateId preferred() const { return preferred_; }
    [[nodiscard]] Cost budget() const { return budget_; }
    [[nodiscard]] UnravelRule rule() const { return rule_; }
    [[nodiscard]] const InstanceStats& stats() const { return stats_; }

    [[nodiscard]] bool is_active(VoterId v) const { return out_arcs_[v.index()].empty(); }
    [[nodiscard]] std::span<const ArcIndex> out_arcs(VoterId v) const { return out_arcs_[v.index()]; }
    [[nodiscard]] std::span<const ArcIndex> in_arcs(VoterId v) const { return in_arcs_[v.index()]; }

    // Delegatees come before their delegators.
    [[nodiscard]] const std::vector<VoterId>& topological_order() const { return topo_; }

    [[nodiscard]] std::vector<VoterId> active_voters() const {
        std::vector<VoterId> out;
        for (std::size_t v = 0; v < voters_.size(); ++v) {
            if (out_arcs_[v].empty()) out.emplace_back(v);
        }
        return out;
    }

    [[nodiscard]] std::optional<VoterId> find_voter(std::string_view name) const {
        auto it = voter_index_.find(std::string(name));
        if (it == voter_index_.end()) return std::nullopt;
        return VoterId(it->second);
    }

    [[nodiscard]] std::optional<CandidateId> find_candidate(std::string_view name) const {
        for (std::size_t c = 0; c < candidates_.size(); ++c) {
            if (candidates_[c] == name) return CandidateId(c);
        }
        return std::nullopt;
    }

    [[nodiscard]] std::optional<ArcIndex> find_arc(VoterId from, VoterId to) const {
        if (from.index() >= voters_.size()) return std::nullopt;
        for (ArcIndex a : out_arcs_[from.index()]) {
            if (arcs_[a].to == to) return a;
        }
        return std::nullopt;
    }

    [[nodiscard]] const InstanceParts& parts() const { return parts_; }

    [[nodiscard]] Instance with_budget(Cost budget) const {
        InstanceParts p = parts_;
        p.budget = budget;
        return make_instance(std::move(p));
    }

  private:
    friend Instance make_instance(InstanceParts parts);
    Instance() = default;

    InstanceParts parts_;
    std::vector<std::string> candidates_;
    std::vector<Voter> voters_;
    std::vector<Arc> arcs_;
    std::vector<std::optional<Ballot>> ballots_;
    CandidateId preferred_;
    Cost budget_ = 0;
    UnravelRule rule_ = UnravelRule::kUnion;

    std::vector<std::vector<ArcIndex>> out_arcs_;
    std::vector<std::vector<ArcIndex>> in_arcs_;
    std::vector<VoterId> topo_;
    std::unordered_map<std::string, std::size_t> voter_index_;
    InstanceStats stats_;
};

namespace detail {

// Post-order DFS over the arc heads. Returns std::nullopt when a cycle exists.
[[nodiscard]] inline std::optional<std::vector<VoterId>> delegatees_first_order(
    std::size_t num_voters, const std::vector<std::vector<ArcIndex>>& out_arcs, const std::vector<Arc>& arcs) {
    enum : char { kWhite, kGrey, kBlack };
    std::vector<char> color(num_voters, kWhite);
    std::vector<VoterId> order;
    order.reserve(num_voters);
    std::vector<std::pair<std::size_t, std::size_t>> stack;  // (voter, next out-arc position)
    for (std::size_t s = 0; s < num_voters; ++s) {
        if (color[s] != kWhite) continue;
        stack.emplace_back(s, 0);
        color[s] = kGrey;
        while (!stack.empty()) {
            auto& [v, pos] = stack.back();
            if (pos < out_arcs[v].size()) {
                std::size_t next = arcs[out_arcs[v][pos++]].to.index();
                if (color[next] == kGrey) return std::nullopt;
                if (color[next] == kWhite) {
                    color[next] = kGrey;
                    stack.emplace_back(next, 0);
                }
            } else {
                color[v] = kBlack;
                order.emplace_back(v);
                stack.pop_back();
            }
        }
    }
    return order;
}

}  // namespace detail

inline std::vector<Violation> check_parts(const InstanceParts& parts) {
    std::vector<Violation> out;
    const std::size_t n = parts.voters.size();
    const std::size_t m = parts.candidates.size();
    if (m == 0) out.push_back({ErrorCode::kNoCandidates, "instance has no candidates"});
    if (n == 0) out.push_back({ErrorCode::kNoVoters, "instance has no voters"});
    if (parts.ballots.size() != n) {
        out.push_back({ErrorCode::kInvalidArgument, "ballot slots do not match voter count"});
        return out;
    }
    {
        std::vector<std::string> names = parts.candidates;
        std::sort(names.begin(), names.end());
        for (std::size_t i = 1; i < names.size(); ++i) {
            if (names[i] == names[i - 1]) out.push_back({ErrorCode::kDuplicateName, "candidate '" + names[i] + "'"});
        }
        std::vector<std::string> vnames;
        for (const auto& v : parts.voters) vnames.push_back(v.name);
        std::sort(vnames.begin(), vnames.end());
        for (std::size_t i = 1; i < vnames.size(); ++i) {
            if (vnames[i] == vnames[i - 1]) out.push_back({ErrorCode::kDuplicateName, "voter '" + vnames[i] + "'"});
        }
    }
    if (m > 0 && parts.preferred.index() >= m) out.push_back({ErrorCode::kUnknownId, "preferred candidate"});

    std::vector<std::vector<ArcIndex>> out_arcs(n);
    bool arcs_ok = true;
    for (ArcIndex a = 0; a < parts.arcs.size(); ++a) {
        const Arc& arc = parts.arcs[a];
        if (arc.from.index() >= n || arc.to.index() >= n) {
            out.push_back({ErrorCode::kUnknownId, "arc endpoint out of range"});
            arcs_ok = false;
            continue;
        }
        const std::string& name = parts.voters[arc.from.index()].name;
        if (arc.from == arc.to) {
            out.push_back({ErrorCode::kSelfDelegation, "voter '" + name + "' delegates to itself"});
            arcs_ok = false;
            continue;
        }
        for (ArcIndex b : out_arcs[arc.from.index()]) {
            if (parts.arcs[b].to == arc.to) {
                out.push_back({ErrorCode::kParallelArc,
                               "'" + name + "' -> '" + parts.voters[arc.to.index()].name + "' appears twice"});
                arcs_ok = false;
            }
        }
        out_arcs[arc.from.index()].push_back(a);
    }

    for (std::size_t v = 0; v < n; ++v) {
        const std::string& name = parts.voters[v].name;
        const auto& ballot = parts.ballots[v];
        if (!out_arcs[v].empty()) {
            if (ballot) out.push_back({ErrorCode::kBallotOnPassiveVoter, "voter '" + name + "'"});
            continue;
        }
        if (!ballot) {
            out.push_back({ErrorCode::kMissingBallotOnActiveVoter, "voter '" + name + "'"});
            continue;
        }
        if (ballot->empty()) out.push_back({ErrorCode::kEmptyBallot, "voter '" + name + "'"});
        for (CandidateId c : *ballot) {
            if (c.index() >= m) out.push_back({ErrorCode::kUnknownId, "candidate index in ballot of '" + name + "'"});
        }
    }

    if (arcs_ok && !detail::delegatees_first_order(n, out_arcs, parts.arcs)) {
        out.push_back({ErrorCode::kCycleDetected, "delegation graph contains a cycle"});
    }
    return out;
}

inline Instance make_instance(InstanceParts parts) {
    if (auto violations = check_parts(parts); !violations.empty()) throw ValidationError(std::move(violations));

    Instance inst;
    const std::size_t n = parts.voters.size();
    inst.candidates_ = parts.candidates;
    inst.voters_ = parts.voters;
    inst.arcs_ = parts.arcs;
    inst.ballots_ = parts.ballots;
    inst.preferred_ = parts.preferred;
    inst.budget_ = parts.budget;
    inst.rule_ = parts.rule;
    inst.out_arcs_.assign(n, {});
    inst.in_arcs_.assign(n, {});
    for (ArcIndex a = 0; a < inst.arcs_.size(); ++a) {
        inst.out_arcs_[inst.arcs_[a].from.index()].push_back(a);
        inst.in_arcs_[inst.arcs_[a].to.index()].push_back(a);
    }
    for (std::size_t v = 0; v < n; ++v) inst.voter_index_.emplace(inst.voters_[v].name, v);
    inst.topo_ = *detail::delegatees_first_order(n, inst.out_arcs_, inst.arcs_);

    InstanceStats& s = inst.stats_;
    s.n = n;
    s.m = inst.candidates_.size();
    std::vector<std::size_t> depth(n, 0);
    for (VoterId v : inst.topo_) {
        const auto& outs = inst.out_arcs_[v.index()];
        if (outs.empty()) {
            ++s.t;
            s.max_ballot_size = std::max(s.max_ballot_size, inst.ballots_[v.index()]->size());
        }
        s.max_out_degree = std::max(s.max_out_degree, outs.size());
        s.max_in_degree = std::max(s.max_in_degree, inst.in_arcs_[v.index()].size());
        for (ArcIndex a : outs) depth[v.index()] = std::max(depth[v.index()], depth[inst.arcs_[a].to.index()] + 1);
        s.longest_path = std::max(s.longest_path, depth[v.index()]);
    }
    inst.parts_ = std::move(parts);
    return inst;
}

// Resolves names, then validates. Throws ValidationError listing every violation found.
inline Instance validate_instance(const InstanceDraft& draft) {
    std::vector<Violation> violations;
    InstanceParts parts;
    parts.candidates = draft.candidates;
    parts.budget = draft.budget;
    parts.rule = draft.rule;

    std::unordered_map<std::string, std::size_t> cand_index;
    for (std::size_t c = 0; c < draft.candidates.size(); ++c) cand_index.emplace(draft.candidates[c], c);
    std::unordered_map<std::string, std::size_t> voter_index;
    for (std::size_t v = 0; v < draft.voters.size(); ++v) voter_index.emplace(draft.voters[v].name, v);

    if (auto it = cand_index.find(draft.preferred); it != cand_index.end()) {
        parts.preferred = CandidateId(it->second);
    } else if (!draft.candidates.empty()) {
        violations.push_back({ErrorCode::kUnknownId, "preferred candidate '" + draft.preferred + "'"});
    }

    for (std::size_t v = 0; v < draft.voters.size(); ++v) {
        const DraftVoter& dv = draft.voters[v];
        parts.voters.push_back({dv.name, dv.is_virtual});
        if (dv.ballot) {
            std::vector<CandidateId> ids;
            for (const auto& name : *dv.ballot) {
                auto it = cand_index.find(name);
                if (it == cand_index.end()) {
                    violations.push_back({ErrorCode::kUnknownId, "candidate '" + name + "' in ballot of '" + dv.name + "'"});
                } else {
                    ids.emplace_back(it->second);
                }
            }
            parts.ballots.emplace_back(Ballot(std::move(ids)));
        } else {
            parts.ballots.emplace_back(std::nullopt);
        }
        for (const auto& d : dv.delegates) {
            auto it = voter_index.find(d.to);
            if (it == voter_index.end()) {
                violations.push_back({ErrorCode::kUnknownId, "delegate '" + d.to + "' of '" + dv.name + "'"});
                continue;
            }
            parts.arcs.push_back({VoterId(v), VoterId(it->second), d.cost});
        }
    }
    auto structural = check_parts(parts);
    violations.insert(violations.end(), structural.begin(), structural.end());
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return make_instance(std::move(parts));
}

[[nodiscard]] inline InstanceDraft to_draft(const Instance& inst) {
    InstanceDraft d;
    d.candidates = inst.candidates();
    d.preferred = inst.candidate_name(inst.preferred());
    d.budget = inst.budget();
    d.rule = inst.rule();
    for (std::size_t v = 0; v < inst.num_voters(); ++v) {
        DraftVoter dv;
        dv.name = inst.voters()[v].name;
        dv.is_virtual = inst.voters()[v].is_virtual;
        if (const auto& b = inst.ballot(VoterId(v))) {
            std::vector<std::string> names;
            for (CandidateId c : *b) names.push_back(inst.candidate_name(c));
            dv.ballot = std::move(names);
        }
        for (ArcIndex a : inst.out_arcs(VoterId(v))) {
            dv.delegates.push_back({inst.voter_name(inst.arc(a).to), inst.arc(a).cost});
        }
        d.voters.push_back(std::move(dv));
    }
    return d;
}

enum class BudgetCheck { kIgnore, kEnforce };

[[nodiscard]] inline Cost redirection_cost(const Instance& inst, std::span<const Redirection> redirections) {
    Cost total = 0;
    for (const auto& r : redirections) {
        if (auto a = inst.find_arc(r.from, r.to)) total = add_cost(total, inst.arc(*a).cost);
    }
    return total;
}

// Arc count, every out-degree and the multiset of costs are preserved.
inline Instance apply_redirections(const Instance& inst, std::span<const Redirection> redirections,
                                   BudgetCheck budget_check = BudgetCheck::kIgnore) {
    const std::size_t n = inst.num_voters();
    InstanceParts parts = inst.parts();
    std::vector<char> touched(inst.num_arcs(), 0);
    Cost total = 0;
    for (const auto& r : redirections) {
        if (r.from.index() >= n || r.to.index() >= n || r.new_to.index() >= n) {
            throw Error(ErrorCode::kUnknownId, "redirection names a voter out of range");
        }
        auto a = inst.find_arc(r.from, r.to);
        if (!a) {
            throw Error(ErrorCode::kArcNotFound,
                        "no arc '" + inst.voter_name(r.from) + "' -> '" + inst.voter_name(r.to) + "'");
        }
        if (touched[*a]) throw Error(ErrorCode::kDuplicateArcRedirect, "arc redirected twice");
        touched[*a] = 1;
        if (r.new_to == r.from) throw Error(ErrorCode::kWouldCreateCycle, "redirection onto its own source");
        if (r.new_to == r.to) throw Error(ErrorCode::kInvalidRedirection, "new target equals the old target");
        parts.arcs[*a].to = r.new_to;
        total = add_cost(total, inst.arc(*a).cost);
    }
    if (budget_check == BudgetCheck::kEnforce && total > inst.budget()) {
        throw Error(ErrorCode::kBudgetExceeded, "redirections cost more than the budget");
    }

    std::vector<std::vector<ArcIndex>> out_arcs(n);
    for (ArcIndex a = 0; a < parts.arcs.size(); ++a) {
        auto& outs = out_arcs[parts.arcs[a].from.index()];
        for (ArcIndex b : outs) {
            if (parts.arcs[b].to == parts.arcs[a].to) {
                throw Error(ErrorCode::kWouldCreateParallelArc,
                            "'" + inst.voter_name(parts.arcs[a].from) + "' would delegate to '" +
                                inst.voter_name(parts.arcs[a].to) + "' twice");
            }
        }
        outs.push_back(a);
    }
    if (!detail::delegatees_first_order(n, out_arcs, parts.arcs)) {
        throw Error(ErrorCode::kWouldCreateCycle, "redirections close a delegation cycle");
    }
    return make_instance(std::move(parts));
}

}  // namespace ccra
