// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ccra/model.hpp"
#include "ccra/reductions.hpp"
#include "ccra/solvers/solve.hpp"
#include "ccra/tally.hpp"
#include "ccra/unravel.hpp"

namespace ccra {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(where + ": missing \"" + key + "\"");
    return *it;
}

inline std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) parse_fail(where + ": expected a string");
    return j.get<std::string>();
}

// Element labels may be written as numbers in source files.
inline std::string as_label(const Json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return j.dump();
    parse_fail(where + ": expected a string or integer label");
}

inline std::vector<std::string> as_strings(const Json& j, const std::string& where) {
    if (!j.is_array()) parse_fail(where + ": expected an array");
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(as_string(x, where));
    return out;
}

}  // namespace detail

[[nodiscard]] inline Cost cost_from_json(const Json& j, const std::string& where = "cost") {
    if (j.is_string() && j.get<std::string>() == "inf") return kInfiniteCost;
    if (j.is_number_unsigned()) return j.get<Cost>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<Cost>(j.get<std::int64_t>());
    detail::parse_fail(where + ": expected a nonnegative integer or \"inf\"");
}

[[nodiscard]] inline Json cost_to_json(Cost c) { return is_finite(c) ? Json(c) : Json("inf"); }

[[nodiscard]] inline InstanceDraft draft_from_json(const Json& j) {
    if (!j.is_object()) detail::parse_fail("instance: expected an object");
    InstanceDraft d;
    d.candidates = detail::as_strings(detail::field(j, "candidates", "instance"), "candidates");
    d.preferred = detail::as_string(detail::field(j, "preferred", "instance"), "preferred");
    d.budget = cost_from_json(detail::field(j, "budget", "instance"), "budget");
    if (auto it = j.find("rule"); it != j.end()) {
        auto rule = parse_rule(detail::as_string(*it, "rule"));
        if (!rule) detail::parse_fail("rule: unknown unraveling rule " + it->dump());
        d.rule = *rule;
    }
    const Json& voters = detail::field(j, "voters", "instance");
    if (!voters.is_array()) detail::parse_fail("voters: expected an array");
    for (const auto& v : voters) {
        if (!v.is_object()) detail::parse_fail("voters: expected objects");
        DraftVoter dv;
        dv.name = detail::as_string(detail::field(v, "id", "voter"), "voter id");
        const std::string where = "voter " + dv.name;
        if (auto it = v.find("ballot"); it != v.end()) dv.ballot = detail::as_strings(*it, where + " ballot");
        if (auto it = v.find("delegates"); it != v.end()) {
            if (!it->is_array()) detail::parse_fail(where + ": delegates must be an array");
            for (const auto& del : *it) {
                if (!del.is_object()) detail::parse_fail(where + ": delegation must be an object");
                DraftDelegation dd;
                dd.to = detail::as_string(detail::field(del, "to", where), where + " delegate");
                if (auto c = del.find("cost"); c != del.end()) dd.cost = cost_from_json(*c, where + " cost");
                dv.delegates.push_back(std::move(dd));
            }
        }
        if (auto it = v.find("virtual"); it != v.end()) {
            if (!it->is_boolean()) detail::parse_fail(where + ": virtual must be a boolean");
            dv.is_virtual = it->get<bool>();
        }
        d.voters.push_back(std::move(dv));
    }
    return d;
}

[[nodiscard]] inline Json draft_to_json(const InstanceDraft& d) {
    Json j;
    j["candidates"] = d.candidates;
    j["preferred"] = d.preferred;
    j["budget"] = cost_to_json(d.budget);
    j["rule"] = std::string(to_string(d.rule));
    Json voters = Json::array();
    for (const auto& v : d.voters) {
        Json jv;
        jv["id"] = v.name;
        if (v.ballot) jv["ballot"] = *v.ballot;
        if (!v.delegates.empty()) {
            Json dels = Json::array();
            for (const auto& del : v.delegates) dels.push_back({{"to", del.to}, {"cost", cost_to_json(del.cost)}});
            jv["delegates"] = std::move(dels);
        }
        if (v.is_virtual) jv["virtual"] = true;
        voters.push_back(std::move(jv));
    }
    j["voters"] = std::move(voters);
    return j;
}

[[nodiscard]] inline Json instance_to_json(const Instance& inst) { return draft_to_json(to_draft(inst)); }

[[nodiscard]] inline Instance instance_from_json(const Json& j) { return validate_instance(draft_from_json(j)); }

[[nodiscard]] inline Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        detail::parse_fail(e.what());
    }
}

[[nodiscard]] inline Instance parse_instance(std::string_view text) { return instance_from_json(parse_json_text(text)); }

[[nodiscard]] inline Json ballot_to_json(const Instance& inst, const Ballot& b) {
    Json j = Json::array();
    for (CandidateId c : b) j.push_back(inst.candidate_name(c));
    return j;
}

[[nodiscard]] inline Json profile_to_json(const Instance& inst, const UnraveledProfile& profile) {
    Json resolved = Json::object();
    for (std::size_t v = 0; v < inst.num_voters(); ++v) {
        resolved[inst.voter_name(VoterId(v))] = ballot_to_json(inst, profile.resolved[v]);
    }
    return {{"resolved", std::move(resolved)}};
}

[[nodiscard]] inline Json scores_to_json(const Instance& inst, const ScoreBoard& board) {
    Json j = Json::object();
    for (std::size_t c = 0; c < inst.num_candidates(); ++c) j[inst.candidate_name(CandidateId(c))] = board.scores[c];
    return j;
}

[[nodiscard]] inline Json tally_to_json(const Instance& inst, const ScoreBoard& board) {
    Json j;
    j["scores"] = scores_to_json(inst, board);
    const auto w = unique_winner(board);
    j["unique_winner"] = w ? Json(inst.candidate_name(*w)) : Json(nullptr);
    return j;
}

[[nodiscard]] inline Json stats_to_json(const InstanceStats& s) {
    return {{"n", s.n},
            {"m", s.m},
            {"t", s.t},
            {"max_out_degree", s.max_out_degree},
            {"max_in_degree", s.max_in_degree},
            {"longest_path", s.longest_path},
            {"max_ballot_size", s.max_ballot_size}};
}

[[nodiscard]] inline Json redirections_to_json(const Instance& inst, std::span<const Redirection> redirections) {
    Json out = Json::array();
    for (const auto& r : redirections) {
        const auto a = inst.find_arc(r.from, r.to);
        out.push_back({{"from", inst.voter_name(r.from)},
                       {"old_to", inst.voter_name(r.to)},
                       {"new_to", inst.voter_name(r.new_to)},
                       {"cost", a ? cost_to_json(inst.arc(*a).cost) : Json(nullptr)}});
    }
    return out;
}

[[nodiscard]] inline Json solve_to_json(const Instance& inst, const SolveOutcome& outcome) {
    Json j;
    j["feasible"] = outcome.solution.has_value();
    j["cost"] = outcome.solution ? Json(outcome.solution->total_cost) : Json(nullptr);
    j["redirections"] = outcome.solution ? redirections_to_json(inst, outcome.solution->redirections) : Json::array();
    j["scores_after"] = outcome.solution ? scores_to_json(inst, outcome.solution->scores_after) : Json(nullptr);
    j["algo"] = std::string(to_string(outcome.report.algorithm));
    Json stats = stats_to_json(inst.stats());
    stats["guesses_explored"] = outcome.report.guesses_explored;
    stats["wall_ms"] = outcome.report.wall_ms;
    stats["preprocessed"] = outcome.report.preprocessed;
    if (!outcome.report.note.empty()) stats["note"] = outcome.report.note;
    j["stats"] = std::move(stats);
    return j;
}

[[nodiscard]] inline std::vector<Redirection> redirections_from_json(const Instance& inst, const Json& j) {
    if (!j.is_array()) detail::parse_fail("redirections: expected an array");
    std::vector<Redirection> out;
    auto voter = [&](const Json& x, const char* key) {
        const std::string name = detail::as_string(detail::field(x, key, "redirection"), key);
        auto v = inst.find_voter(name);
        if (!v) throw Error(ErrorCode::kUnknownId, "unknown voter '" + name + "'");
        return *v;
    };
    for (const auto& x : j) out.push_back({voter(x, "from"), voter(x, "old_to"), voter(x, "new_to")});
    return out;
}

[[nodiscard]] inline CubicGraph graph_from_json(const Json& j) {
    if (!j.is_object()) detail::parse_fail("graph: expected an object");
    const Json& vs = detail::field(j, "vertices", "graph");
    const Json& es = detail::field(j, "edges", "graph");
    if (!vs.is_array() || !es.is_array()) detail::parse_fail("graph: vertices and edges must be arrays");
    std::vector<std::string> vertices;
    for (const auto& v : vs) vertices.push_back(detail::as_label(v, "vertex"));
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : es) {
        if (!e.is_array() || e.size() != 2) detail::parse_fail("graph: every edge is a pair of vertices");
        edges.emplace_back(detail::as_label(e[0], "edge"), detail::as_label(e[1], "edge"));
    }
    return make_cubic_graph(std::move(vertices), edges);
}

[[nodiscard]] inline Json graph_to_json(const CubicGraph& g) {
    Json edges = Json::array();
    for (auto [a, b] : g.edges) edges.push_back({g.vertices[a], g.vertices[b]});
    return {{"vertices", g.vertices}, {"edges", std::move(edges)}};
}

[[nodiscard]] inline SetSystem set_system_from_json(const Json& j) {
    if (!j.is_object()) detail::parse_fail("set system: expected an object");
    SetSystem s;
    const Json& u = detail::field(j, "universe", "set system");
    if (!u.is_array()) detail::parse_fail("universe: expected an array");
    for (const auto& x : u) s.universe.push_back(detail::as_label(x, "universe"));
    const Json& sets = detail::field(j, "sets", "set system");
    if (!sets.is_array()) detail::parse_fail("sets: expected an array");
    for (const auto& f : sets) {
        if (!f.is_array()) detail::parse_fail("sets: every set is an array");
        std::vector<std::size_t> members;
        for (const auto& x : f) {
            const std::string label = detail::as_label(x, "set member");
            auto it = std::find(s.universe.begin(), s.universe.end(), label);
            if (it == s.universe.end()) throw Error(ErrorCode::kUnknownId, "set member '" + label + "' not in universe");
            members.push_back(static_cast<std::size_t>(it - s.universe.begin()));
        }
        s.sets.push_back(std::move(members));
    }
    s.k = cost_from_json(detail::field(j, "k", "set system"), "k");
    return s;
}

}  // namespace ccra
