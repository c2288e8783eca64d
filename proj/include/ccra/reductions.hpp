// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Hardness gadgets. Vertex Cover on cubic graphs is treated as Hitting Set
// whose sets are the edges, so one builder serves both sources.
//
// Per element x: voter x delegates to x' at cost 1. Per set F: candidate c_F
// and an edge voter whose resolved ballot is {c_F}, padded with dummies so
// that c_F starts with exactly k approvals. One special voter v* approves c*.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccra/model.hpp"

namespace ccra {

struct CubicGraph {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // indices into vertices
};

struct SetSystem {
    std::vector<std::string> universe;
    std::vector<std::vector<std::size_t>> sets;  // indices into universe
    Cost k = 0;
};

enum class ReductionVariant { kMultiA, kMultiB, kSingleA, kSingleB };

[[nodiscard]] constexpr std::string_view to_string(ReductionVariant v) {
    switch (v) {
        case ReductionVariant::kMultiA: return "multi-a";
        case ReductionVariant::kMultiB: return "multi-b";
        case ReductionVariant::kSingleA: return "single-a";
        case ReductionVariant::kSingleB: return "single-b";
    }
    return "?";
}

[[nodiscard]] inline std::optional<ReductionVariant> parse_variant(std::string_view name) {
    for (auto v : {ReductionVariant::kMultiA, ReductionVariant::kMultiB, ReductionVariant::kSingleA,
                   ReductionVariant::kSingleB}) {
        if (to_string(v) == name) return v;
    }
    // Hitting Set variants
    if (name == "multi") return ReductionVariant::kMultiA;
    if (name == "single") return ReductionVariant::kSingleA;
    return std::nullopt;
}

[[nodiscard]] constexpr bool is_multi(ReductionVariant v) {
    return v == ReductionVariant::kMultiA || v == ReductionVariant::kMultiB;
}

struct ElementGadget {
    VoterId u;
    VoterId u_prime;
    std::optional<VoterId> u_hat;
    std::optional<VoterId> u_tilde;
};

struct SetGadget {
    std::string name;
    std::vector<std::size_t> elements;
    CandidateId candidate;
    VoterId e;
    std::optional<VoterId> e_prime;
    std::vector<VoterId> dummies;
    std::vector<std::pair<VoterId, VoterId>> dummy_arcs;  // (from, to), one per dummy
};

struct ReductionCertificate {
    ReductionVariant variant = ReductionVariant::kMultiA;
    Cost k = 0;
    std::vector<std::string> element_names;
    std::vector<std::optional<ElementGadget>> elements;  // absent for elements in no set
    std::vector<SetGadget> sets;
    VoterId v_star;
    CandidateId c_star;
    Cost element_arc_cost = 1;
    Cost dummy_arc_cost = 1;
};

struct Reduction {
    Instance instance;
    ReductionCertificate certificate;
};

[[nodiscard]] inline Cost reduction_base(ReductionVariant v, std::size_t set_size) {
    switch (v) {
        case ReductionVariant::kMultiB: return 8;
        case ReductionVariant::kSingleB: return 6;
        default: return 1 + 2 * static_cast<Cost>(set_size);
    }
}

inline CubicGraph make_cubic_graph(std::vector<std::string> vertices,
                                   const std::vector<std::pair<std::string, std::string>>& edges) {
    CubicGraph g;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!index.emplace(vertices[i], i).second) {
            throw Error(ErrorCode::kNotCubic, "duplicate vertex '" + vertices[i] + "'");
        }
    }
    g.vertices = std::move(vertices);
    for (const auto& [a, b] : edges) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) {
            throw Error(ErrorCode::kNotCubic, "edge {" + a + "," + b + "} uses an unknown vertex");
        }
        g.edges.emplace_back(ia->second, ib->second);
    }
    return g;
}

inline void check_cubic(const CubicGraph& g) {
    std::vector<int> degree(g.vertices.size(), 0);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : g.edges) {
        if (a >= g.vertices.size() || b >= g.vertices.size()) throw Error(ErrorCode::kNotCubic, "edge out of range");
        if (a == b) throw Error(ErrorCode::kNotCubic, "self-loop at '" + g.vertices[a] + "'");
        if (!seen.insert(std::minmax(a, b)).second) {
            throw Error(ErrorCode::kNotCubic, "parallel edge {" + g.vertices[a] + "," + g.vertices[b] + "}");
        }
        ++degree[a];
        ++degree[b];
    }
    for (std::size_t v = 0; v < degree.size(); ++v) {
        if (degree[v] != 3) {
            throw Error(ErrorCode::kNotCubic,
                        "vertex '" + g.vertices[v] + "' has degree " + std::to_string(degree[v]));
        }
    }
}

namespace detail {

inline Reduction build_reduction(const std::vector<std::string>& element_names,
                                 const std::vector<std::vector<std::size_t>>& sets,
                                 const std::vector<std::string>& set_names, Cost k, ReductionVariant variant) {
    const bool chain = variant == ReductionVariant::kMultiB || variant == ReductionVariant::kSingleB;
    const Cost other_cost = chain ? k + 1 : (variant == ReductionVariant::kMultiA ? 2 : 1);

    std::vector<std::vector<std::size_t>> sets_of(element_names.size());
    for (std::size_t f = 0; f < sets.size(); ++f) {
        if (sets[f].empty()) throw Error(ErrorCode::kEmptySet, "set " + set_names[f] + " is empty");
        const Cost base = reduction_base(variant, sets[f].size());
        if (k < base) {
            throw Error(ErrorCode::kBudgetTooSmall, "k = " + std::to_string(k) + " is below the gadget base " +
                                                        std::to_string(base) + " of " + set_names[f]);
        }
        for (std::size_t x : sets[f]) sets_of.at(x).push_back(f);
    }

    InstanceDraft d;
    d.budget = k;
    d.preferred = "c*";
    d.rule = UnravelRule::kUnion;
    for (const auto& name : set_names) d.candidates.push_back("c_" + name);
    d.candidates.push_back("c*");

    ReductionCertificate cert;
    cert.variant = variant;
    cert.k = k;
    cert.element_names = element_names;
    cert.elements.resize(element_names.size());
    cert.dummy_arc_cost = other_cost;
    cert.c_star = CandidateId(set_names.size());

    auto add_voter = [&](std::string name, std::optional<std::vector<std::string>> ballot = std::nullopt) {
        d.voters.push_back({std::move(name), std::move(ballot), {}, false});
        return VoterId(d.voters.size() - 1);
    };
    auto edge_voter = [&](std::size_t f) { return "e:" + set_names[f]; };

    for (std::size_t x = 0; x < element_names.size(); ++x) {
        if (sets_of[x].empty()) continue;
        const std::string& name = element_names[x];
        ElementGadget g;
        g.u = add_voter(name);
        d.voters[g.u.index()].delegates.push_back({name + "'", 1});
        if (variant == ReductionVariant::kSingleA || variant == ReductionVariant::kSingleB) {
            std::vector<std::string> ballot;
            for (std::size_t f : sets_of[x]) ballot.push_back("c_" + set_names[f]);
            g.u_prime = add_voter(name + "'", ballot);
        } else if (variant == ReductionVariant::kMultiA) {
            g.u_prime = add_voter(name + "'");
            for (std::size_t f : sets_of[x]) d.voters[g.u_prime.index()].delegates.push_back({edge_voter(f), other_cost});
        } else {
            if (sets_of[x].size() != 3) throw Error(ErrorCode::kNotCubic, "vertex '" + name + "' is not of degree 3");
            g.u_prime = add_voter(name + "'");
            g.u_hat = add_voter(name + "^");
            g.u_tilde = add_voter(name + "~");
            d.voters[g.u_prime.index()].delegates = {{name + "^", other_cost}, {name + "~", other_cost}};
            d.voters[g.u_hat->index()].delegates = {{edge_voter(sets_of[x][0]), other_cost},
                                                    {edge_voter(sets_of[x][1]), other_cost}};
            d.voters[g.u_tilde->index()].delegates = {{edge_voter(sets_of[x][2]), other_cost}};
        }
        cert.elements[x] = g;
    }

    for (std::size_t f = 0; f < sets.size(); ++f) {
        SetGadget s;
        s.name = set_names[f];
        s.elements = sets[f];
        s.candidate = CandidateId(f);
        const std::string cand = "c_" + set_names[f];
        std::string dummy_head;
        if (chain) {
            s.e = add_voter(edge_voter(f));
            s.e_prime = add_voter("e':" + set_names[f], std::vector<std::string>{cand});
            d.voters[s.e.index()].delegates.push_back({"e':" + set_names[f], other_cost});
            dummy_head = variant == ReductionVariant::kMultiB ? "e':" + set_names[f] : edge_voter(f);
        } else {
            s.e = add_voter(edge_voter(f), std::vector<std::string>{cand});
            dummy_head = edge_voter(f);
        }
        const Cost dummies = k - reduction_base(variant, sets[f].size());
        for (Cost i = 1; i <= dummies; ++i) s.dummies.push_back(add_voter("d" + std::to_string(i) + ":" + set_names[f]));
        for (std::size_t i = 0; i < s.dummies.size(); ++i) {
            const bool last = i + 1 == s.dummies.size();
            std::string head;
            VoterId head_id;
            if (!chain || last) {
                head = dummy_head;
                head_id = chain && variant == ReductionVariant::kMultiB ? *s.e_prime : s.e;
            } else {
                head = d.voters[s.dummies[i + 1].index()].name;
                head_id = s.dummies[i + 1];
            }
            d.voters[s.dummies[i].index()].delegates.push_back({head, other_cost});
            s.dummy_arcs.emplace_back(s.dummies[i], head_id);
        }
        cert.sets.push_back(std::move(s));
    }
    cert.v_star = add_voter("v*", std::vector<std::string>{"c*"});
    return {validate_instance(d), std::move(cert)};
}

}  // namespace detail

inline Reduction reduce_vertex_cover(const CubicGraph& g, Cost k, ReductionVariant variant) {
    check_cubic(g);
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::string> names;
    for (auto [a, b] : g.edges) {
        sets.push_back({a, b});
        names.push_back(g.vertices[a] + "-" + g.vertices[b]);
    }
    return detail::build_reduction(g.vertices, sets, names, k, variant);
}

inline Reduction reduce_hitting_set(const SetSystem& s, ReductionVariant variant) {
    if (variant == ReductionVariant::kMultiB || variant == ReductionVariant::kSingleB) {
        throw Error(ErrorCode::kInvalidArgument, "hitting set reductions come in the multi and single variants");
    }
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::string> names;
    for (std::size_t f = 0; f < s.sets.size(); ++f) {
        std::vector<std::size_t> members = s.sets[f];
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (std::size_t x : members) {
            if (x >= s.universe.size()) throw Error(ErrorCode::kUnknownId, "set member outside the universe");
        }
        sets.push_back(std::move(members));
        names.push_back("F" + std::to_string(f + 1));
    }
    return detail::build_reduction(s.universe, sets, names, s.k, variant);
}

// The redirection set from the proof: every cover element's arc (x, x') goes
// to v*. The cover is first padded with further elements up to k, then any
// budget left over moves dummies to v*.
inline std::vector<Redirection> forward_certificate(const ReductionCertificate& cert,
                                                    std::span<const std::string> cover) {
    std::vector<char> chosen(cert.element_names.size(), 0);
    for (const auto& name : cover) {
        auto it = std::find(cert.element_names.begin(), cert.element_names.end(), name);
        if (it == cert.element_names.end()) throw Error(ErrorCode::kNotACover, "unknown element '" + name + "'");
        chosen[static_cast<std::size_t>(it - cert.element_names.begin())] = 1;
    }
    for (const auto& s : cert.sets) {
        if (std::none_of(s.elements.begin(), s.elements.end(), [&](std::size_t x) { return chosen[x] != 0; })) {
            throw Error(ErrorCode::kNotACover, "set " + s.name + " is not hit");
        }
    }
    std::vector<std::size_t> picked;
    for (std::size_t x = 0; x < chosen.size(); ++x) {
        if (chosen[x] && cert.elements[x]) picked.push_back(x);
    }
    if (picked.size() * cert.element_arc_cost > cert.k) {
        throw Error(ErrorCode::kBudgetExceeded,
                    "cover of size " + std::to_string(picked.size()) + " exceeds k = " + std::to_string(cert.k));
    }
    for (std::size_t x = 0; x < chosen.size() && (picked.size() + 1) * cert.element_arc_cost <= cert.k; ++x) {
        if (!chosen[x] && cert.elements[x]) picked.push_back(x);
    }

    std::vector<Redirection> out;
    for (std::size_t x : picked) out.push_back({cert.elements[x]->u, cert.elements[x]->u_prime, cert.v_star});
    Cost left = cert.k - picked.size() * cert.element_arc_cost;
    for (const auto& s : cert.sets) {
        for (const auto& [from, to] : s.dummy_arcs) {
            if (cert.dummy_arc_cost > left) break;
            out.push_back({from, to, cert.v_star});
            left -= cert.dummy_arc_cost;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ccra
