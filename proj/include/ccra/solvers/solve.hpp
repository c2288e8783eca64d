// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccra/preprocess.hpp"
#include "ccra/solution.hpp"
#include "ccra/solvers/brute_force.hpp"
#include "ccra/solvers/fptas.hpp"
#include "ccra/solvers/tree_dp.hpp"
#include "ccra/solvers/xp.hpp"

namespace ccra {

enum class Algorithm { kAuto, kBrute, kTreeDp, kXp, kFptas };

[[nodiscard]] constexpr std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::kAuto: return "auto";
        case Algorithm::kBrute: return "brute";
        case Algorithm::kTreeDp: return "tree-dp";
        case Algorithm::kXp: return "xp";
        case Algorithm::kFptas: return "fptas";
    }
    return "?";
}

[[nodiscard]] inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::kAuto, Algorithm::kBrute, Algorithm::kTreeDp, Algorithm::kXp, Algorithm::kFptas}) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

struct SolveOptions {
    Algorithm algorithm = Algorithm::kAuto;
    double epsilon = 0.5;                         // fptas only
    bool preprocess = false;                      // brute only; the others always preprocess
    std::optional<std::vector<VoterId>> targets;  // brute only
    std::uint64_t guess_limit = 100'000'000;
    // auto picks xp only up to this many active voters after preprocessing
    std::size_t xp_max_active = 4;
};

struct SolveReport {
    Algorithm algorithm = Algorithm::kAuto;  // the one that actually ran
    std::uint64_t guesses_explored = 0;
    double wall_ms = 0;
    bool preprocessed = false;
    std::string note;
};

struct SolveOutcome {
    std::optional<Solution> solution;
    SolveReport report;
};

[[nodiscard]] inline Algorithm choose_algorithm(const Instance& inst, const SolveOptions& options) {
    if (options.algorithm != Algorithm::kAuto) return options.algorithm;
    const auto& st = inst.stats();
    if (!st.single_delegation()) return Algorithm::kBrute;
    if (st.max_ballot_size <= 1) return Algorithm::kTreeDp;
    std::vector<Ballot> classes;
    for (VoterId v : inst.active_voters()) classes.push_back(*inst.ballot(v));
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes.size() <= options.xp_max_active ? Algorithm::kXp : Algorithm::kBrute;
}

inline SolveOutcome solve(const Instance& inst, const SolveOptions& options = {}) {
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    out.report.algorithm = choose_algorithm(inst, options);
    SolverResult r;
    switch (out.report.algorithm) {
        case Algorithm::kBrute: {
            BruteForceOptions bo{options.targets, options.guess_limit, {}};
            if (options.preprocess) {
                const Preprocessed pre = preprocess_with_map(inst);
                bo.admissible = [&](std::span<const Redirection> s) { return can_map_to_original(pre, inst, s); };
                r = solve_brute_force(pre.instance, bo);
                if (r.solution) {
                    r.solution = finalize_solution(inst, map_to_original(pre, inst, r.solution->redirections));
                }
                out.report.preprocessed = true;
            } else {
                r = solve_brute_force(inst, bo);
            }
            break;
        }
        case Algorithm::kTreeDp:
            r = solve_single_single(inst);
            out.report.preprocessed = true;
            break;
        case Algorithm::kXp:
            r = solve_xp_active(inst, {options.guess_limit});
            out.report.preprocessed = true;
            break;
        case Algorithm::kFptas:
            r = solve_fptas(inst, options.epsilon, {options.guess_limit});
            out.report.preprocessed = true;
            break;
        case Algorithm::kAuto: break;
    }
    out.solution = std::move(r.solution);
    out.report.guesses_explored = r.guesses_explored;
    out.report.note = std::move(r.note);
    if (options.algorithm == Algorithm::kAuto && out.report.algorithm != Algorithm::kFptas &&
        is_special_setting(inst)) {
        if (!out.report.note.empty()) out.report.note += "; ";
        out.report.note += "fptas applicable";
    }
    out.report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace ccra
