// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "ccra/model.hpp"
#include "ccra/unravel.hpp"

namespace ccra {

struct ScoreBoard {
    std::vector<std::uint64_t> scores;  // indexed by candidate
    std::uint64_t counted_voters = 0;   // real voters only

    [[nodiscard]] std::uint64_t score(CandidateId c) const { return scores[c.index()]; }
    friend bool operator==(const ScoreBoard&, const ScoreBoard&) = default;
};

// Approval score: number of real voters whose resolved ballot contains the candidate.
[[nodiscard]] inline ScoreBoard approval_scores(const UnraveledProfile& profile, const Instance& inst) {
    if (profile.resolved.empty() || profile.resolved.size() != inst.num_voters()) {
        throw Error(ErrorCode::kInvalidArgument, "profile does not cover the instance's voters");
    }
    ScoreBoard board;
    board.scores.assign(inst.num_candidates(), 0);
    for (std::size_t v = 0; v < profile.resolved.size(); ++v) {
        if (inst.voters()[v].is_virtual) continue;
        ++board.counted_voters;
        for (CandidateId c : profile.resolved[v]) ++board.scores.at(c.index());
    }
    return board;
}

[[nodiscard]] inline ScoreBoard tally(const Instance& inst) { return approval_scores(unravel(inst), inst); }

enum class WinnerMode {
    kUnique,    // strictly more approvals than every other candidate
    kCoWinner,  // no other candidate has more; not used by any solver
};

[[nodiscard]] inline bool is_winner(const ScoreBoard& board, CandidateId c, WinnerMode mode) {
    const std::uint64_t mine = board.scores.at(c.index());
    for (std::size_t d = 0; d < board.scores.size(); ++d) {
        if (d == c.index()) continue;
        if (mode == WinnerMode::kUnique ? board.scores[d] >= mine : board.scores[d] > mine) return false;
    }
    return true;
}

[[nodiscard]] inline bool is_unique_winner(const ScoreBoard& board, CandidateId c) {
    return is_winner(board, c, WinnerMode::kUnique);
}

[[nodiscard]] inline std::optional<CandidateId> unique_winner(const ScoreBoard& board) {
    for (std::size_t c = 0; c < board.scores.size(); ++c) {
        if (is_unique_winner(board, CandidateId(c))) return CandidateId(c);
    }
    return std::nullopt;
}

}  // namespace ccra
