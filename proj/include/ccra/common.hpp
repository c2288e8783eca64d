// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Identifiers, cost arithmetic and the error type shared by every module.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ccra {

template <class Tag>
struct StrongId {
    std::uint32_t value = 0;

    constexpr StrongId() = default;
    constexpr explicit StrongId(std::uint32_t v) : value(v) {}
    constexpr explicit StrongId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
    constexpr explicit StrongId(int v) : value(static_cast<std::uint32_t>(v)) {}

    [[nodiscard]] constexpr std::size_t index() const { return value; }

    friend constexpr auto operator<=>(StrongId, StrongId) = default;
};

using VoterId = StrongId<struct VoterTag>;
using CandidateId = StrongId<struct CandidateTag>;
using ArcIndex = std::size_t;

// Redirect costs. kInfiniteCost never fits a finite budget and absorbs addition.
using Cost = std::uint64_t;
inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max();

[[nodiscard]] constexpr Cost add_cost(Cost a, Cost b) {
    if (a == kInfiniteCost || b == kInfiniteCost) return kInfiniteCost;
    if (a > kInfiniteCost - 1 - b) return kInfiniteCost;
    return a + b;
}

[[nodiscard]] constexpr bool is_finite(Cost c) { return c != kInfiniteCost; }

enum class ErrorCode {
    kCycleDetected,
    kBallotOnPassiveVoter,
    kMissingBallotOnActiveVoter,
    kParallelArc,
    kUnknownId,
    kEmptyBallot,
    kDuplicateName,
    kSelfDelegation,
    kNoVoters,
    kNoCandidates,
    kArcNotFound,
    kDuplicateArcRedirect,
    kInvalidRedirection,
    kWouldCreateCycle,
    kWouldCreateParallelArc,
    kBudgetExceeded,
    kEmptyInput,
    kInstanceTooLarge,
    kNotSingleDelegation,
    kNotActiveRoot,
    kNotSingleApproval,
    kGuessSpaceTooLarge,
    kNotSpecialSetting,
    kInvalidEpsilon,
    kNotCubic,
    kBudgetTooSmall,
    kEmptySet,
    kNotACover,
    kInvalidConfig,
    kParseError,
    kInvalidArgument,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kCycleDetected: return "CycleDetected";
        case ErrorCode::kBallotOnPassiveVoter: return "BallotOnPassiveVoter";
        case ErrorCode::kMissingBallotOnActiveVoter: return "MissingBallotOnActiveVoter";
        case ErrorCode::kParallelArc: return "ParallelArc";
        case ErrorCode::kUnknownId: return "UnknownId";
        case ErrorCode::kEmptyBallot: return "EmptyBallot";
        case ErrorCode::kDuplicateName: return "DuplicateName";
        case ErrorCode::kSelfDelegation: return "SelfDelegation";
        case ErrorCode::kNoVoters: return "NoVoters";
        case ErrorCode::kNoCandidates: return "NoCandidates";
        case ErrorCode::kArcNotFound: return "ArcNotFound";
        case ErrorCode::kDuplicateArcRedirect: return "DuplicateArcRedirect";
        case ErrorCode::kInvalidRedirection: return "InvalidRedirection";
        case ErrorCode::kWouldCreateCycle: return "WouldCreateCycle";
        case ErrorCode::kWouldCreateParallelArc: return "WouldCreateParallelArc";
        case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
        case ErrorCode::kEmptyInput: return "EmptyInput";
        case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
        case ErrorCode::kNotSingleDelegation: return "NotSingleDelegation";
        case ErrorCode::kNotActiveRoot: return "NotActiveRoot";
        case ErrorCode::kNotSingleApproval: return "NotSingleApproval";
        case ErrorCode::kGuessSpaceTooLarge: return "GuessSpaceTooLarge";
        case ErrorCode::kNotSpecialSetting: return "NotSpecialSetting";
        case ErrorCode::kInvalidEpsilon: return "InvalidEpsilon";
        case ErrorCode::kNotCubic: return "NotCubic";
        case ErrorCode::kBudgetTooSmall: return "BudgetTooSmall";
        case ErrorCode::kEmptySet: return "EmptySet";
        case ErrorCode::kNotACover: return "NotACover";
        case ErrorCode::kInvalidConfig: return "InvalidConfig";
        case ErrorCode::kParseError: return "ParseError";
        case ErrorCode::kInvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace ccra

template <class Tag>
struct std::hash<ccra::StrongId<Tag>> {
    std::size_t operator()(ccra::StrongId<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
