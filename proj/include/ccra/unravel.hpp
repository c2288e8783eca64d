// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Transitive resolution of delegations. A passive voter's ballot is the
// unraveling rule applied to the resolved ballots of its delegates, which are
// resolved first (reverse topological order).
//
// The three rules are implemented once over fixed-width bitsets; the public
// Ballot-level functions and ProfileEvaluator both go through that kernel.

#include <algorithm>
#include <span>
#include <vector>

#include "ccra/ballot.hpp"
#include "ccra/model.hpp"

namespace ccra {

struct UnraveledProfile {
    std::vector<Ballot> resolved;  // indexed by voter

    [[nodiscard]] const Ballot& of(VoterId v) const { return resolved[v.index()]; }
    friend bool operator==(const UnraveledProfile&, const UnraveledProfile&) = default;
};

namespace detail {

struct RuleScratch {
    std::vector<std::uint32_t> counts;
    std::vector<char> alive;
    std::vector<Word> chosen;
};

inline void count_approvals(std::span<const Word* const> inputs, const std::vector<char>* alive,
                            std::size_t num_candidates, std::vector<std::uint32_t>& counts) {
    counts.assign(num_candidates, 0);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (alive && !(*alive)[i]) continue;
        for (std::size_t c = 0; c < num_candidates; ++c) counts[c] += test_bit(inputs[i], c) ? 1U : 0U;
    }
}

// Writes the candidates attaining the maximum count into `out`; returns that maximum.
inline std::uint32_t select_top(const std::vector<std::uint32_t>& counts, Word* out, std::size_t words) {
    std::fill(out, out + words, Word{0});
    std::uint32_t best = 0;
    for (auto c : counts) best = std::max(best, c);
    if (best == 0) return 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == best) out[c / 64] |= Word{1} << (c % 64);
    }
    return best;
}

inline void apply_rule(UnravelRule rule, std::span<const Word* const> inputs, std::size_t num_candidates, Word* out,
                       RuleScratch& scratch) {
    const std::size_t words = words_for(num_candidates);
    std::fill(out, out + words, Word{0});
    switch (rule) {
        case UnravelRule::kUnion:
            for (const Word* in : inputs) {
                for (std::size_t w = 0; w < words; ++w) out[w] |= in[w];
            }
            return;
        case UnravelRule::kApproval:
            count_approvals(inputs, nullptr, num_candidates, scratch.counts);
            select_top(scratch.counts, out, words);
            return;
        case UnravelRule::kGreedyMrc: {
            scratch.alive.assign(inputs.size(), 1);
            scratch.chosen.assign(words, 0);
            std::size_t remaining = inputs.size();
            while (remaining > 0) {
                count_approvals(inputs, &scratch.alive, num_candidates, scratch.counts);
                if (select_top(scratch.counts, scratch.chosen.data(), words) == 0) break;
                for (std::size_t w = 0; w < words; ++w) out[w] |= scratch.chosen[w];
                for (std::size_t i = 0; i < inputs.size(); ++i) {
                    if (!scratch.alive[i]) continue;
                    for (std::size_t w = 0; w < words; ++w) {
                        if (inputs[i][w] & scratch.chosen[w]) {
                            scratch.alive[i] = 0;
                            --remaining;
                            break;
                        }
                    }
                }
            }
            return;
        }
    }
}

inline Ballot apply_rule_to_ballots(UnravelRule rule, std::span<const Ballot> ballots) {
    if (ballots.empty()) throw Error(ErrorCode::kEmptyInput, "unraveling rule needs at least one ballot");
    std::size_t m = 0;
    for (const auto& b : ballots) {
        if (b.empty()) throw Error(ErrorCode::kEmptyInput, "unraveling rule input contains an empty ballot");
        m = std::max(m, b.candidates().back().index() + 1);
    }
    const std::size_t words = words_for(m);
    std::vector<Word> storage(words * (ballots.size() + 1));
    std::vector<const Word*> inputs;
    for (std::size_t i = 0; i < ballots.size(); ++i) {
        encode(ballots[i], storage.data() + i * words, words);
        inputs.push_back(storage.data() + i * words);
    }
    detail::Word* out = storage.data() + ballots.size() * words;
    RuleScratch scratch;
    apply_rule(rule, inputs, m, out, scratch);
    return decode(out, m);
}

}  // namespace detail

[[nodiscard]] inline Ballot rule_union(std::span<const Ballot> ballots) {
    return detail::apply_rule_to_ballots(UnravelRule::kUnion, ballots);
}

// Candidates approved by the largest number of input ballots (a multiset).
[[nodiscard]] inline Ballot rule_approval(std::span<const Ballot> ballots) {
    return detail::apply_rule_to_ballots(UnravelRule::kApproval, ballots);
}

// Repeatedly adds every candidate of maximum approval count among the
// remaining ballots, then drops the ballots that approve any of them, until
// no ballot remains.
[[nodiscard]] inline Ballot rule_greedy_mrc(std::span<const Ballot> ballots) {
    return detail::apply_rule_to_ballots(UnravelRule::kGreedyMrc, ballots);
}

[[nodiscard]] inline Ballot apply_unravel_rule(UnravelRule rule, std::span<const Ballot> ballots) {
    return detail::apply_rule_to_ballots(rule, ballots);
}

// Evaluates an instance under alternative arc heads without building new
// Instance objects. Buffers are reused across calls, so one evaluator must
// not be shared between threads.
class ProfileEvaluator {
  public:
    explicit ProfileEvaluator(const Instance& inst)
        : inst_(&inst),
          n_(inst.num_voters()),
          m_(inst.num_candidates()),
          words_(detail::words_for(inst.num_candidates())),
          resolved_(n_ * words_, 0),
          scores_(m_, 0),
          color_(n_, 0) {
        for (std::size_t v = 0; v < n_; ++v) {
            if (const auto& b = inst.ballot(VoterId(v))) detail::encode(*b, resolved_.data() + v * words_, words_);
        }
        declared_ = resolved_;
        heads_.reserve(inst.num_arcs());
        for (const auto& arc : inst.arcs()) heads_.push_back(arc.to);
    }

    // Resolve with arc heads replaced by `heads` (one entry per arc). Returns
    // false when the modified graph has a cycle.
    bool evaluate(std::span<const VoterId> heads) {
        std::copy(heads.begin(), heads.end(), heads_.begin());
        if (!order()) return false;
        for (VoterId v : order_) {
            auto outs = inst_->out_arcs(v);
            detail::Word* out = resolved_.data() + v.index() * words_;
            if (outs.empty()) {
                std::copy_n(declared_.data() + v.index() * words_, words_, out);
                continue;
            }
            inputs_.clear();
            for (ArcIndex a : outs) inputs_.push_back(resolved_.data() + heads_[a].index() * words_);
            detail::apply_rule(inst_->rule(), inputs_, m_, out, scratch_);
        }
        std::fill(scores_.begin(), scores_.end(), 0);
        for (std::size_t v = 0; v < n_; ++v) {
            if (inst_->voters()[v].is_virtual) continue;
            const detail::Word* b = resolved_.data() + v * words_;
            for (std::size_t c = 0; c < m_; ++c) scores_[c] += detail::test_bit(b, c) ? 1U : 0U;
        }
        return true;
    }

    bool evaluate_original() {
        std::vector<VoterId> heads;
        for (const auto& arc : inst_->arcs()) heads.push_back(arc.to);
        return evaluate(heads);
    }

    [[nodiscard]] const std::vector<std::uint64_t>& scores() const { return scores_; }

    [[nodiscard]] bool preferred_is_unique_winner() const {
        const std::size_t star = inst_->preferred().index();
        for (std::size_t c = 0; c < m_; ++c) {
            if (c != star && scores_[c] >= scores_[star]) return false;
        }
        return true;
    }

    [[nodiscard]] Ballot resolved(VoterId v) const { return detail::decode(resolved_.data() + v.index() * words_, m_); }

  private:
    bool order() {
        order_.clear();
        std::fill(color_.begin(), color_.end(), 0);
        for (std::size_t s = 0; s < n_; ++s) {
            if (color_[s] != 0) continue;
            stack_.clear();
            stack_.emplace_back(s, 0);
            color_[s] = 1;
            while (!stack_.empty()) {
                auto& [v, pos] = stack_.back();
                auto outs = inst_->out_arcs(VoterId(v));
                if (pos < outs.size()) {
                    std::size_t next = heads_[outs[pos++]].index();
                    if (color_[next] == 1) return false;
                    if (color_[next] == 0) {
                        color_[next] = 1;
                        stack_.emplace_back(next, 0);
                    }
                } else {
                    color_[v] = 2;
                    order_.emplace_back(v);
                    stack_.pop_back();
                }
            }
        }
        return true;
    }

    const Instance* inst_;
    std::size_t n_;
    std::size_t m_;
    std::size_t words_;
    std::vector<detail::Word> resolved_;
    std::vector<detail::Word> declared_;
    std::vector<std::uint64_t> scores_;
    std::vector<VoterId> heads_;
    std::vector<VoterId> order_;
    std::vector<char> color_;
    std::vector<std::pair<std::size_t, std::size_t>> stack_;
    std::vector<const detail::Word*> inputs_;
    detail::RuleScratch scratch_;
};

// Delegate ballots are passed to the rule ordered by delegate voter index.
[[nodiscard]] inline UnraveledProfile unravel(const Instance& inst) {
    UnraveledProfile profile;
    profile.resolved.resize(inst.num_voters());
    std::vector<Ballot> inputs;
    std::vector<VoterId> delegates;
    for (VoterId v : inst.topological_order()) {
        auto outs = inst.out_arcs(v);
        if (outs.empty()) {
            profile.resolved[v.index()] = *inst.ballot(v);
            continue;
        }
        delegates.clear();
        for (ArcIndex a : outs) delegates.push_back(inst.arc(a).to);
        std::sort(delegates.begin(), delegates.end());
        inputs.clear();
        for (VoterId d : delegates) inputs.push_back(profile.resolved[d.index()]);
        profile.resolved[v.index()] = apply_unravel_rule(inst.rule(), inputs);
    }
    return profile;
}

}  // namespace ccra
