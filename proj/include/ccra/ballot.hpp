// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "ccra/common.hpp"

namespace ccra {

// An approval ballot: a set of candidates, kept sorted and duplicate free.
class Ballot {
  public:
    using const_iterator = std::vector<CandidateId>::const_iterator;

    Ballot() = default;
    Ballot(std::initializer_list<CandidateId> ids) : ids_(ids) { normalize(); }
    explicit Ballot(std::vector<CandidateId> ids) : ids_(std::move(ids)) { normalize(); }

    [[nodiscard]] bool contains(CandidateId c) const { return std::binary_search(ids_.begin(), ids_.end(), c); }
    [[nodiscard]] std::size_t size() const { return ids_.size(); }
    [[nodiscard]] bool empty() const { return ids_.empty(); }
    [[nodiscard]] const_iterator begin() const { return ids_.begin(); }
    [[nodiscard]] const_iterator end() const { return ids_.end(); }
    [[nodiscard]] const std::vector<CandidateId>& candidates() const { return ids_; }

    void insert(CandidateId c) {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), c);
        if (it == ids_.end() || *it != c) ids_.insert(it, c);
    }

    [[nodiscard]] bool intersects(const Ballot& other) const {
        auto a = ids_.begin();
        auto b = other.ids_.begin();
        while (a != ids_.end() && b != other.ids_.end()) {
            if (*a == *b) return true;
            if (*a < *b) {
                ++a;
            } else {
                ++b;
            }
        }
        return false;
    }

    [[nodiscard]] bool is_subset_of(const Ballot& other) const {
        return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
    }

    friend bool operator==(const Ballot&, const Ballot&) = default;
    friend auto operator<=>(const Ballot&, const Ballot&) = default;

  private:
    void normalize() {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    std::vector<CandidateId> ids_;
};

namespace detail {

// Fixed-width bitset encoding used by the hot evaluation paths.
using Word = std::uint64_t;

[[nodiscard]] inline std::size_t words_for(std::size_t num_candidates) { return (num_candidates + 63) / 64; }

inline void encode(const Ballot& ballot, Word* out, std::size_t words) {
    std::fill(out, out + words, Word{0});
    for (CandidateId c : ballot) out[c.index() / 64] |= Word{1} << (c.index() % 64);
}

[[nodiscard]] inline Ballot decode(const Word* in, std::size_t num_candidates) {
    std::vector<CandidateId> ids;
    for (std::size_t c = 0; c < num_candidates; ++c) {
        if ((in[c / 64] >> (c % 64)) & 1U) ids.emplace_back(c);
    }
    return Ballot(std::move(ids));
}

[[nodiscard]] inline bool test_bit(const Word* in, std::size_t c) { return ((in[c / 64] >> (c % 64)) & 1U) != 0; }

}  // namespace detail
}  // namespace ccra
