// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ccra/model.hpp"

namespace ccra {

struct BudgetPolicy {
    enum class Kind { kFixed, kFraction };
    Kind kind = Kind::kFixed;
    Cost fixed = 0;
    // budget = floor(total finite arc cost * numerator / denominator)
    std::uint64_t numerator = 1;
    std::uint64_t denominator = 2;

    static BudgetPolicy fixed_at(Cost b) { return {Kind::kFixed, b, 1, 1}; }
    static BudgetPolicy fraction(std::uint64_t num, std::uint64_t den) { return {Kind::kFraction, 0, num, den}; }
};

struct GenConfig {
    std::size_t n = 8;
    std::size_t m = 3;
    std::size_t max_out_degree = 1;
    std::size_t max_ballot_size = 1;
    Cost max_cost = 1;
    BudgetPolicy budget = BudgetPolicy::fraction(1, 2);
    std::uint64_t seed = 0;
    UnravelRule rule = UnravelRule::kUnion;
};

// Integer-only sampling; std distributions differ between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo;
        if (span == std::numeric_limits<std::uint64_t>::max()) return engine_();
        const std::uint64_t range = span + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % range;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return lo + x % range;
    }

    // `count` distinct values of [0, n) in sampling order.
    std::vector<std::size_t> sample(std::size_t n, std::size_t count) {
        std::vector<std::size_t> pool(n);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[between(i, n - 1)]);
        pool.resize(count);
        return pool;
    }

private:
    std::mt19937_64 engine_;
};

inline void check_config(const GenConfig& cfg) {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); };
    if (cfg.n < 1) fail("n must be at least 1");
    if (cfg.m < 2) fail("m must be at least 2");
    if (cfg.max_out_degree < 1) fail("max_out_degree must be at least 1");
    if (cfg.max_ballot_size < 1) fail("max_ballot_size must be at least 1");
    if (cfg.max_cost < 1 || !is_finite(cfg.max_cost)) fail("max_cost must be a positive integer");
    if (cfg.budget.kind == BudgetPolicy::Kind::kFraction && cfg.budget.denominator == 0) fail("zero denominator");
}

[[nodiscard]] inline InstanceDraft gen_random_draft(const GenConfig& cfg) {
    check_config(cfg);
    Rng rng(cfg.seed);
    InstanceDraft d;
    d.candidates.push_back("cstar");
    for (std::size_t c = 1; c < cfg.m; ++c) d.candidates.push_back("c" + std::to_string(c));
    d.preferred = "cstar";
    d.rule = cfg.rule;

    Cost total = 0;
    for (std::size_t i = 0; i < cfg.n; ++i) {
        DraftVoter v;
        v.name = "v" + std::to_string(i);
        const std::size_t out = rng.between(0, std::min(cfg.max_out_degree, i));
        if (out == 0) {
            const std::size_t size = rng.between(1, std::min(cfg.max_ballot_size, cfg.m));
            auto picked = rng.sample(cfg.m, size);
            std::sort(picked.begin(), picked.end());
            v.ballot.emplace();
            for (std::size_t c : picked) v.ballot->push_back(d.candidates[c]);
        } else {
            for (std::size_t to : rng.sample(i, out)) {
                const Cost c = rng.between(1, cfg.max_cost);
                v.delegates.push_back({"v" + std::to_string(to), c});
                total += c;
            }
        }
        d.voters.push_back(std::move(v));
    }
    d.budget = cfg.budget.kind == BudgetPolicy::Kind::kFixed
                   ? cfg.budget.fixed
                   : total * cfg.budget.numerator / cfg.budget.denominator;
    return d;
}

[[nodiscard]] inline Instance gen_random(const GenConfig& cfg) { return validate_instance(gen_random_draft(cfg)); }

}  // namespace ccra
