// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ccra/solvers/solve.hpp"

namespace ccra {

struct BenchEntry {
    std::string id;
    Instance instance;
    Algorithm algorithm = Algorithm::kAuto;
    double epsilon = 0.5;
};

struct BenchRow {
    std::string id;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t t = 0;
    Algorithm algorithm = Algorithm::kAuto;
    std::optional<bool> feasible;  // absent when the solver raised
    std::optional<Cost> cost;
    std::size_t redirections = 0;
    double wall_ms = 0;
    std::uint64_t guesses_explored = 0;
    std::string error;  // error code name, empty on success
};

inline std::vector<BenchRow> run_bench(std::span<const BenchEntry> suite, SolveOptions base = {}) {
    std::vector<BenchRow> rows;
    for (const auto& entry : suite) {
        BenchRow row;
        row.id = entry.id;
        const auto& st = entry.instance.stats();
        row.n = st.n;
        row.m = st.m;
        row.t = st.t;
        SolveOptions options = base;
        options.algorithm = entry.algorithm;
        options.epsilon = entry.epsilon;
        row.algorithm = choose_algorithm(entry.instance, options);
        try {
            const SolveOutcome out = solve(entry.instance, options);
            row.feasible = out.solution.has_value();
            if (out.solution) {
                row.cost = out.solution->total_cost;
                row.redirections = out.solution->num_redirections();
            }
            row.wall_ms = out.report.wall_ms;
            row.guesses_explored = out.report.guesses_explored;
        } catch (const Error& e) {
            row.error = std::string(to_string(e.code()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

inline void write_bench_csv(std::ostream& os, std::span<const BenchRow> rows) {
    os << "id,n,m,t,algo,feasible,cost,redirections,wall_ms,guesses,error\r\n";
    for (const auto& r : rows) {
        os << detail::csv_field(r.id) << ',' << r.n << ',' << r.m << ',' << r.t << ',' << to_string(r.algorithm) << ','
           << (r.feasible ? (*r.feasible ? "true" : "false") : "") << ','
           << (r.cost ? std::to_string(*r.cost) : "") << ',' << r.redirections << ',' << r.wall_ms << ','
           << r.guesses_explored << ',' << detail::csv_field(r.error) << "\r\n";
    }
}

}  // namespace ccra
