// Copyright (c) ccra contributors.
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccra/ccra.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitInfeasible = 3;

struct Io {
    std::string input = "-";
    std::string output = "-";

    std::string read() const {
        if (input == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
        std::ifstream in(input);
        if (!in) throw ccra::Error(ccra::ErrorCode::kInvalidArgument, "cannot open " + input);
        return {std::istreambuf_iterator<char>(in), {}};
    }

    void write(const std::string& text) const {
        if (output == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(output);
        if (!out) throw ccra::Error(ccra::ErrorCode::kInvalidArgument, "cannot write " + output);
        out << text;
    }

    void write(const ccra::Json& j) const { write(j.dump(2) + "\n"); }
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

ccra::Json violations_json(const ccra::ValidationError& e) {
    ccra::Json list = ccra::Json::array();
    for (const auto& v : e.violations()) {
        list.push_back({{"code", std::string(ccra::to_string(v.code))}, {"message", v.message}});
    }
    return {{"valid", false}, {"violations", std::move(list)}};
}

ccra::Reduction reduce_source(const ccra::Json& src, const std::string& variant_name, std::optional<ccra::Cost> k) {
    auto variant = ccra::parse_variant(variant_name);
    if (!variant) throw ccra::Error(ccra::ErrorCode::kInvalidArgument, "unknown variant '" + variant_name + "'");
    if (src.contains("universe")) {
        auto s = ccra::set_system_from_json(src);
        if (k) s.k = *k;
        return ccra::reduce_hitting_set(s, *variant);
    }
    if (!k) throw ccra::Error(ccra::ErrorCode::kInvalidArgument, "--k is required for vertex cover");
    return ccra::reduce_vertex_cover(ccra::graph_from_json(src), *k, *variant);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructive control by redirecting arcs in liquid democracy"};
    app.require_subcommand(1);
    app.fallthrough();
    Io io;
    std::uint64_t seed = 0;
    app.add_option("--input", io.input, "Input file, - for stdin");
    app.add_option("--output", io.output, "Output file, - for stdout");
    app.add_option("--seed", seed, "Random seed");

    auto* validate = app.add_subcommand("validate", "Check an instance and print its statistics");
    auto* unravel = app.add_subcommand("unravel", "Print every voter's resolved ballot");
    auto* tally = app.add_subcommand("tally", "Print approval scores and the unique winner");

    auto* solve = app.add_subcommand("solve", "Find a cheapest successful redirection set");
    std::string algo = "auto";
    double epsilon = 0.5;
    bool preprocess = false;
    std::string targets;
    std::uint64_t guess_limit = 100'000'000;
    solve->add_option("--algo", algo, "auto, brute, tree-dp, xp or fptas");
    solve->add_option("--epsilon", epsilon, "Approximation parameter for fptas");
    solve->add_flag("--preprocess", preprocess, "Run brute force on the preprocessed instance");
    solve->add_option("--targets", targets, "Comma-separated voters allowed as new targets (brute)");
    solve->add_option("--guess-limit", guess_limit, "Guard on enumerated guesses");

    auto* reduce = app.add_subcommand("reduce", "Build a hardness instance from vc or hs input");
    std::string source_kind;
    std::string variant = "single-a";
    std::optional<ccra::Cost> k;
    reduce->add_option("source", source_kind, "vc or hs")->required()->check(CLI::IsMember({"vc", "hs"}));
    reduce->add_option("--variant", variant, "multi-a, multi-b, single-a, single-b (vc); multi, single (hs)");
    reduce->add_option("--k", k, "Cover size bound");

    auto* certify = app.add_subcommand("certify", "Map a cover to redirections and check the result");
    std::string cover;
    certify->add_option("--cover", cover, "Comma-separated cover")->required();
    certify->add_option("--variant", variant, "Gadget variant");
    certify->add_option("--k", k, "Cover size bound (vc)");

    auto* gen = app.add_subcommand("gen", "Generate a random instance");
    ccra::GenConfig cfg;
    std::optional<ccra::Cost> budget;
    std::string fraction = "1/2";
    std::string rule = "union";
    gen->add_option("--n", cfg.n, "Voters");
    gen->add_option("--m", cfg.m, "Candidates");
    gen->add_option("--max-out", cfg.max_out_degree, "Maximum out-degree");
    gen->add_option("--max-ballot", cfg.max_ballot_size, "Maximum ballot size");
    gen->add_option("--max-cost", cfg.max_cost, "Maximum arc cost");
    gen->add_option("--budget", budget, "Fixed budget");
    gen->add_option("--budget-fraction", fraction, "Budget as num/den of the total arc cost");
    gen->add_option("--rule", rule, "union, approval or greedy_mrc");

    auto* bench = app.add_subcommand("bench", "Run a suite and print a CSV report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (validate->parsed()) {
            try {
                const auto inst = ccra::parse_instance(io.read());
                io.write(ccra::Json{{"valid", true}, {"stats", ccra::stats_to_json(inst.stats())}});
                return kExitOk;
            } catch (const ccra::ValidationError& e) {
                io.write(violations_json(e));
                return kExitError;
            }
        }
        if (unravel->parsed()) {
            const auto inst = ccra::parse_instance(io.read());
            io.write(ccra::profile_to_json(inst, ccra::unravel(inst)));
            return kExitOk;
        }
        if (tally->parsed()) {
            const auto inst = ccra::parse_instance(io.read());
            io.write(ccra::tally_to_json(inst, ccra::tally(inst)));
            return kExitOk;
        }
        if (solve->parsed()) {
            const auto inst = ccra::parse_instance(io.read());
            ccra::SolveOptions options;
            auto a = ccra::parse_algorithm(algo);
            if (!a) throw ccra::Error(ccra::ErrorCode::kInvalidArgument, "unknown algorithm '" + algo + "'");
            options.algorithm = *a;
            options.epsilon = epsilon;
            options.preprocess = preprocess;
            options.guess_limit = guess_limit;
            if (!targets.empty()) {
                options.targets.emplace();
                for (const auto& name : split_list(targets)) {
                    auto v = inst.find_voter(name);
                    if (!v) throw ccra::Error(ccra::ErrorCode::kUnknownId, "unknown voter '" + name + "'");
                    options.targets->push_back(*v);
                }
            }
            const auto outcome = ccra::solve(inst, options);
            auto j = ccra::solve_to_json(inst, outcome);
            if (preprocess) j["preprocessed_instance"] = ccra::instance_to_json(ccra::add_virtual_actives(inst));
            io.write(j);
            return outcome.solution ? kExitOk : kExitInfeasible;
        }
        if (reduce->parsed()) {
            const auto src = ccra::parse_json_text(io.read());
            if (source_kind == "vc" && src.contains("universe")) {
                throw ccra::Error(ccra::ErrorCode::kParseError, "expected a graph for vc");
            }
            if (source_kind == "hs" && !src.contains("universe")) {
                throw ccra::Error(ccra::ErrorCode::kParseError, "expected a set system for hs");
            }
            if (source_kind == "hs" && variant == "single-a") variant = "single";
            io.write(ccra::instance_to_json(reduce_source(src, variant, k).instance));
            return kExitOk;
        }
        if (certify->parsed()) {
            const auto src = ccra::parse_json_text(io.read());
            const auto red = reduce_source(src, variant, k);
            const auto names = split_list(cover);
            const auto redirections = ccra::forward_certificate(red.certificate, names);
            const auto solution = ccra::finalize_solution(red.instance, redirections);
            const auto check = ccra::verify_solution(red.instance, solution);
            ccra::Json j;
            j["redirections"] = ccra::redirections_to_json(red.instance, solution.redirections);
            j["cost"] = solution.total_cost;
            j["budget"] = red.instance.budget();
            j["scores_after"] = ccra::scores_to_json(red.instance, solution.scores_after);
            j["preferred_unique_winner"] = check.preferred_unique_winner;
            j["ok"] = check.ok();
            io.write(j);
            return check.ok() ? kExitOk : kExitInfeasible;
        }
        if (gen->parsed()) {
            cfg.seed = seed;
            auto r = ccra::parse_rule(rule);
            if (!r) throw ccra::Error(ccra::ErrorCode::kInvalidConfig, "unknown rule '" + rule + "'");
            cfg.rule = *r;
            if (budget) {
                cfg.budget = ccra::BudgetPolicy::fixed_at(*budget);
            } else {
                const auto slash = fraction.find('/');
                if (slash == std::string::npos) {
                    throw ccra::Error(ccra::ErrorCode::kInvalidConfig, "budget fraction must be num/den");
                }
                cfg.budget = ccra::BudgetPolicy::fraction(std::stoull(fraction.substr(0, slash)),
                                                          std::stoull(fraction.substr(slash + 1)));
            }
            io.write(ccra::draft_to_json(ccra::gen_random_draft(cfg)));
            return kExitOk;
        }
        if (bench->parsed()) {
            const auto suite_json = ccra::parse_json_text(io.read());
            const auto& list = suite_json.is_array() ? suite_json : suite_json.at("entries");
            std::vector<ccra::BenchEntry> suite;
            for (std::size_t i = 0; i < list.size(); ++i) {
                const auto& e = list[i];
                auto a = ccra::parse_algorithm(e.value("algo", std::string("auto")));
                if (!a) throw ccra::Error(ccra::ErrorCode::kInvalidArgument, "unknown algorithm in entry " + std::to_string(i));
                suite.push_back({e.value("id", "entry" + std::to_string(i)), ccra::instance_from_json(e.at("instance")), *a,
                                 e.value("epsilon", 0.5)});
            }
            std::ostringstream csv;
            ccra::write_bench_csv(csv, ccra::run_bench(suite));
            io.write(csv.str());
            return kExitOk;
        }
    } catch (const ccra::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const ccra::Error& e) {
        std::cerr << "error: " << ccra::to_string(e.code()) << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
