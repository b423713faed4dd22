// srkit: stable roommates toolkit command line.
//
// Exit codes: 0 ok, 1 usage, 2 input or validation error, 3 unsolvable
// (solve, enum --kind matchings) or unstable candidate (verify),
// 4 enumeration budget exhausted.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srkit/derive.hpp"
#include "srkit/enumeration.hpp"
#include "srkit/experiments.hpp"
#include "srkit/generators.hpp"
#include "srkit/io.hpp"
#include "srkit/partition.hpp"

namespace {

constexpr const char* kVersion = "srkit 1.0.0 (instance format 1, json format 1)";

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kNegative = 3, kBudget = 4 };

using ojson = nlohmann::ordered_json;

ojson cycle_json(const srkit::Cycle& c) {
    ojson j = ojson::array();
    for (auto a : c.agents) j.push_back(a + 1);
    return j;
}

ojson partition_json(const srkit::Partition& p) { return ojson::parse(srkit::partition_to_json(p)); }
ojson matching_json(const srkit::Matching& m) { return ojson::parse(srkit::matching_to_json(m)); }

void print_summary(std::size_t count, bool exhausted) {
    ojson s;
    s["count"] = count;
    s["budget_exhausted"] = exhausted;
    std::cout << s.dump() << "\n";
}

int cmd_gen(const std::string& culture, int n, std::uint64_t seed, std::uint64_t trial, double phi,
            const std::string& out) {
    srkit::Culture c{srkit::parse_culture(culture), phi};
    auto inst = srkit::generate_trial(c, n, seed, trial);
    auto text = srkit::serialize_instance(inst);
    if (out.empty())
        std::cout << text;
    else
        srkit::write_text_file(out, text);
    return kOk;
}

int cmd_solve(const std::string& path) {
    auto inst = srkit::read_instance_file(path);
    auto m = srkit::solve(inst);
    if (!m) {
        std::cout << "UNSOLVABLE\n";
        return kNegative;
    }
    std::cout << srkit::matching_to_json(*m) << "\n";
    return kOk;
}

int cmd_partition(const std::string& path, bool stats) {
    auto inst = srkit::read_instance_file(path);
    auto p = srkit::stable_partition(inst);
    std::cout << srkit::partition_to_json(p) << "\n";
    if (stats) {
        auto cs = srkit::cycle_stats(p);
        std::cout << srkit::stats_to_json(cs, srkit::alpha_from_stats(cs)) << "\n";
    }
    return kOk;
}

int cmd_enum(const std::string& path, const std::string& kind, std::uint64_t budget) {
    auto inst = srkit::read_instance_file(path);
    srkit::EnumOptions opt;
    opt.node_budget = budget;
    ojson arr = ojson::array();
    std::size_t count = 0;
    bool exhausted = false;
    int code = kOk;
    if (kind == "matchings") {
        if (!srkit::is_solvable(inst)) {
            code = kNegative;
        } else {
            auto r = srkit::enum_stable_matchings(inst, opt);
            for (const auto& m : r.items) arr.push_back(matching_json(m));
            count = r.items.size();
            exhausted = r.budget_exhausted;
        }
    } else if (kind == "reduced" || kind == "all") {
        auto r = kind == "reduced" ? srkit::enum_reduced_partitions(inst, opt) : srkit::enum_all_partitions(inst, opt);
        for (const auto& p : r.items) arr.push_back(partition_json(p));
        count = r.items.size();
        exhausted = r.budget_exhausted;
    } else {  // cycles
        auto s = srkit::enumerate_solutions(inst, opt);
        ojson obj;
        obj["stable_cycles"] = ojson::array();
        for (const auto& c : s.stable_cycles) obj["stable_cycles"].push_back(cycle_json(c));
        obj["reduced_stable_cycles"] = ojson::array();
        for (const auto& c : s.reduced_stable_cycles) obj["reduced_stable_cycles"].push_back(cycle_json(c));
        obj["stable_pairs"] = ojson::array();
        for (auto [a, b] : s.stable_pairs) obj["stable_pairs"].push_back({a + 1, b + 1});
        arr = obj;
        count = s.stable_cycles.size();
        exhausted = s.budget_exhausted;
    }
    std::cout << arr.dump() << "\n";
    print_summary(count, exhausted);
    if (exhausted) {
        std::cerr << "error: enumeration budget exhausted; results are partial\n";
        return kBudget;
    }
    return code;
}

int cmd_verify(const std::string& inst_path, const std::string& cand_path) {
    auto inst = srkit::read_instance_file(inst_path);
    auto text = srkit::read_text_file(cand_path);
    bool stable;
    if (srkit::json_kind(text) == "matching") {
        auto m = srkit::matching_from_json(text);
        if (m.n() != inst.n()) throw srkit::Error(srkit::ErrorCode::InvalidArgument, "candidate size differs from instance");
        stable = srkit::is_stable_matching(inst, m);
    } else {
        auto p = srkit::partition_from_json(text);
        if (p.n() != inst.n()) throw srkit::Error(srkit::ErrorCode::InvalidArgument, "candidate size differs from instance");
        stable = srkit::is_stable_partition(inst, p);
    }
    std::cout << (stable ? "STABLE" : "UNSTABLE") << "\n";
    return stable ? kOk : kNegative;
}

int cmd_exact_pn(int n) {
    auto r = srkit::exact_pn(n);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%llu/%llu = %.4f", static_cast<unsigned long long>(r.solvable),
                  static_cast<unsigned long long>(r.total), r.value());
    std::cout << buf << "\n";
    return kOk;
}

int exit_for(const srkit::Error& e) {
    switch (e.code()) {
    case srkit::ErrorCode::BudgetExceeded: return kBudget;
    case srkit::ErrorCode::Unsolvable: return kNegative;
    default: return kInput;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable roommates toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string culture = "ic", out, kind = "all", config_path, in_path, cand_path;
    int n = 0;
    std::uint64_t seed = 1, trial = 0, budget = 100'000'000, trials = 0;
    double phi = 0.5;
    bool stats = false, timing = false;
    int threads = -1;
    std::string sizes, cultures;
    std::vector<std::string> sets;

    auto* gen = app.add_subcommand("gen", "Generate an instance");
    gen->add_option("--culture", culture, "ic, 2ic, symmetric, asymmetric, euclidean, attributes, mallows-euclidean")
        ->capture_default_str();
    gen->add_option("--n", n, "Number of agents")->required()->check(CLI::Range(2, 65535));
    gen->add_option("--seed", seed, "Master seed")->capture_default_str();
    gen->add_option("--trial", trial, "Trial index under the master seed")->capture_default_str();
    gen->add_option("--phi", phi, "Mallows dispersion")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    gen->add_option("--out", out, "Output path (stdout if omitted)");

    auto* solve = app.add_subcommand("solve", "Find a stable matching");
    solve->add_option("instance", in_path, "Instance file")->required();

    auto* part = app.add_subcommand("partition", "Compute a stable partition");
    part->add_option("instance", in_path, "Instance file")->required();
    part->add_flag("--stats", stats, "Also print cycle statistics");

    auto* en = app.add_subcommand("enum", "Enumerate solution sets");
    en->add_option("instance", in_path, "Instance file")->required();
    en->add_option("--kind", kind, "matchings, reduced, all or cycles")
        ->capture_default_str()
        ->check(CLI::IsMember({"matchings", "reduced", "all", "cycles"}));
    en->add_option("--budget", budget, "Search node budget")->capture_default_str();

    auto* ver = app.add_subcommand("verify", "Check a matching or partition");
    ver->add_option("instance", in_path, "Instance file")->required();
    ver->add_option("candidate", cand_path, "Matching or partition JSON")->required();

    auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment, CSV on stdout");
    exp->add_option("--config", config_path, "key=value config file");
    exp->add_option("--culture", cultures, "Comma-separated culture tags");
    exp->add_option("--n", sizes, "Sizes, e.g. 10,20 or 50:200:10");
    exp->add_option("--trials", trials, "Trials per cell");
    exp->add_option("--seed", seed, "Master seed");
    exp->add_option("--threads", threads, "Worker threads (0 = all cores)");
    exp->add_option("--budget", budget, "Enumeration node budget per trial");
    exp->add_option("--out", out, "Also write the CSV here");
    exp->add_flag("--timing", timing, "Fill the ms column");
    exp->add_option("--set", sets, "Extra key=value overrides");

    auto* epn = app.add_subcommand("exact-pn", "Exact solvable fraction for small n");
    epn->add_option("--n", n, "Number of agents (2..5)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_gen(culture, n, seed, trial, phi, out);
        if (*solve) return cmd_solve(in_path);
        if (*part) return cmd_partition(in_path, stats);
        if (*en) return cmd_enum(in_path, kind, budget);
        if (*ver) return cmd_verify(in_path, cand_path);
        if (*epn) return cmd_exact_pn(n);
        if (*exp) {
            srkit::ExperimentConfig cfg;
            if (!config_path.empty()) cfg = srkit::parse_config(srkit::read_text_file(config_path));
            if (!cultures.empty()) srkit::apply_config_key(cfg, "cultures", cultures);
            if (!sizes.empty()) srkit::apply_config_key(cfg, "sizes", sizes);
            if (exp->count("--trials")) cfg.trials = trials;
            if (exp->count("--seed")) cfg.seed = seed;
            if (exp->count("--threads")) cfg.threads = threads;
            if (exp->count("--budget")) cfg.node_budget = budget;
            if (!out.empty()) cfg.output = out;
            if (timing) cfg.timing = true;
            for (const auto& kv : sets) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw srkit::Error(srkit::ErrorCode::InvalidArgument, "--set expects key=value, got '" + kv + "'");
                srkit::apply_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
            }
            auto records = srkit::run_experiment(cfg);
            std::cout << srkit::to_csv(records);
            return kOk;
        }
    } catch (const srkit::Error& e) {
        std::cerr << "error: " << srkit::error_code_name(e.code()) << ": " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kUsage;
}
