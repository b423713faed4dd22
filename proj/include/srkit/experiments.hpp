#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srkit/generators.hpp"

namespace srkit {

struct ExperimentConfig {
    std::vector<Culture> cultures{Culture{}};
    std::vector<int> sizes{10};
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;

    bool solvability = true;
    bool partitions = false;  // |P|, |RP|, |SC|, |RSC|
    bool matchings = false;   // |M|, |SP|
    bool odd_cycles = true;
    bool alpha = true;

    int enum_max_n = 64;
    std::uint64_t node_budget = 100'000'000;
    int threads = 1;  // 0 = hardware concurrency; SR_THREADS overrides
    bool timing = false;  // fills the ms column, which breaks byte equality
    std::string output;   // CSV path, empty for none
};

// Flat key=value text; '#' starts a comment.
ExperimentConfig parse_config(const std::string& text);
// Applies one key=value override; throws InvalidArgument on unknown keys.
void apply_config_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);
void validate_config(const ExperimentConfig& cfg);
int effective_threads(const ExperimentConfig& cfg);

struct TrialStats {
    bool solvable = false;
    bool timeout = false;
    int q = 0;
    int n_odd = 0;
    std::map<int, int> per_length;
    std::int64_t alpha_num = 0, alpha_den = 1;
    std::uint64_t n_P = 0, n_RP = 0, n_M = 0, n_SC = 0, n_RSC = 0, n_SP = 0;

    bool operator==(const TrialStats&) const = default;
};

// Recomputes one trial from its derived seed.
TrialStats run_trial(const ExperimentConfig& cfg, const Culture& c, int n, std::uint64_t trial);

struct ExperimentRecord {
    std::string culture;
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool skipped = false;
    std::optional<std::uint64_t> solvable;
    std::optional<double> p_hat, avg_P, avg_RP, avg_M, avg_SC, avg_RSC, avg_SP;
    std::optional<double> avg_nodd, avg_odd_len, avg_odd_cnt;
    // c1, c3, ..., c11, c13plus
    std::vector<std::optional<double>> per_length = std::vector<std::optional<double>>(7);
    std::optional<double> alpha_hat;
    std::uint64_t timeouts = 0;
    std::optional<double> ms;
};

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);
// Solvability and alpha only.
std::vector<ExperimentRecord> alpha_sweep(const ExperimentConfig& cfg);

std::string csv_header();
std::string csv_row(const ExperimentRecord& r);
std::string to_csv(const std::vector<ExperimentRecord>& rs);

struct ExactPn {
    std::uint64_t solvable = 0;
    std::uint64_t total = 0;
    double value() const { return static_cast<double>(solvable) / static_cast<double>(total); }
};
// Exhaustive over all ((n-1)!)^n profiles; 2 <= n <= 5.
ExactPn exact_pn(int n);

struct FitResult {
    enum class Model { PowerLaw, SqrtLog };
    Model model = Model::PowerLaw;
    double a = 0;  // power law: y = a n^b; sqrt-log: y = a sqrt(n / ln n)
    double b = 0;
    double residual = 0;
};

FitResult fit_power_law(const std::vector<std::pair<double, double>>& pts);
FitResult fit_sqrt_log(const std::vector<std::pair<double, double>>& pts);

} // namespace srkit
