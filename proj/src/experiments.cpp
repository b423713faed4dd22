#include "srkit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "srkit/derive.hpp"
#include "srkit/enumeration.hpp"
#include "srkit/io.hpp"
#include "srkit/partition.hpp"
#include "table.hpp"

namespace srkit {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
        unsigned long long x = std::stoull(v, &used, 0);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "bad value for " + key + ": '" + v + "'");
    }
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "bad value for " + key + ": '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw Error(ErrorCode::InvalidArgument, "bad boolean for " + key + ": '" + v + "'");
}

// "10,20" or "50:200:10" (inclusive range with step)
std::vector<int> parse_sizes(const std::string& v) {
    std::vector<int> out;
    for (const auto& tok : split(v, ',')) {
        auto parts = split(tok, ':');
        if (parts.size() == 1) {
            out.push_back(static_cast<int>(to_u64("sizes", parts[0])));
        } else if (parts.size() == 2 || parts.size() == 3) {
            int lo = static_cast<int>(to_u64("sizes", parts[0]));
            int hi = static_cast<int>(to_u64("sizes", parts[1]));
            int step = parts.size() == 3 ? static_cast<int>(to_u64("sizes", parts[2])) : 1;
            if (step <= 0) throw Error(ErrorCode::InvalidArgument, "size step must be positive");
            for (int x = lo; x <= hi; x += step) out.push_back(x);
        } else {
            throw Error(ErrorCode::InvalidArgument, "bad size token '" + tok + "'");
        }
    }
    return out;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : "NA"; }

bool cell_unsupported(const Culture& c, int n) { return c.tag == CultureTag::Symmetric && n % 2 != 0; }

template <class Fn>
void parallel_for(std::uint64_t count, int threads, Fn fn) {
    if (threads <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int t = static_cast<int>(std::min<std::uint64_t>(threads, count));
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

ExperimentRecord aggregate(const ExperimentConfig& cfg, const Culture& c, int n,
                           const std::vector<TrialStats>& ts) {
    ExperimentRecord r;
    r.culture = culture_name(c.tag);
    r.n = n;
    r.trials = cfg.trials;
    r.seed = cfg.seed;

    std::uint64_t used = 0, solv = 0, unsolv = 0;
    double sum_P = 0, sum_RP = 0, sum_SC = 0, sum_RSC = 0, sum_M = 0, sum_SP = 0;
    double sum_nodd = 0, sum_len = 0, sum_cnt = 0, sum_alpha = 0;
    std::vector<double> sum_len_counts(7, 0.0);
    for (const auto& t : ts) {
        if (t.timeout) {
            ++r.timeouts;
            continue;
        }
        ++used;
        sum_alpha += static_cast<double>(t.alpha_num) / static_cast<double>(t.alpha_den);
        sum_P += static_cast<double>(t.n_P);
        sum_RP += static_cast<double>(t.n_RP);
        sum_SC += static_cast<double>(t.n_SC);
        sum_RSC += static_cast<double>(t.n_RSC);
        if (t.solvable) {
            ++solv;
            sum_M += static_cast<double>(t.n_M);
            sum_SP += static_cast<double>(t.n_SP);
            continue;
        }
        ++unsolv;
        if (t.q < (n % 2 == 0 ? 2 : 1))
            throw Error(ErrorCode::VerificationFailed, "unsolvable trial with too few odd cycles");
        sum_nodd += t.n_odd;
        sum_len += static_cast<double>(t.n_odd) / t.q;
        sum_cnt += t.q;
        for (const auto& [len, cnt] : t.per_length) {
            std::size_t slot = len >= 13 ? 6 : static_cast<std::size_t>(len / 2);
            sum_len_counts[slot] += cnt;
        }
    }

    auto mean = [](double s, std::uint64_t k) -> std::optional<double> {
        if (k == 0) return std::nullopt;
        return s / static_cast<double>(k);
    };
    if (cfg.solvability) {
        r.solvable = solv;
        r.p_hat = mean(static_cast<double>(solv), used);
    }
    if (cfg.partitions) {
        r.avg_P = mean(sum_P, used);
        r.avg_RP = mean(sum_RP, used);
        r.avg_SC = mean(sum_SC, used);
        r.avg_RSC = mean(sum_RSC, used);
    }
    if (cfg.matchings) {
        r.avg_M = mean(sum_M, solv);
        r.avg_SP = mean(sum_SP, solv);
    }
    if (cfg.odd_cycles) {
        r.avg_nodd = mean(sum_nodd, unsolv);
        r.avg_odd_len = mean(sum_len, unsolv);
        r.avg_odd_cnt = mean(sum_cnt, unsolv);
        for (std::size_t s = 0; s < 7; ++s) r.per_length[s] = mean(sum_len_counts[s], unsolv);
    }
    if (cfg.alpha) r.alpha_hat = mean(sum_alpha, used);
    return r;
}

} // namespace

void apply_config_key(ExperimentConfig& cfg, const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in), v = trim(value_in);
    if (key == "cultures" || key == "culture") {
        double phi = cfg.cultures.empty() ? 0.5 : cfg.cultures.front().phi;
        cfg.cultures.clear();
        for (const auto& name : split(v, ',')) cfg.cultures.push_back(Culture{parse_culture(name), phi});
    } else if (key == "phi") {
        double phi = to_double(key, v);
        for (auto& c : cfg.cultures) c.phi = phi;
    } else if (key == "sizes" || key == "n") {
        cfg.sizes = parse_sizes(v);
    } else if (key == "trials") {
        cfg.trials = to_u64(key, v);
    } else if (key == "seed") {
        cfg.seed = to_u64(key, v);
    } else if (key == "solvability") {
        cfg.solvability = to_bool(key, v);
    } else if (key == "partitions") {
        cfg.partitions = to_bool(key, v);
    } else if (key == "matchings") {
        cfg.matchings = to_bool(key, v);
    } else if (key == "odd_cycles") {
        cfg.odd_cycles = to_bool(key, v);
    } else if (key == "alpha") {
        cfg.alpha = to_bool(key, v);
    } else if (key == "enum_max_n") {
        cfg.enum_max_n = static_cast<int>(to_u64(key, v));
    } else if (key == "budget") {
        cfg.node_budget = to_u64(key, v);
    } else if (key == "threads") {
        cfg.threads = static_cast<int>(to_u64(key, v));
    } else if (key == "timing") {
        cfg.timing = to_bool(key, v);
    } else if (key == "output") {
        cfg.output = v;
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
    }
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::SyntaxError, "line " + std::to_string(lineno) + ": expected key=value", lineno);
        apply_config_key(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    if (cfg.cultures.empty()) throw Error(ErrorCode::InvalidArgument, "no cultures configured");
    if (cfg.sizes.empty()) throw Error(ErrorCode::InvalidArgument, "no sizes configured");
    for (const auto& c : cfg.cultures)
        if (!(c.phi >= 0.0 && c.phi <= 1.0)) throw Error(ErrorCode::InvalidArgument, "phi must lie in [0, 1]");
    for (int n : cfg.sizes) {
        if (n < 2) throw Error(ErrorCode::InvalidArgument, "sizes must be at least 2");
        if (n > Instance::kMaxAgents) throw Error(ErrorCode::InvalidArgument, "size too large");
        if ((cfg.partitions || cfg.matchings) && n > cfg.enum_max_n)
            throw Error(ErrorCode::InvalidArgument, "enumeration statistics requested above enum_max_n = " +
                                                        std::to_string(cfg.enum_max_n));
    }
}

int effective_threads(const ExperimentConfig& cfg) {
    int t = cfg.threads;
    if (const char* env = std::getenv("SR_THREADS"); env && *env) {
        try {
            t = std::stoi(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, std::string("bad SR_THREADS value '") + env + "'");
        }
    }
    if (t <= 0) t = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return t;
}

TrialStats run_trial(const ExperimentConfig& cfg, const Culture& c, int n, std::uint64_t trial) {
    Instance inst = generate_trial(c, n, cfg.seed, trial);
    Partition p = stable_partition(inst);
    CycleStats cs = cycle_stats(p);
    TrialStats t;
    t.solvable = !has_long_odd_cycle(p);
    t.q = cs.q;
    t.n_odd = cs.n_odd;
    t.per_length = cs.per_length;
    AlphaRatio a = alpha_from_stats(cs);
    t.alpha_num = a.num;
    t.alpha_den = a.den;
    if (cfg.partitions || cfg.matchings) {
        EnumOptions opt;
        opt.node_budget = cfg.node_budget;
        SolutionSets s = enumerate_solutions(inst, opt);
        t.timeout = s.budget_exhausted;
        t.n_P = s.all_partitions.size();
        t.n_RP = s.reduced_partitions.size();
        t.n_M = s.matchings.size();
        t.n_SC = s.stable_cycles.size();
        t.n_RSC = s.reduced_stable_cycles.size();
        t.n_SP = s.stable_pairs.size();
    }
    return t;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const int threads = effective_threads(cfg);
    std::vector<ExperimentRecord> out;
    for (const auto& c : cfg.cultures) {
        for (int n : cfg.sizes) {
            if (cell_unsupported(c, n)) {
                ExperimentRecord r;
                r.culture = culture_name(c.tag);
                r.n = n;
                r.trials = cfg.trials;
                r.seed = cfg.seed;
                r.skipped = true;
                out.push_back(std::move(r));
                continue;
            }
            auto t0 = std::chrono::steady_clock::now();
            std::vector<TrialStats> ts(cfg.trials);
            parallel_for(cfg.trials, threads, [&](std::uint64_t i) { ts[i] = run_trial(cfg, c, n, i); });
            ExperimentRecord r = aggregate(cfg, c, n, ts);
            if (cfg.timing)
                r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            out.push_back(std::move(r));
        }
    }
    if (!cfg.output.empty()) write_text_file(cfg.output, to_csv(out));
    return out;
}

std::vector<ExperimentRecord> alpha_sweep(const ExperimentConfig& cfg) {
    ExperimentConfig c = cfg;
    c.solvability = true;
    c.alpha = true;
    c.partitions = false;
    c.matchings = false;
    return run_experiment(c);
}

std::string csv_header() {
    return "culture,n,trials,seed,solvable,p_hat,avg_P,avg_RP,avg_M,avg_SC,avg_RSC,avg_SP,avg_nodd,avg_odd_len,"
           "avg_odd_cnt,c1,c3,c5,c7,c9,c11,c13plus,alpha_hat,timeouts,ms";
}

std::string csv_row(const ExperimentRecord& r) {
    std::string s = r.culture + "," + std::to_string(r.n) + "," + std::to_string(r.trials) + "," +
                    std::to_string(r.seed) + ",";
    s += r.solvable ? std::to_string(*r.solvable) : "NA";
    for (const auto* v : {&r.p_hat, &r.avg_P, &r.avg_RP, &r.avg_M, &r.avg_SC, &r.avg_RSC, &r.avg_SP, &r.avg_nodd,
                          &r.avg_odd_len, &r.avg_odd_cnt})
        s += "," + fmt(*v);
    for (const auto& v : r.per_length) s += "," + fmt(v);
    s += "," + fmt(r.alpha_hat);
    s += "," + (r.skipped ? std::string("NA") : std::to_string(r.timeouts));
    s += "," + (r.ms ? fmt(*r.ms) : std::string("NA"));
    return s;
}

std::string to_csv(const std::vector<ExperimentRecord>& rs) {
    std::string s = csv_header() + "\n";
    for (const auto& r : rs) s += csv_row(r) + "\n";
    return s;
}

ExactPn exact_pn(int n) {
    if (n < 2) throw Error(ErrorCode::TooSmall, "exact P_n needs n >= 2");
    if (n > 5) throw Error(ErrorCode::TooLargeForExact, "exact P_n is limited to n <= 5");
    const std::size_t w = n - 1;

    // all orderings of each agent's row
    std::vector<std::vector<std::vector<std::uint16_t>>> rows(n);
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint16_t> base;
        for (int j = 0; j < n; ++j)
            if (j != i) base.push_back(static_cast<std::uint16_t>(j));
        do {
            rows[i].push_back(base);
        } while (std::next_permutation(base.begin(), base.end()));
    }
    const std::size_t per_row = rows[0].size();

    std::vector<std::uint16_t> prefs(w * n), pos(static_cast<std::size_t>(n) * n);
    auto load_row = [&](int i, std::size_t which) {
        const auto& r = rows[i][which];
        for (std::size_t k = 0; k < w; ++k) {
            prefs[i * w + k] = r[k];
            pos[i * n + r[k]] = static_cast<std::uint16_t>(k);
        }
        pos[i * n + i] = static_cast<std::uint16_t>(n - 1);
    };
    std::vector<std::size_t> digit(n, 0);
    for (int i = 0; i < n; ++i) load_row(i, 0);

    detail::Table t{detail::PrefView(n, prefs.data(), pos.data())};
    ExactPn res;
    std::vector<char> seen(n);
    for (;;) {
        t.reset();
        t.phase1();
        t.shrink_to_pairs();
        bool ok = true;
        std::fill(seen.begin(), seen.end(), 0);
        for (int a = 0; a < n && ok; ++a) {
            if (seen[a]) continue;
            int len = 0;
            for (int x = a; !seen[x];) {
                seen[x] = 1;
                ++len;
                int f = t.first(x);
                x = f < 0 ? x : f;
            }
            if (len >= 3 && len % 2 == 1) ok = false;
        }
        ++res.total;
        res.solvable += ok;

        int i = 0;
        while (i < n && ++digit[i] == per_row) {
            digit[i] = 0;
            load_row(i, 0);
            ++i;
        }
        if (i == n) break;
        load_row(i, digit[i]);
    }
    return res;
}

FitResult fit_power_law(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 3) throw Error(ErrorCode::DegenerateInput, "need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(pts.size());
    for (auto [x, y] : pts) {
        if (!(x > 0) || !(y > 0)) throw Error(ErrorCode::DegenerateInput, "power-law fit needs positive data");
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = k * sxx - sx * sx;
    if (std::abs(den) < 1e-12 * std::max(1.0, k * sxx))
        throw Error(ErrorCode::DegenerateInput, "power-law fit needs at least two distinct n");
    FitResult f;
    f.model = FitResult::Model::PowerLaw;
    f.b = (k * sxy - sx * sy) / den;
    const double ln_a = (sy - f.b * sx) / k;
    f.a = std::exp(ln_a);
    double rss = 0;
    for (auto [x, y] : pts) {
        double e = std::log(y) - (ln_a + f.b * std::log(x));
        rss += e * e;
    }
    f.residual = std::sqrt(rss);
    return f;
}

FitResult fit_sqrt_log(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 3) throw Error(ErrorCode::DegenerateInput, "need at least 3 points");
    double sfy = 0, sff = 0;
    for (auto [x, y] : pts) {
        if (!(x > 1) || !std::isfinite(y)) throw Error(ErrorCode::DegenerateInput, "sqrt-log fit needs n > 1");
        double f = std::sqrt(x / std::log(x));
        sfy += f * y;
        sff += f * f;
    }
    FitResult r;
    r.model = FitResult::Model::SqrtLog;
    r.a = sfy / sff;
    double rss = 0;
    for (auto [x, y] : pts) {
        double e = y - r.a * std::sqrt(x / std::log(x));
        rss += e * e;
    }
    r.residual = std::sqrt(rss);
    return r;
}

} // namespace srkit
