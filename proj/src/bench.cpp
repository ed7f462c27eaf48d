#include "asec/bench.hpp"

#include "asec/native_format.hpp"
#include "asec/pddl.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace asec {

void VariantConfig::validate() const {
    for (double p : {p1, p2, p3}) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
    if (!(epsilon >= 1.0))
        throw std::invalid_argument("epsilon must be at least 1");
}

std::optional<double> BenchRecord::expensive_ratio() const {
    if (max_expensive <= 0)
        return std::nullopt;
    return static_cast<double>(expensive_calls) / static_cast<double>(max_expensive);
}

namespace {

void fill_from_search(BenchRecord &record, const SearchResult &result) {
    record.status = result.status;
    record.plan = result.plan;
    record.bounds = result.bounds;
    record.eta_eff = result.eta_eff;
    record.expansions = result.stats.expansions;
    record.cheap_calls = result.stats.cheap_calls;
    record.expensive_calls = result.stats.expensive_calls;
    record.max_expensive = result.stats.max_expensive_calls;
    record.est_ms = result.stats.simulated_ms;
    record.success = result.status == SearchStatus::epsilon_ok;
}

} // namespace

BenchRecord run_variant(const BaseTask &task, const VariantConfig &config,
                        const BenchOptions &options) {
    BenchRecord record;
    record.task_name = task.name;
    record.config = config;
    const auto start = std::chrono::steady_clock::now();
    try {
        config.validate();
        SynthesizedEstimators synth = synthesize_estimators(task.c_pddl, config.p1, config.p2,
                                                            config.p3, config.seed,
                                                            options.synthesis);
        check_oracle_containment(task.task, synth.estimators, synth.oracle);

        SearchSetup setup{task.task, synth.estimators};
        setup.heuristic = config.heuristic;
        setup.max_states = options.max_states;
        if (options.check_oracle)
            setup.cache_options.oracle = &synth.oracle;

        switch (config.algorithm) {
        case Algorithm::asec:
            fill_from_search(record, asec(setup, config.epsilon));
            break;
        case Algorithm::indifferent:
            fill_from_search(record, indifferent(setup, config.epsilon));
            break;
        case Algorithm::fully_lazy:
            fill_from_search(record, fully_lazy(setup, config.epsilon));
            break;
        case Algorithm::asec_ese: {
            AsecEseResult result = asec_with_ese(setup, config.epsilon, options.ese_alt);
            fill_from_search(record, result.search);
            if (result.ese) {
                record.ese_invoked = true;
                record.ese_success = result.ese->success;
                record.ese_calls = result.ese->stats.calls;
                record.eta_eff = result.ese->eta_eff;
                record.bounds = result.ese->bounds;
            }
            record.success = result.success();
            break;
        }
        }
    } catch (const std::exception &e) {
        record.error = e.what();
        record.success = false;
    }
    if (options.timing) {
        record.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    }
    return record;
}

std::vector<VariantConfig> expand_grid(std::size_t task_count, const GridSpec &grid) {
    std::vector<VariantConfig> configs;
    for (std::size_t t = 0; t < task_count; ++t)
        for (std::uint64_t seed : grid.seeds)
            for (Algorithm algorithm : grid.algorithms)
                for (HeuristicKind heuristic : grid.heuristics)
                    for (double epsilon : grid.epsilons)
                        for (double p1 : grid.p1)
                            for (double p2 : grid.p2)
                                for (double p3 : grid.p3) {
                                    VariantConfig c;
                                    c.task = t;
                                    c.seed = seed;
                                    c.algorithm = algorithm;
                                    c.heuristic = heuristic;
                                    c.epsilon = epsilon;
                                    c.p1 = p1;
                                    c.p2 = p2;
                                    c.p3 = p3;
                                    configs.push_back(c);
                                }
    return configs;
}

std::vector<BenchRecord> run_grid(const std::vector<BaseTask> &tasks, const GridSpec &grid,
                                  const BenchOptions &options) {
    const std::vector<VariantConfig> configs = expand_grid(tasks.size(), grid);
    std::vector<BenchRecord> records(configs.size());
    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));

    // Workers only write their own slot, so no locking is needed.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++)
            records[i] = run_variant(tasks[configs[i].task], configs[i], options);
    };
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    return records;
}

std::string format_double(double value) {
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (std::isnan(value))
        return "nan";
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

std::string csv_row(const BenchRecord &r) {
    const VariantConfig &c = r.config;
    std::ostringstream out;
    out << r.task_name << ',' << c.seed << ',' << to_string(c.algorithm) << ','
        << to_string(c.heuristic) << ',' << format_double(c.epsilon) << ','
        << format_double(c.p1) << ',' << format_double(c.p2) << ',' << format_double(c.p3) << ','
        << (r.success ? 1 : 0) << ',' << format_double(r.eta_eff) << ',' << r.expansions << ','
        << r.cheap_calls << ',' << r.expensive_calls << ',' << r.max_expensive << ','
        << (r.ese_invoked ? 1 : 0) << ',' << (r.ese_success ? 1 : 0) << ',' << r.ese_calls << ','
        << format_double(r.wall_ms) << ',' << format_double(r.est_ms);
    return out.str();
}

void write_csv(std::ostream &out, const std::vector<BenchRecord> &records) {
    out << csv_header << '\n';
    for (const BenchRecord &r : records)
        out << csv_row(r) << '\n';
}

std::string to_csv(const std::vector<BenchRecord> &records) {
    std::ostringstream out;
    write_csv(out, records);
    return out.str();
}

std::vector<TrendRow> aggregate_trend(const std::vector<BenchRecord> &records) {
    struct Acc {
        TrendRow row;
        double ratio_sum = 0.0;
        double eta_sum = 0.0;
        long long eta_runs = 0;
    };
    std::map<std::tuple<int, double, double>, Acc> groups;
    for (const BenchRecord &r : records) {
        if (!r.error.empty())
            continue;
        auto key = std::make_tuple(static_cast<int>(r.config.algorithm), r.config.p1,
                                   r.config.epsilon);
        Acc &acc = groups[key];
        acc.row.algorithm = r.config.algorithm;
        acc.row.p1 = r.config.p1;
        acc.row.epsilon = r.config.epsilon;
        ++acc.row.runs;
        if (r.success)
            ++acc.row.successes;
        if (auto ratio = r.expensive_ratio()) {
            ++acc.row.ratio_runs;
            acc.ratio_sum += *ratio;
        }
        if (r.plan && std::isfinite(r.eta_eff)) {
            ++acc.eta_runs;
            acc.eta_sum += r.eta_eff;
        }
    }
    std::vector<TrendRow> rows;
    for (auto &[key, acc] : groups) {
        if (acc.row.ratio_runs > 0)
            acc.row.mean_expensive_ratio = acc.ratio_sum / static_cast<double>(acc.row.ratio_runs);
        if (acc.eta_runs > 0)
            acc.row.mean_eta_eff = acc.eta_sum / static_cast<double>(acc.eta_runs);
        rows.push_back(acc.row);
    }
    return rows;
}

double SummaryRow::success_percent() const {
    return runs ? 100.0 * static_cast<double>(successes) / static_cast<double>(runs) : 0.0;
}

double SummaryRow::ese_success_percent() const {
    return ese_invoked
               ? 100.0 * static_cast<double>(ese_success) / static_cast<double>(ese_invoked)
               : 0.0;
}

std::vector<SummaryRow> aggregate_summary(const std::vector<BenchRecord> &records,
                                          Algorithm algorithm) {
    std::map<double, SummaryRow> groups;
    for (const BenchRecord &r : records) {
        if (r.config.algorithm != algorithm)
            continue;
        SummaryRow &row = groups[r.config.epsilon];
        row.epsilon = r.config.epsilon;
        ++row.runs;
        if (!r.error.empty()) {
            ++row.errors;
            continue;
        }
        row.successes += r.success;
        row.ese_invoked += r.ese_invoked;
        row.ese_success += r.ese_success;
        row.ese_calls += r.ese_calls;
        row.expensive_calls += r.expensive_calls;
        row.max_expensive += r.max_expensive;
    }
    std::vector<SummaryRow> rows;
    for (auto &[eps, row] : groups)
        rows.push_back(row);
    return rows;
}

void write_trend_tsv(std::ostream &out, const std::vector<TrendRow> &rows) {
    out << "algorithm\tp1\tepsilon\truns\tsuccesses\tmean_expensive_ratio\tmean_eta_eff\n";
    for (const TrendRow &r : rows) {
        out << to_string(r.algorithm) << '\t' << format_double(r.p1) << '\t'
            << format_double(r.epsilon) << '\t' << r.runs << '\t' << r.successes << '\t'
            << format_double(r.mean_expensive_ratio) << '\t' << format_double(r.mean_eta_eff)
            << '\n';
    }
}

void write_summary_table(std::ostream &out, Algorithm algorithm,
                         const std::vector<SummaryRow> &rows) {
    char line[256];
    out << "algorithm " << to_string(algorithm) << '\n';
    std::snprintf(line, sizeof line, "%8s %6s %9s %6s %8s %8s %9s %10s %14s\n", "epsilon",
                  "runs", "success%", "errors", "ese_inv", "ese_ok%", "ese_calls", "expensive",
                  "max_expensive");
    out << line;
    for (const SummaryRow &r : rows) {
        std::snprintf(line, sizeof line, "%8.2f %6lld %9.1f %6lld %8lld %8.1f %9lld %10lld %14lld\n",
                      r.epsilon, r.runs, r.success_percent(), r.errors, r.ese_invoked,
                      r.ese_success_percent(), r.ese_calls, r.expensive_calls, r.max_expensive);
        out << line;
    }
}

double projected_runtime(const BenchRecord &record, double tau_per_expensive_ms) {
    return record.wall_ms + static_cast<double>(record.expensive_calls) * tau_per_expensive_ms;
}

bool diminishing_marginal_check(double N, double D, double alpha, double beta, double delta) {
    auto eta = [&](double a, double b) { return (N + a) / (D + b); };
    auto close = [](double numeric, double analytic) {
        return std::abs(numeric - analytic) <= 1e-6 * std::max(std::abs(analytic), 1e-300);
    };

    const double ha = 1e-5 * std::max(1.0, std::abs(alpha));
    const double hb = 1e-5 * std::max(1.0, std::abs(beta));
    const double d_alpha = (eta(alpha + ha, beta) - eta(alpha - ha, beta)) / (2 * ha);
    const double d_beta = (eta(alpha, beta + hb) - eta(alpha, beta - hb)) / (2 * hb);
    const double denom = D + beta;
    if (!close(d_alpha, 1.0 / denom) || !close(d_beta, -(N + alpha) / (denom * denom)))
        return false;

    const double a1 = alpha / delta;
    const double a2 = a1 / delta;
    const double first = eta(alpha, beta) - eta(a1, beta);
    const double second = eta(a1, beta) - eta(a2, beta);
    return first > second && second > 0.0;
}

namespace {

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace

std::vector<BaseTask> load_corpus(const std::filesystem::path &directory) {
    if (!std::filesystem::is_directory(directory))
        throw std::runtime_error(directory.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(directory))
        if (entry.is_regular_file())
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    const std::filesystem::path domain_path = directory / "domain.pddl";
    const bool has_domain = std::filesystem::exists(domain_path);
    const std::string domain = has_domain ? read_file(domain_path) : std::string();

    std::vector<BaseTask> corpus;
    for (const auto &file : files) {
        const std::string ext = file.extension().string();
        if (ext == ".json") {
            NativeTask native = load_native(file);
            if (!native.oracle)
                throw std::runtime_error(file.string() +
                                         ": corpus tasks need true_cost on every action");
            BaseTask base;
            base.name = file.stem().string();
            for (double cost : native.oracle->costs()) {
                if (cost != std::floor(cost) || cost <= 0)
                    throw std::runtime_error(file.string() +
                                             ": corpus true costs must be positive integers");
                base.c_pddl.push_back(static_cast<long long>(cost));
            }
            base.task = std::move(native.task);
            corpus.push_back(std::move(base));
        } else if (ext == ".pddl" && has_domain && file.filename() != "domain.pddl") {
            pddl::GroundedTask grounded = pddl::load_pddl(domain, read_file(file));
            corpus.push_back({file.stem().string(), std::move(grounded.task),
                              std::move(grounded.c_pddl)});
        }
    }
    return corpus;
}

} // namespace asec
