#ifndef ASEC_BENCH_HPP
#define ASEC_BENCH_HPP

#include "asec/ese.hpp"
#include "asec/heuristics.hpp"
#include "asec/random_tasks.hpp"
#include "asec/search.hpp"
#include "asec/synthesis.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asec {

struct VariantConfig {
    /// Index into the task list handed to run_variant / run_grid.
    std::size_t task = 0;
    double epsilon = 1.0;
    double p1 = 1.0;
    double p2 = 1.0;
    double p3 = 1.0;
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::asec;
    HeuristicKind heuristic = HeuristicKind::blind;

    /// Throws std::invalid_argument for probabilities outside [0, 1] or epsilon < 1.
    void validate() const;
};

struct BenchRecord {
    std::string task_name;
    VariantConfig config;
    bool success = false;
    double eta_eff = infinity;
    long long expansions = 0;
    long long cheap_calls = 0;
    /// Expensive calls of the search itself (ESE calls are counted separately).
    long long expensive_calls = 0;
    long long max_expensive = 0;
    bool ese_invoked = false;
    bool ese_success = false;
    long long ese_calls = 0;
    double wall_ms = 0.0;
    double est_ms = 0.0;

    /// Not part of the CSV.
    SearchStatus status = SearchStatus::unsolvable;
    std::optional<Plan> plan;
    PlanBounds bounds;
    /// Non-empty when the run failed; the other metrics are then meaningless.
    std::string error;

    std::optional<double> expensive_ratio() const;
};

struct BenchOptions {
    /// Worker threads; 0 picks hardware concurrency.
    unsigned threads = 0;
    /// Record wall-clock time. Off makes reruns byte-identical.
    bool timing = true;
    /// Per-run cap on interned states; 0 means unlimited.
    std::size_t max_states = 0;
    /// Check every cached interval against the hidden true cost.
    bool check_oracle = true;
    SynthesisOptions synthesis{};
    EseAltMode ese_alt = EseAltMode::g_min;
};

/// One run. Failures (bad config, synthesis errors, state cap) end up in
/// `BenchRecord::error`, never in an exception.
BenchRecord run_variant(const BaseTask &task, const VariantConfig &config,
                        const BenchOptions &options = {});

struct GridSpec {
    std::vector<double> epsilons{1.0};
    std::vector<double> p1{1.0};
    std::vector<double> p2{1.0};
    std::vector<double> p3{1.0};
    std::vector<std::uint64_t> seeds{0};
    std::vector<Algorithm> algorithms{Algorithm::asec};
    std::vector<HeuristicKind> heuristics{HeuristicKind::blind};
};

/// Every (task, config) combination ordered by
/// (task, seed, algorithm, heuristic, epsilon, p1, p2, p3).
std::vector<VariantConfig> expand_grid(std::size_t task_count, const GridSpec &grid);

/// Runs the grid in parallel. Output order is the expand_grid order
/// regardless of scheduling.
std::vector<BenchRecord> run_grid(const std::vector<BaseTask> &tasks, const GridSpec &grid,
                                  const BenchOptions &options = {});

inline constexpr const char *csv_header =
    "task,seed,algorithm,heuristic,epsilon,p1,p2,p3,success,eta_eff,expansions,cheap_calls,"
    "expensive_calls,max_expensive,ese_invoked,ese_success,ese_calls,wall_ms,est_ms";

/// Shortest round-trip representation; "inf" for infinity.
std::string format_double(double value);
std::string csv_row(const BenchRecord &record);
void write_csv(std::ostream &out, const std::vector<BenchRecord> &records);
std::string to_csv(const std::vector<BenchRecord> &records);

/// Mean expensive ratio and mean returned eta per (algorithm, p1, epsilon).
struct TrendRow {
    Algorithm algorithm = Algorithm::asec;
    double p1 = 0.0;
    double epsilon = 1.0;
    long long runs = 0;
    /// Runs that touched at least one action with expensive tiers.
    long long ratio_runs = 0;
    double mean_expensive_ratio = 0.0;
    /// Over runs that returned a plan.
    double mean_eta_eff = 0.0;
    long long successes = 0;
};

std::vector<TrendRow> aggregate_trend(const std::vector<BenchRecord> &records);

/// Per-epsilon success and ESE summary for one algorithm.
struct SummaryRow {
    double epsilon = 1.0;
    long long runs = 0;
    long long successes = 0;
    long long errors = 0;
    long long ese_invoked = 0;
    long long ese_success = 0;
    long long ese_calls = 0;
    long long expensive_calls = 0;
    long long max_expensive = 0;

    double success_percent() const;
    double ese_success_percent() const;
};

std::vector<SummaryRow> aggregate_summary(const std::vector<BenchRecord> &records,
                                          Algorithm algorithm);

void write_trend_tsv(std::ostream &out, const std::vector<TrendRow> &rows);
void write_summary_table(std::ostream &out, Algorithm algorithm,
                         const std::vector<SummaryRow> &rows);

/// Wall time plus a nominal latency per expensive call.
double projected_runtime(const BenchRecord &record, double tau_per_expensive_ms);

/// For eta = (N + alpha) / (D + beta): checks both partial derivatives
/// against central finite differences (relative tolerance 1e-6) and that
/// improving alpha by successive factors of delta yields strictly smaller
/// ratio improvements.
bool diminishing_marginal_check(double N, double D, double alpha, double beta, double delta);

/// Loads a corpus directory: every native *.json task (base costs come from
/// its integral true costs) and, if domain.pddl exists, every other *.pddl
/// file as a problem for it. Sorted by file name.
std::vector<BaseTask> load_corpus(const std::filesystem::path &directory);

} // namespace asec

#endif
