// asec: plan with interval-valued action costs, and run benchmark grids.
//
// Exit codes of `plan`: 0 bound met, 2 plan found but bound missed,
// 3 unsolvable, 1 error. `bench` and `generate` return 0 or 1.

#include "asec/bench.hpp"
#include "asec/ese.hpp"
#include "asec/external_estimator.hpp"
#include "asec/native_format.hpp"
#include "asec/oracle.hpp"
#include "asec/pddl.hpp"
#include "asec/random_tasks.hpp"
#include "asec/search.hpp"
#include "asec/synthesis.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace asec;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_bound_missed = 2;
constexpr int exit_unsolvable = 3;

struct PlanOptions {
    std::vector<std::string> files;
    std::string algorithm = "asec";
    std::string heuristic = "hmax";
    double epsilon = 1.0;
    std::uint64_t seed = 0;
    double p1 = 1.0, p2 = 1.0, p3 = 1.0;
    bool ese = false;
    std::string ese_alt = "gmin";
    bool simulate_latency = false;
    bool lenient = false;
    bool validate = false;
    bool json = false;
    bool no_prune = false;
    std::string estimator_command;
    int estimator_timeout_ms = 30000;
    std::size_t max_states = 0;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

json number(double value) {
    if (!std::isfinite(value))
        return nullptr;
    return value;
}

json stats_json(const SearchStats &s) {
    json j;
    j["expansions"] = s.expansions;
    j["generations"] = s.generations;
    j["reopenings"] = s.reopenings;
    j["iterations"] = s.iterations;
    j["calls_per_tier"] = s.calls_per_tier;
    j["cheap_calls"] = s.cheap_calls;
    j["expensive_calls"] = s.expensive_calls;
    j["max_expensive_calls"] = s.max_expensive_calls;
    j["expensive_ratio"] = s.expensive_ratio() ? json(*s.expensive_ratio()) : json(nullptr);
    j["estimator_failures"] = s.estimator_failures;
    j["wall_ms"] = s.wall_ms;
    j["simulated_ms"] = s.simulated_ms;
    return j;
}

int cmd_plan(const PlanOptions &opt) {
    // Load the task: native JSON carries its own tiers, a PDDL pair gets
    // synthesized ones.
    GroundTask task;
    EstimatorTable estimators;
    std::optional<CostOracleTable> oracle;
    if (opt.files.size() == 1) {
        NativeTask native = load_native(opt.files[0], {opt.lenient});
        task = std::move(native.task);
        estimators = std::move(native.estimators);
        oracle = std::move(native.oracle);
    } else if (opt.files.size() == 2) {
        pddl::GroundOptions ground;
        ground.prune_unreachable = !opt.no_prune;
        pddl::GroundedTask grounded =
            pddl::load_pddl(read_file(opt.files[0]), read_file(opt.files[1]), ground);
        SynthesizedEstimators synth =
            synthesize_estimators(grounded.c_pddl, opt.p1, opt.p2, opt.p3, opt.seed);
        task = std::move(grounded.task);
        estimators = std::move(synth.estimators);
        oracle = std::move(synth.oracle);
    } else {
        throw std::runtime_error("expected a native task file or a PDDL domain/problem pair");
    }

    Algorithm algorithm = parse_algorithm(opt.algorithm);
    if (opt.ese)
        algorithm = Algorithm::asec_ese;
    const EseAltMode alt_mode = parse_ese_alt_mode(opt.ese_alt);

    std::unique_ptr<ExternalEstimatorClient> external;
    SearchSetup setup{task, estimators};
    setup.heuristic = parse_heuristic_kind(opt.heuristic);
    setup.cache_options.simulate_latency = opt.simulate_latency;
    setup.max_states = opt.max_states;
    if (!opt.estimator_command.empty()) {
        ExternalEstimatorConfig config;
        std::istringstream words(opt.estimator_command);
        for (std::string word; words >> word;)
            config.command.push_back(word);
        config.timeout = std::chrono::milliseconds(opt.estimator_timeout_ms);
        external = std::make_unique<ExternalEstimatorClient>(std::move(config));
        setup.backend = external.get();
    }

    SearchResult result;
    std::optional<EseResult> ese_result;
    double final_eta = infinity;
    bool met = false;
    switch (algorithm) {
    case Algorithm::asec:
        result = asec::asec(setup, opt.epsilon);
        break;
    case Algorithm::indifferent:
        result = indifferent(setup, opt.epsilon);
        break;
    case Algorithm::fully_lazy:
        result = fully_lazy(setup, opt.epsilon);
        break;
    case Algorithm::asec_ese: {
        AsecEseResult combined = asec_with_ese(setup, opt.epsilon, alt_mode);
        result = std::move(combined.search);
        ese_result = std::move(combined.ese);
        break;
    }
    }
    final_eta = ese_result ? ese_result->eta_eff : result.eta_eff;
    const PlanBounds bounds = ese_result ? ese_result->bounds : result.bounds;
    met = result.status == SearchStatus::epsilon_ok || (ese_result && ese_result->success);
    const SearchStatus status = met ? SearchStatus::epsilon_ok : result.status;

    json report;
    report["algorithm"] = to_string(algorithm);
    report["heuristic"] = to_string(setup.heuristic);
    report["epsilon"] = opt.epsilon;
    report["status"] = to_string(status);
    report["search_status"] = to_string(result.status);
    report["c_min"] = number(bounds.c_min);
    report["c_max"] = number(bounds.c_max);
    report["eta_eff"] = number(final_eta);
    report["stats"] = stats_json(result.stats);
    if (result.plan) {
        json steps = json::array();
        for (ActionId a : result.plan->actions)
            steps.push_back(task.action(a).name);
        report["plan"] = steps;
    } else {
        report["plan"] = nullptr;
    }
    if (ese_result) {
        json e;
        e["eta_eff"] = number(ese_result->eta_eff);
        e["success"] = ese_result->success;
        e["calls"] = ese_result->stats.calls;
        e["trajectory"] = ese_result->trajectory;
        e["alt_mode"] = to_string(alt_mode);
        report["ese"] = e;
    }
    if (opt.validate) {
        if (!oracle) {
            report["validation"] = "no true costs available";
        } else {
            json v;
            const OptimalSolution optimum = dijkstra_optimal(task, *oracle);
            v["optimal_cost"] = number(optimum.cost);
            if (result.plan) {
                v["true_cost"] = oracle->plan_cost(*result.plan);
                v["plan_valid"] = validate_plan(task, *result.plan);
                v["bound_theorem_holds"] =
                    check_bound_theorem(*result.plan, final_eta, *oracle, optimum.cost);
                v["epsilon_optimal"] = check_epsilon_optimal(task, *result.plan, *oracle,
                                                             optimum.cost, opt.epsilon);
            }
            report["validation"] = v;
        }
    }

    if (opt.json) {
        std::cout << report.dump(2) << '\n';
    } else {
        std::cout << "status: " << report["status"].get<std::string>() << '\n';
        if (result.plan) {
            std::cout << "plan (" << result.plan->size() << " steps):\n";
            for (ActionId a : result.plan->actions)
                std::cout << "  " << task.action(a).name << '\n';
            std::cout << "cost bounds: [" << format_double(bounds.c_min) << ", "
                      << format_double(bounds.c_max) << "]\n";
            std::cout << "eta_eff: " << format_double(final_eta) << " (epsilon "
                      << format_double(opt.epsilon) << ")\n";
        }
        const SearchStats &s = result.stats;
        std::cout << "expansions: " << s.expansions << "  generations: " << s.generations
                  << "  iterations: " << s.iterations << '\n';
        std::cout << "estimator calls: cheap " << s.cheap_calls << ", expensive "
                  << s.expensive_calls << " of " << s.max_expensive_calls << " potential";
        if (auto ratio = s.expensive_ratio())
            std::cout << " (ratio " << format_double(*ratio) << ")";
        std::cout << '\n';
        if (ese_result)
            std::cout << "ese: " << (ese_result->success ? "met bound" : "bound still missed")
                      << " after " << ese_result->stats.calls << " calls\n";
        if (report.contains("validation")) {
            const json &v = report["validation"];
            if (v.is_string()) {
                std::cout << "validation: " << v.get<std::string>() << '\n';
            } else {
                std::cout << "optimal cost: " << v["optimal_cost"].dump() << '\n';
                if (v.contains("true_cost")) {
                    std::cout << "true plan cost: " << v["true_cost"].dump() << '\n';
                    std::cout << "cost <= optimal * eta_eff: "
                              << (v["bound_theorem_holds"].get<bool>() ? "yes" : "NO") << '\n';
                    std::cout << "cost <= optimal * epsilon: "
                              << (v["epsilon_optimal"].get<bool>() ? "yes" : "no") << '\n';
                }
            }
        }
    }

    switch (status) {
    case SearchStatus::epsilon_ok:
        return exit_ok;
    case SearchStatus::plan_found_bound_missed:
        return exit_bound_missed;
    case SearchStatus::unsolvable:
        return exit_unsolvable;
    }
    return exit_error;
}

struct BenchCliOptions {
    std::string corpus;
    int desk_random = 0;
    int desk_transport = 0;
    std::uint64_t corpus_seed = 1;
    std::string out;
    std::string trend_tsv;
    std::vector<double> epsilons{1, 1.25, 1.5, 2, 3, 4};
    std::vector<double> p1{1}, p2{1}, p3{1};
    std::vector<std::uint64_t> seeds{0};
    std::vector<std::string> algorithms{"asec"};
    std::vector<std::string> heuristics{"hmax"};
    unsigned threads = 0;
    std::size_t max_states = 0;
    bool no_timing = false;
    std::string ese_alt = "gmin";
};

int cmd_bench(const BenchCliOptions &opt) {
    std::vector<BaseTask> tasks;
    if (!opt.corpus.empty())
        tasks = load_corpus(opt.corpus);
    if (opt.desk_random > 0 || opt.desk_transport > 0) {
        auto generated = desk_corpus(opt.desk_random, opt.desk_transport, opt.corpus_seed);
        for (auto &t : generated)
            tasks.push_back(std::move(t));
    }
    if (tasks.empty())
        throw std::runtime_error("corpus is empty");

    GridSpec grid;
    grid.epsilons = opt.epsilons;
    grid.p1 = opt.p1;
    grid.p2 = opt.p2;
    grid.p3 = opt.p3;
    grid.seeds = opt.seeds;
    grid.algorithms.clear();
    for (const auto &name : opt.algorithms)
        grid.algorithms.push_back(parse_algorithm(name));
    grid.heuristics.clear();
    for (const auto &name : opt.heuristics)
        grid.heuristics.push_back(parse_heuristic_kind(name));
    for (const VariantConfig &c : expand_grid(1, grid))
        c.validate();

    BenchOptions options;
    options.threads = opt.threads;
    options.timing = !opt.no_timing;
    options.max_states = opt.max_states;
    options.ese_alt = parse_ese_alt_mode(opt.ese_alt);

    const std::vector<BenchRecord> records = run_grid(tasks, grid, options);
    {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + opt.out);
        write_csv(out, records);
    }
    if (!opt.trend_tsv.empty()) {
        std::ofstream out(opt.trend_tsv, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + opt.trend_tsv);
        write_trend_tsv(out, aggregate_trend(records));
    }

    long long clean = 0;
    for (const BenchRecord &r : records) {
        if (r.error.empty())
            ++clean;
        else
            std::cerr << "run failed: " << r.task_name << " seed " << r.config.seed << ": "
                      << r.error << '\n';
    }
    std::cout << records.size() << " runs over " << tasks.size() << " tasks written to "
              << opt.out << '\n';
    for (Algorithm algorithm : grid.algorithms)
        write_summary_table(std::cout, algorithm, aggregate_summary(records, algorithm));
    return clean > 0 ? exit_ok : exit_error;
}

int cmd_generate(const std::string &directory, int random_count, int transport_count,
                 std::uint64_t seed) {
    std::filesystem::create_directories(directory);
    const std::vector<BaseTask> corpus = desk_corpus(random_count, transport_count, seed);
    for (const BaseTask &base : corpus) {
        EstimatorTable exact;
        std::vector<double> costs;
        for (long long c : base.c_pddl) {
            const auto cost = static_cast<double>(c);
            exact.emplace_back(std::vector<EstimatorSpec>{{cost, cost, 0.0}});
            costs.push_back(cost);
        }
        const CostOracleTable oracle(costs);
        std::ofstream out(std::filesystem::path(directory) / (base.name + ".json"),
                          std::ios::binary);
        out << write_native(base.task, exact, &oracle);
    }
    std::cout << corpus.size() << " tasks written to " << directory << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"A* with synchronous estimations of interval action costs"};
    app.require_subcommand(1);

    PlanOptions plan;
    CLI::App *plan_cmd = app.add_subcommand("plan", "solve one task");
    plan_cmd->add_option("task", plan.files, "native JSON task, or PDDL domain and problem")
        ->required()
        ->expected(1, 2);
    plan_cmd->add_option("-a,--algorithm", plan.algorithm,
                         "asec, asec+ese, indifferent or fully_lazy")
        ->capture_default_str();
    plan_cmd->add_option("--heuristic", plan.heuristic, "blind or hmax")->capture_default_str();
    plan_cmd->add_option("-e,--epsilon", plan.epsilon, "suboptimality bound")
        ->capture_default_str()
        ->check(CLI::Range(1.0, 1e300));
    plan_cmd->add_option("--seed", plan.seed, "estimator synthesis seed (PDDL input)")
        ->capture_default_str();
    plan_cmd->add_option("--p1", plan.p1, "probability an action is estimated (PDDL input)")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    plan_cmd->add_option("--p2", plan.p2, "probability of the second tier (PDDL input)")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    plan_cmd->add_option("--p3", plan.p3, "probability of the exact tier (PDDL input)")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    plan_cmd->add_flag("--ese", plan.ese, "refine the plan after search (same as -a asec+ese)");
    plan_cmd->add_option("--ese-alt", plan.ese_alt, "clamp by the best open node's gmin or f")
        ->capture_default_str()
        ->check(CLI::IsMember({"gmin", "f"}));
    plan_cmd->add_flag("--simulate-latency", plan.simulate_latency,
                       "sleep the nominal latency of every estimator call");
    plan_cmd->add_flag("--lenient", plan.lenient, "ignore unknown keys in native tasks");
    plan_cmd->add_flag("--validate", plan.validate,
                       "check the plan against the true costs, if known");
    plan_cmd->add_flag("--json", plan.json, "print the report as JSON");
    plan_cmd->add_flag("--no-prune", plan.no_prune, "keep relaxed-unreachable PDDL actions");
    plan_cmd->add_option("--estimator-cmd", plan.estimator_command,
                         "external estimator command line");
    plan_cmd->add_option("--estimator-timeout-ms", plan.estimator_timeout_ms)
        ->capture_default_str();
    plan_cmd->add_option("--max-states", plan.max_states, "state cap, 0 for none")
        ->capture_default_str();

    BenchCliOptions bench;
    CLI::App *bench_cmd = app.add_subcommand("bench", "run an experiment grid");
    bench_cmd->add_option("corpus", bench.corpus,
                          "directory of native tasks and/or domain.pddl with problems");
    bench_cmd->add_option("-o,--out", bench.out, "CSV output path")->required();
    bench_cmd->add_option("--desk-random", bench.desk_random,
                          "also generate this many random STRIPS tasks");
    bench_cmd->add_option("--desk-transport", bench.desk_transport,
                          "also generate this many transport tasks");
    bench_cmd->add_option("--corpus-seed", bench.corpus_seed)->capture_default_str();
    bench_cmd->add_option("--epsilon", bench.epsilons)->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--p1", bench.p1)->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--p2", bench.p2)->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--p3", bench.p3)->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--seeds", bench.seeds)->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--algorithms", bench.algorithms)->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--heuristics", bench.heuristics)->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--threads", bench.threads, "0 for hardware concurrency");
    bench_cmd->add_option("--max-states", bench.max_states, "per-run state cap, 0 for none");
    bench_cmd->add_flag("--no-timing", bench.no_timing,
                        "write 0 for wall_ms so reruns are byte-identical");
    bench_cmd->add_option("--ese-alt", bench.ese_alt)
        ->capture_default_str()
        ->check(CLI::IsMember({"gmin", "f"}));
    bench_cmd->add_option("--trend-tsv", bench.trend_tsv,
                          "also write per (algorithm, p1, epsilon) means as TSV");

    std::string gen_dir;
    int gen_random = 20, gen_transport = 5;
    std::uint64_t gen_seed = 1;
    CLI::App *gen_cmd = app.add_subcommand("generate", "write a desk-scale corpus");
    gen_cmd->add_option("directory", gen_dir)->required();
    gen_cmd->add_option("--random", gen_random)->capture_default_str();
    gen_cmd->add_option("--transport", gen_transport)->capture_default_str();
    gen_cmd->add_option("--seed", gen_seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (*plan_cmd)
            return cmd_plan(plan);
        if (*bench_cmd)
            return cmd_bench(bench);
        if (*gen_cmd)
            return cmd_generate(gen_dir, gen_random, gen_transport, gen_seed);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
