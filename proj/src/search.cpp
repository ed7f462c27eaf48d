#include "asec/search.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <stdexcept>

namespace asec {

std::string to_string(SearchStatus status) {
    switch (status) {
    case SearchStatus::epsilon_ok: return "epsilon_ok";
    case SearchStatus::plan_found_bound_missed: return "plan_found_bound_missed";
    case SearchStatus::unsolvable: return "unsolvable";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string &name) {
    if (name == "asec")
        return Algorithm::asec;
    if (name == "asec+ese" || name == "asec_ese")
        return Algorithm::asec_ese;
    if (name == "indifferent")
        return Algorithm::indifferent;
    if (name == "fully_lazy" || name == "fully-lazy")
        return Algorithm::fully_lazy;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::asec: return "asec";
    case Algorithm::asec_ese: return "asec+ese";
    case Algorithm::indifferent: return "indifferent";
    case Algorithm::fully_lazy: return "fully_lazy";
    }
    return "unknown";
}

std::optional<double> SearchStats::expensive_ratio() const {
    if (max_expensive_calls == 0)
        return std::nullopt;
    return static_cast<double>(expensive_calls) / static_cast<double>(max_expensive_calls);
}

std::vector<double> final_lower_bounds(const BoundCache &cache) {
    std::vector<double> lows(cache.task().num_actions());
    for (std::size_t a = 0; a < lows.size(); ++a) {
        const auto id = static_cast<ActionId>(a);
        lows[a] = cache.estimated(id) ? cache.bounds(id).lo : cache.estimators()[a].tier(0).c_min;
    }
    return lows;
}

namespace detail {

BestFirstEngine::BestFirstEngine(const SearchSetup &setup, Heuristic &heuristic,
                                 EdgeEvaluator evaluator)
    : setup(setup), heuristic(heuristic), evaluator(std::move(evaluator)) {
}

StateId BestFirstEngine::intern(State state) {
    auto it = index.find(state);
    if (it != index.end())
        return it->second;
    if (setup.max_states != 0 && states.size() >= setup.max_states)
        throw StateLimitError("state limit of " + std::to_string(setup.max_states) +
                              " exceeded");
    const auto id = static_cast<StateId>(states.size());
    SearchNode node;
    node.h = heuristic.evaluate(state);
    index.emplace(state, id);
    states.push_back(std::move(state));
    nodes.push_back(node);
    return id;
}

bool BestFirstEngine::is_current(const OpenList<StateId>::Entry &entry) const {
    const SearchNode &node = nodes[entry.id];
    return node.status == SearchNode::Status::open && node.version == entry.version;
}

void BestFirstEngine::insert(StateId id) {
    SearchNode &node = nodes[id];
    ++node.version;
    node.status = SearchNode::Status::open;
    const double f = node.g_min + node.h;
    if (setup.check_invariants) {
        if (!(node.g_min <= node.g_max))
            throw std::logic_error("OPEN invariant violated: g_min > g_max");
        if (!(f >= node.g_min))
            throw std::logic_error("OPEN invariant violated: f < g_min");
    }
    open.push(id, f, node.g_min, node.version);
}

std::optional<OpenSnapshot> BestFirstEngine::best_open() {
    auto top = open.peek([this](const auto &e) { return is_current(e); });
    if (!top)
        return std::nullopt;
    return OpenSnapshot{nodes[top->id].g_min, top->f};
}

double BestFirstEngine::explored_lower_bound(
    const std::function<double(ActionId)> &lower_cost) const {
    if (states.empty())
        return infinity;
    std::vector<double> dist(states.size(), infinity);
    using Item = std::pair<double, StateId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[0] = 0.0;
    queue.emplace(0.0, 0);
    double best = infinity;
    while (!queue.empty()) {
        auto [d, id] = queue.top();
        queue.pop();
        if (d > dist[id] || d >= best)
            continue;
        const SearchNode &node = nodes[id];
        if (setup.task.is_goal(states[id])) {
            best = std::min(best, d);
            continue;
        }
        if (node.status != SearchNode::Status::closed) {
            best = std::min(best, d + node.h);
            continue;
        }
        // Every successor of a CLOSED state was interned when it was expanded.
        for (const GroundAction &action : setup.task.actions()) {
            if (!applicable(states[id], action))
                continue;
            const StateId succ = index.at(apply(states[id], action));
            const double nd = d + lower_cost(action.id);
            if (nd < dist[succ]) {
                dist[succ] = nd;
                queue.emplace(nd, succ);
            }
        }
    }
    return best;
}

SearchResult BestFirstEngine::search() {
    SearchResult result;
    const GroundTask &task = setup.task;
    const StateId root = intern(task.initial());
    if (nodes[root].h == infinity)
        return result;
    nodes[root].g_min = 0.0;
    nodes[root].g_max = 0.0;
    insert(root);

    auto current = [this](const auto &e) { return is_current(e); };
    while (auto entry = open.pop(current)) {
        const StateId id = entry->id;
        nodes[id].status = SearchNode::Status::closed;
        if (task.is_goal(states[id])) {
            Plan plan;
            for (StateId s = id; nodes[s].parent >= 0; s = nodes[s].parent) {
                plan.actions.push_back(nodes[s].action);
                result.step_bounds.push_back(nodes[s].edge);
            }
            std::reverse(plan.actions.begin(), plan.actions.end());
            std::reverse(result.step_bounds.begin(), result.step_bounds.end());
            result.plan = std::move(plan);
            result.bounds = {nodes[id].g_min, nodes[id].g_max};
            result.eta_eff = eta_eff(result.bounds);
            return result;
        }
        ++expansions;
        const SearchNode parent = nodes[id];
        const State state = states[id];
        for (const GroundAction &action : task.actions()) {
            if (!applicable(state, action))
                continue;
            const StateId succ = intern(apply(state, action));
            ++generations;
            if (nodes[succ].h == infinity)
                continue;
            std::optional<Interval> edge = evaluator(parent, action.id, nodes[succ].g_min);
            if (!edge)
                continue;
            const double g_lo = parent.g_min + edge->lo;
            const double g_hi = parent.g_max + edge->hi;
            SearchNode &node = nodes[succ];
            if (g_lo < node.g_min) {
                if (node.status == SearchNode::Status::closed)
                    ++reopenings;
                node.g_min = g_lo;
                node.g_max = g_hi;
                node.parent = id;
                node.action = action.id;
                node.edge = *edge;
                insert(succ);
            }
        }
    }
    return result;
}

} // namespace detail

namespace {

void fill_stats(SearchStats &stats, const BoundCache &cache, const detail::BestFirstEngine &engine) {
    stats.expansions += engine.expansions;
    stats.generations += engine.generations;
    stats.reopenings += engine.reopenings;
    const EstimationStats &est = cache.stats();
    stats.calls_per_tier = est.calls_per_tier;
    stats.cheap_calls = est.cheap_calls();
    stats.expensive_calls = est.expensive_calls();
    stats.max_expensive_calls = cache.max_expensive_calls();
    stats.estimator_failures = est.failures;
    stats.simulated_ms = est.simulated_ms;
}

void set_status(SearchResult &result, double epsilon) {
    if (!result.plan) {
        result.status = SearchStatus::unsolvable;
        result.eta_eff = infinity;
    } else {
        result.status = within_bound(result.eta_eff, epsilon)
                            ? SearchStatus::epsilon_ok
                            : SearchStatus::plan_found_bound_missed;
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void check_epsilon(double epsilon) {
    if (!(epsilon >= 1.0))
        throw std::invalid_argument("epsilon must be >= 1");
}

/// Owns the per-run pieces every engine needs.
struct RunContext {
    RunContext(const SearchSetup &setup)
        : backend(setup.backend), view(HeuristicCostView::from_first_tier(setup.estimators)) {
        if (!backend) {
            table_backend = std::make_unique<TableBackend>(setup.estimators);
            backend = table_backend.get();
        }
        cache = std::make_unique<BoundCache>(setup.task, setup.estimators, *backend,
                                             setup.cache_options);
        heuristic = make_heuristic(setup.heuristic, setup.task, view);
    }

    std::unique_ptr<TableBackend> table_backend;
    EstimatorBackend *backend;
    HeuristicCostView view;
    std::unique_ptr<BoundCache> cache;
    std::unique_ptr<Heuristic> heuristic;
};

} // namespace

AsecSearch::AsecSearch(const SearchSetup &setup, double epsilon)
    : setup(setup), epsilon(epsilon), view_(HeuristicCostView::from_first_tier(setup.estimators)) {
    check_epsilon(epsilon);
    EstimatorBackend *backend = setup.backend;
    if (!backend) {
        table_backend = std::make_unique<TableBackend>(setup.estimators);
        backend = table_backend.get();
    }
    cache_ = std::make_unique<BoundCache>(setup.task, setup.estimators, *backend,
                                          setup.cache_options);
    heuristic = make_heuristic(setup.heuristic, setup.task, view_);

    auto evaluate = [this](const detail::SearchNode &node, ActionId action,
                           double successor_g_min) -> std::optional<Interval> {
        BoundCache &cache = *cache_;
        double g_lo = 0.0;
        double eta = infinity;
        if (cache.estimated(action)) {
            const Interval b = cache.bounds(action);
            g_lo = node.g_min + b.lo;
            eta = eta_eff(g_lo, node.g_max + b.hi);
        }
        while (!within_bound(eta, this->epsilon) && g_lo < successor_g_min &&
               cache.has_unused_tier(action)) {
            if (!cache.refine(action))
                break;
            const Interval b = cache.bounds(action);
            g_lo = node.g_min + b.lo;
            eta = eta_eff(g_lo, node.g_max + b.hi);
        }
        if (!cache.estimated(action))
            return std::nullopt;
        return cache.bounds(action);
    };
    engine = std::make_unique<detail::BestFirstEngine>(this->setup, *heuristic, evaluate);
}

AsecSearch::~AsecSearch() = default;

SearchResult AsecSearch::run() {
    const auto start = std::chrono::steady_clock::now();
    SearchResult result = engine->search();
    set_status(result, epsilon);
    fill_stats(result.stats, *cache_, *engine);
    result.stats.iterations = 1;
    result.stats.wall_ms = elapsed_ms(start);
    return result;
}

std::optional<OpenSnapshot> AsecSearch::best_open() {
    return engine->best_open();
}

double AsecSearch::explored_lower_bound() const {
    const BoundCache &cache = *cache_;
    return engine->explored_lower_bound([&](ActionId a) {
        return cache.estimated(a) ? cache.bounds(a).lo : view_[a];
    });
}

SearchResult asec(const SearchSetup &setup, double epsilon) {
    return AsecSearch(setup, epsilon).run();
}

SearchResult indifferent(const SearchSetup &setup, double epsilon) {
    check_epsilon(epsilon);
    const auto start = std::chrono::steady_clock::now();
    RunContext ctx(setup);
    BoundCache &cache = *ctx.cache;
    auto evaluate = [&cache](const detail::SearchNode &, ActionId action,
                             double) -> std::optional<Interval> {
        if (!cache.estimated(action)) {
            while (cache.refine(action)) {
            }
        }
        if (!cache.estimated(action))
            return std::nullopt;
        return cache.bounds(action);
    };
    detail::BestFirstEngine engine(setup, *ctx.heuristic, evaluate);
    SearchResult result = engine.search();
    set_status(result, epsilon);
    fill_stats(result.stats, cache, engine);
    result.stats.iterations = 1;
    result.stats.wall_ms = elapsed_ms(start);
    return result;
}

SearchResult fully_lazy(const SearchSetup &setup, double epsilon) {
    check_epsilon(epsilon);
    const auto start = std::chrono::steady_clock::now();
    RunContext ctx(setup);
    BoundCache &cache = *ctx.cache;
    auto evaluate = [&cache](const detail::SearchNode &, ActionId action,
                             double) -> std::optional<Interval> {
        if (!cache.estimated(action))
            cache.refine(action);
        if (!cache.estimated(action))
            return std::nullopt;
        return cache.bounds(action);
    };

    SearchStats totals;
    std::optional<SearchResult> best;
    for (;;) {
        detail::BestFirstEngine engine(setup, *ctx.heuristic, evaluate);
        SearchResult result = engine.search();
        set_status(result, epsilon);
        fill_stats(totals, cache, engine);
        ++totals.iterations;

        const bool done = result.status != SearchStatus::plan_found_bound_missed;
        if (result.plan && (!best || result.eta_eff < best->eta_eff))
            best = result;
        if (done) {
            if (result.status == SearchStatus::epsilon_ok || !best)
                best = std::move(result);
            break;
        }
        bool refined = false;
        for (ActionId a : result.plan->actions) {
            if (cache.refine(a)) {
                refined = true;
                break;
            }
        }
        if (!refined)
            break;
    }
    SearchResult final_result = std::move(*best);
    final_result.stats = totals;
    final_result.stats.wall_ms = elapsed_ms(start);
    return final_result;
}

} // namespace asec
