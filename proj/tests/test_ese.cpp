#include "support.hpp"

#include "asec/ese.hpp"
#include "asec/native_format.hpp"

#include <gtest/gtest.h>

using namespace asec;

namespace {

GroundTask one_action_task() {
    return GroundTask({{0, "p"}}, {{0, "a", {}, {0}, {}}}, State(1), {0});
}

// s0 -a-> m -b-> g next to a direct s0 -y-> g. The search reaches g through
// m first and returns a+b; refining a alone would certify the plan against
// its own lower bound although y is cheaper.
const char *detour = R"({"atoms": ["s0", "m", "g"], "init": ["s0"], "goal": ["g"], "actions": [
  {"name": "a", "pre": ["s0"], "add": ["m"], "del": ["s0"],
   "estimators": [{"cmin": 10, "cmax": 20, "tau_ms": 0}, {"cmin": 20, "cmax": 20, "tau_ms": 1}],
   "true_cost": 20},
  {"name": "b", "pre": ["m"], "add": ["g"], "del": ["m"],
   "estimators": [{"cmin": 10, "cmax": 30, "tau_ms": 0}], "true_cost": 30},
  {"name": "y", "pre": ["s0"], "add": ["g"], "del": ["s0"],
   "estimators": [{"cmin": 24, "cmax": 24, "tau_ms": 0}], "true_cost": 24}]})";

} // namespace

TEST(Ese, RefinesToExactWhenAlternativeIsDearer) {
    const GroundTask task = one_action_task();
    const EstimatorTable table{EstimatorSet({{4, 8, 0}, {5, 5, 1}})};
    TableBackend backend(table);
    BoundCache cache(task, table, backend);
    cache.refine(0);
    const Plan plan{{0}};
    EseContext ctx{plan, {cache.bounds(0)}, cache, OpenSnapshot{9, 9}, 1.0, 2.0,
                   EseAltMode::g_min, {}, std::nullopt};
    const EseResult r = ese(ctx);
    EXPECT_EQ(r.bounds, (PlanBounds{5, 5}));
    EXPECT_EQ(r.eta_eff, 1.0);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.stats.calls, 1);
}

TEST(Ese, CheaperAlternativeClampsDenominator) {
    const GroundTask task = one_action_task();
    const EstimatorTable table{EstimatorSet({{4, 8, 0}, {5, 6, 1}})};
    TableBackend backend(table);
    BoundCache cache(task, table, backend);
    cache.refine(0);
    const Plan plan{{0}};
    EseContext ctx{plan, {cache.bounds(0)}, cache, OpenSnapshot{3, 3}, 1.0, 2.0,
                   EseAltMode::g_min, {}, std::nullopt};
    const EseResult r = ese(ctx);
    EXPECT_EQ(r.bounds, (PlanBounds{5, 6}));
    EXPECT_EQ(r.eta_eff, 2.0);
    EXPECT_FALSE(r.success);
}

TEST(Ese, FModeUsesF) {
    const GroundTask task = one_action_task();
    const EstimatorTable table{EstimatorSet({{4, 8, 0}, {5, 6, 1}})};
    TableBackend backend(table);
    BoundCache cache(task, table, backend);
    cache.refine(0);
    const Plan plan{{0}};
    EseContext ctx{plan, {cache.bounds(0)}, cache, OpenSnapshot{1, 4}, 1.0, 2.0,
                   EseAltMode::f, {}, std::nullopt};
    EXPECT_DOUBLE_EQ(ese(ctx).eta_eff, 1.5);
}

TEST(Ese, NoUnusedTiersLeavesRatio) {
    const GroundTask task = one_action_task();
    const EstimatorTable table{EstimatorSet({{4, 8, 0}})};
    TableBackend backend(table);
    BoundCache cache(task, table, backend);
    cache.refine(0);
    const Plan plan{{0}};
    EseContext ctx{plan, {cache.bounds(0)}, cache, std::nullopt, 1.0, 2.0,
                   EseAltMode::g_min, {}, std::nullopt};
    const EseResult r = ese(ctx);
    EXPECT_EQ(r.eta_eff, 2.0);
    EXPECT_EQ(r.stats.calls, 0);
    EXPECT_TRUE(r.trajectory.empty());
}

TEST(Ese, MismatchedStepsRejected) {
    const GroundTask task = one_action_task();
    const EstimatorTable table{EstimatorSet({{4, 8, 0}})};
    TableBackend backend(table);
    BoundCache cache(task, table, backend);
    const Plan plan{{0}};
    EseContext ctx{plan, {}, cache, std::nullopt, 1.0, 2.0, EseAltMode::g_min, {},
                   std::nullopt};
    EXPECT_THROW(ese(ctx), std::invalid_argument);
}

TEST(Ese, DetourIsNotCertified) {
    const NativeTask t = parse_native(detour);
    const double c_star = dijkstra_optimal(t.task, *t.oracle).cost;
    ASSERT_EQ(c_star, 24.0);
    const AsecEseResult r = asec_with_ese({t.task, t.estimators}, 2.0);
    ASSERT_TRUE(r.search.plan);
    ASSERT_EQ(r.search.plan->size(), 2u);
    EXPECT_EQ(r.search.status, SearchStatus::plan_found_bound_missed);
    ASSERT_TRUE(r.ese);
    EXPECT_FALSE(r.success());
    EXPECT_TRUE(check_bound_theorem(*r.search.plan, r.eta_eff(), *t.oracle, c_star));
}

// Without the explored-graph clamp the same run certifies a plan of cost 50
// against an optimum of 24 at epsilon 2.
TEST(Ese, DetourUnsoundWithoutExploredClamp) {
    const NativeTask t = parse_native(detour);
    AsecSearch search({t.task, t.estimators}, 2.0);
    const SearchResult r = search.run();
    ASSERT_TRUE(r.plan);
    EseContext ctx{*r.plan, r.step_bounds, search.cache(), search.best_open(), 2.0, r.eta_eff,
                   EseAltMode::g_min, {}, std::nullopt};
    const EseResult literal = ese(ctx);
    EXPECT_TRUE(literal.success);
    EXPECT_GT(t.oracle->plan_cost(*r.plan), 2.0 * 24.0);
}

// Ratios never increase along the trajectory, ESE never changes the plan,
// and a success is epsilon-optimal against the true optimum.
TEST(Properties, SoundAndMonotoneOnRandomInstances) {
    const auto instances = asec::testing::solvable_instances(150, 21);
    int invoked = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const BaseTask &base = instances[i];
        const auto syn = synthesize_estimators(base.c_pddl, 1, 0.5, 0.5, i);
        const double c_star = dijkstra_optimal(base.task, syn.oracle).cost;
        for (EseAltMode mode : {EseAltMode::g_min, EseAltMode::f}) {
            for (double eps : {1.0, 1.5, 2.0, 3.0}) {
                SearchSetup setup{base.task, syn.estimators};
                setup.heuristic = HeuristicKind::hmax;
                setup.cache_options.oracle = &syn.oracle;
                const AsecEseResult r = asec_with_ese(setup, eps, mode);
                ASSERT_TRUE(r.search.plan);
                EXPECT_EQ(*r.search.plan, *asec::asec(setup, eps).plan);
                if (!r.ese)
                    continue;
                ++invoked;
                double previous = r.search.eta_eff;
                for (double eta : r.ese->trajectory) {
                    EXPECT_LE(eta, previous * (1 + 1e-12));
                    previous = eta;
                }
                if (r.success())
                    EXPECT_TRUE(check_epsilon_optimal(base.task, *r.search.plan, syn.oracle,
                                                      c_star, eps));
                EXPECT_TRUE(
                    check_bound_theorem(*r.search.plan, r.eta_eff(), syn.oracle, c_star));
            }
        }
    }
    EXPECT_GT(invoked, 0);
}

TEST(Names, AltModes) {
    EXPECT_EQ(parse_ese_alt_mode("gmin"), EseAltMode::g_min);
    EXPECT_EQ(parse_ese_alt_mode("f"), EseAltMode::f);
    EXPECT_THROW(parse_ese_alt_mode("h"), std::invalid_argument);
}
