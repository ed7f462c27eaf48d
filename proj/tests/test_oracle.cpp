#include "support.hpp"

#include "asec/native_format.hpp"

#include <gtest/gtest.h>

using namespace asec;

namespace {

NativeTask diamond() { return load_native(ASEC_TEST_DATA "/diamond.json"); }

ActionId by_name(const GroundTask &task, const std::string &name) {
    for (std::size_t a = 0; a < task.num_actions(); ++a)
        if (task.action(static_cast<ActionId>(a)).name == name)
            return static_cast<ActionId>(a);
    throw std::out_of_range(name);
}

} // namespace

TEST(Dijkstra, DiamondOptimum) {
    const NativeTask d = diamond();
    const OptimalSolution best = dijkstra_optimal(d.task, *d.oracle);
    EXPECT_EQ(best.cost, 3.0);
    ASSERT_TRUE(best.plan);
    EXPECT_EQ(best.plan->actions,
              (std::vector<ActionId>{by_name(d.task, "s0-a"), by_name(d.task, "a-g")}));
}

TEST(Dijkstra, Unsolvable) {
    const GroundTask task({{0, "p"}, {1, "q"}}, {{0, "a", {1}, {0}, {}}}, State(2), {0});
    const OptimalSolution best = dijkstra(task, {1.0});
    EXPECT_EQ(best.cost, infinity);
    EXPECT_FALSE(best.plan);
}

TEST(Dijkstra, EmptyPlan) {
    State init(1);
    init.set(0);
    const GroundTask task({{0, "p"}}, {}, init, {0});
    const OptimalSolution best = dijkstra(task, {});
    EXPECT_EQ(best.cost, 0.0);
    ASSERT_TRUE(best.plan);
    EXPECT_TRUE(best.plan->empty());
}

TEST(Dijkstra, StateCap) {
    RandomTaskParams p;
    p.atoms = 12;
    p.actions = 40;
    const BaseTask base = random_task(p, 3);
    std::vector<double> costs(base.c_pddl.begin(), base.c_pddl.end());
    EXPECT_THROW(dijkstra(base.task, costs, 1), OracleCapError);
    EXPECT_THROW(reachable_states(base.task, 1), OracleCapError);
}

TEST(EpsilonCheck, Examples) {
    const NativeTask d = diamond();
    const Plan optimal{{by_name(d.task, "s0-a"), by_name(d.task, "a-g")}};
    const Plan dearer{{by_name(d.task, "s0-b"), by_name(d.task, "b-g")}};
    EXPECT_TRUE(check_epsilon_optimal(d.task, optimal, *d.oracle, 3.0, 1.0));
    EXPECT_FALSE(check_epsilon_optimal(d.task, dearer, *d.oracle, 3.0, 1.2));
    EXPECT_TRUE(check_epsilon_optimal(d.task, dearer, *d.oracle, 3.0, 1.5));
    EXPECT_THROW(check_epsilon_optimal(d.task, Plan{{by_name(d.task, "a-g")}}, *d.oracle, 3.0,
                                       1.0),
                 StructuralError);
}

TEST(BoundTheorem, Examples) {
    const NativeTask d = diamond();
    const Plan optimal{{by_name(d.task, "s0-a"), by_name(d.task, "a-g")}};
    EXPECT_TRUE(check_bound_theorem(optimal, 1.0, *d.oracle, 3.0));
    EXPECT_TRUE(check_bound_theorem(optimal, 2.5, *d.oracle, 3.0));
    const Plan dearer{{by_name(d.task, "s0-b"), by_name(d.task, "b-g")}};
    EXPECT_FALSE(check_bound_theorem(dearer, 1.0, *d.oracle, 3.0));
}

TEST(CostToGo, Diamond) {
    const NativeTask d = diamond();
    const auto states = reachable_states(d.task);
    ASSERT_EQ(states.size(), 4u);
    EXPECT_EQ(states.front(), d.task.initial());
    const auto h = cost_to_go(d.task, states, d.oracle->costs());
    EXPECT_EQ(h[0], 3.0);
    for (std::size_t i = 0; i < states.size(); ++i)
        if (d.task.is_goal(states[i]))
            EXPECT_EQ(h[i], 0.0);
}

// Dijkstra against brute-force enumeration of bounded-length plans on tiny
// tasks.
TEST(Properties, MatchesEnumeration) {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        RandomTaskParams p;
        p.atoms = 4;
        p.actions = 5;
        const BaseTask base = random_task(p, rng.next());
        std::vector<double> costs(base.c_pddl.begin(), base.c_pddl.end());
        const double best = dijkstra(base.task, costs).cost;
        // Plans longer than the state count are never needed.
        double brute = infinity;
        std::vector<std::pair<State, double>> layer{{base.task.initial(), 0.0}};
        for (int depth = 0; depth <= 16 && !layer.empty(); ++depth) {
            std::vector<std::pair<State, double>> next;
            for (const auto &[s, g] : layer) {
                if (base.task.is_goal(s))
                    brute = std::min(brute, g);
                if (depth == 16)
                    continue;
                for (std::size_t a = 0; a < base.task.num_actions(); ++a) {
                    const GroundAction &act = base.task.action(static_cast<ActionId>(a));
                    if (applicable(s, act))
                        next.emplace_back(apply(s, act), g + costs[a]);
                }
            }
            // Keep the cheapest entry per state to bound the layer size.
            std::sort(next.begin(), next.end(), [](const auto &x, const auto &y) {
                return x.second < y.second;
            });
            std::vector<std::pair<State, double>> kept;
            for (auto &entry : next) {
                bool seen = false;
                for (const auto &k : kept)
                    seen = seen || k.first == entry.first;
                if (!seen)
                    kept.push_back(std::move(entry));
            }
            layer = std::move(kept);
        }
        EXPECT_EQ(best, brute);
    }
}
