#include "support.hpp"

#include "asec/task.hpp"

#include <gtest/gtest.h>

using namespace asec;

namespace {

GroundTask small_task(std::vector<GroundAction> actions, std::vector<AtomId> init,
                      std::vector<AtomId> goal, int atoms = 3) {
    std::vector<Atom> list;
    for (int i = 0; i < atoms; ++i)
        list.push_back({i, "p" + std::to_string(i)});
    State s(static_cast<std::size_t>(atoms));
    for (AtomId a : init)
        s.set(a);
    return GroundTask(std::move(list), std::move(actions), s, std::move(goal));
}

State make_state(std::size_t n, std::initializer_list<AtomId> atoms) {
    State s(n);
    for (AtomId a : atoms)
        s.set(a);
    return s;
}

GroundAction action(ActionId id, std::vector<AtomId> pre, std::vector<AtomId> add,
                    std::vector<AtomId> del) {
    return {id, "a" + std::to_string(id), std::move(pre), std::move(add), std::move(del)};
}

} // namespace

TEST(Applicable, SubsetOfState) {
    EXPECT_TRUE(applicable(make_state(3, {0}), action(0, {0}, {}, {})));
}

TEST(Applicable, EmptyStateFailsPrecondition) {
    EXPECT_FALSE(applicable(make_state(3, {}), action(0, {0}, {}, {})));
}

TEST(Applicable, EmptyPrecondition) {
    EXPECT_TRUE(applicable(make_state(3, {0, 1}), action(0, {}, {}, {})));
}

TEST(Apply, Swap) {
    EXPECT_EQ(apply(make_state(3, {0}), action(0, {0}, {1}, {0})), make_state(3, {1}));
}

TEST(Apply, NoOpEffect) {
    EXPECT_EQ(apply(make_state(3, {0}), action(0, {0}, {}, {})), make_state(3, {0}));
}

TEST(Apply, FrameAxiom) {
    EXPECT_EQ(apply(make_state(3, {0, 1}), action(0, {1}, {2}, {1})), make_state(3, {0, 2}));
}

TEST(Apply, NotApplicableThrows) {
    EXPECT_THROW(apply(make_state(3, {}), action(0, {0}, {1}, {})), PreconditionViolation);
}

TEST(ValidatePlan, EmptyPlanGoalInInitial) {
    const GroundTask t = small_task({action(0, {0}, {1}, {0})}, {0}, {0});
    EXPECT_TRUE(validate_plan(t, Plan{}));
}

TEST(ValidatePlan, EmptyPlanGoalMissing) {
    const GroundTask t = small_task({action(0, {0}, {1}, {0})}, {0}, {1});
    EXPECT_FALSE(validate_plan(t, Plan{}));
}

TEST(ValidatePlan, SingleStep) {
    const GroundTask t = small_task({action(0, {0}, {1}, {0})}, {0}, {1});
    EXPECT_TRUE(validate_plan(t, Plan{{0}}));
}

TEST(ValidatePlan, InapplicableStepIsFalse) {
    const GroundTask t = small_task({action(0, {0}, {1}, {0})}, {0}, {1});
    EXPECT_FALSE(validate_plan(t, Plan{{0, 0}}));
}

TEST(ValidatePlan, UnknownActionIsStructuralError) {
    const GroundTask t = small_task({action(0, {0}, {1}, {0})}, {0}, {1});
    EXPECT_THROW(validate_plan(t, Plan{{3}}), StructuralError);
    EXPECT_THROW(validate_plan(t, Plan{{-1}}), StructuralError);
}

TEST(GroundTask, RejectsOverlappingAddDelete) {
    EXPECT_THROW(small_task({action(0, {}, {1}, {1})}, {}, {1}), StructuralError);
}

TEST(GroundTask, RejectsOutOfRangeAtoms) {
    EXPECT_THROW(small_task({action(0, {7}, {1}, {})}, {}, {1}), StructuralError);
    EXPECT_THROW(small_task({action(0, {}, {1}, {})}, {}, {9}), StructuralError);
}

TEST(GroundTask, RejectsDuplicateNames) {
    std::vector<Atom> atoms{{0, "p"}, {1, "p"}};
    EXPECT_THROW(GroundTask(atoms, {}, State(2), {}), StructuralError);
    GroundAction a = action(0, {}, {0}, {});
    GroundAction b = action(1, {}, {1}, {});
    b.name = a.name;
    EXPECT_THROW(small_task({a, b}, {}, {0}), StructuralError);
}

TEST(GroundTask, RejectsNonContiguousIds) {
    EXPECT_THROW(small_task({action(1, {}, {0}, {})}, {}, {0}), StructuralError);
    std::vector<Atom> atoms{{1, "p"}};
    EXPECT_THROW(GroundTask(atoms, {}, State(1), {}), StructuralError);
}

TEST(GroundTask, RejectsWrongStateWidth) {
    std::vector<Atom> atoms{{0, "p"}, {1, "q"}};
    EXPECT_THROW(GroundTask(atoms, {}, State(3), {}), StructuralError);
}

TEST(GroundTask, SortsAndDeduplicatesAtomLists) {
    const GroundTask t = small_task({action(0, {2, 0, 2}, {1, 1}, {})}, {0, 2}, {1, 1});
    EXPECT_EQ(t.action(0).pre, (std::vector<AtomId>{0, 2}));
    EXPECT_EQ(t.action(0).add, (std::vector<AtomId>{1}));
    EXPECT_EQ(t.goal(), (std::vector<AtomId>{1}));
}

TEST(State, WideStatesAcrossWords) {
    State s(130);
    s.set(0);
    s.set(64);
    s.set(129);
    EXPECT_TRUE(s.test(129));
    EXPECT_EQ(s.true_atoms(), (std::vector<AtomId>{0, 64, 129}));
    s.reset(64);
    EXPECT_FALSE(s.test(64));
    State t(130);
    t.set(0);
    t.set(129);
    EXPECT_EQ(s, t);
    EXPECT_EQ(StateHash{}(s), StateHash{}(t));
}

// apply never touches atoms outside add and delete.
TEST(Properties, FrameUnderFuzzing) {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = static_cast<int>(rng.range(1, 100));
        State s(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            if (rng.bernoulli(0.5))
                s.set(i);
        GroundAction a;
        for (int i = 0; i < n; ++i) {
            const auto r = rng.range(0, 9);
            if (r == 0)
                a.add.push_back(i);
            else if (r == 1)
                a.del.push_back(i);
        }
        const State next = apply(s, a);
        for (int i = 0; i < n; ++i) {
            const bool added = std::count(a.add.begin(), a.add.end(), i) > 0;
            const bool deleted = std::count(a.del.begin(), a.del.end(), i) > 0;
            if (added)
                EXPECT_TRUE(next.test(i));
            else if (deleted)
                EXPECT_FALSE(next.test(i));
            else
                EXPECT_EQ(next.test(i), s.test(i));
        }
    }
}

// validate_plan agrees with composing applicable/apply by hand.
TEST(Properties, ValidatePlanMatchesStepwiseComposition) {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        RandomTaskParams p;
        p.atoms = 6;
        p.actions = 10;
        const BaseTask base = random_task(p, rng.next());
        for (int k = 0; k < 20; ++k) {
            Plan plan;
            const auto len = rng.range(0, 5);
            for (int i = 0; i < len; ++i)
                plan.actions.push_back(static_cast<ActionId>(rng.range(0, p.actions - 1)));
            State s = base.task.initial();
            bool ok = true;
            for (ActionId a : plan.actions) {
                if (!applicable(s, base.task.action(a))) {
                    ok = false;
                    break;
                }
                s = apply(s, base.task.action(a));
            }
            ok = ok && base.task.is_goal(s);
            EXPECT_EQ(validate_plan(base.task, plan), ok);
        }
    }
}

TEST(PlanToString, UsesActionNames) {
    const GroundTask t = small_task({action(0, {0}, {1}, {0}), action(1, {1}, {2}, {})}, {0}, {2});
    const std::string text = plan_to_string(t, Plan{{0, 1}});
    EXPECT_NE(text.find("a0"), std::string::npos);
    EXPECT_NE(text.find("a1"), std::string::npos);
}
