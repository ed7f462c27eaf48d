#include "asec/random_tasks.hpp"

#include "asec/oracle.hpp"
#include "asec/pddl.hpp"
#include "asec/synthesis.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace asec {

namespace {

std::vector<AtomId> sample_atoms(SplitMix64 &rng, int num_atoms, int count) {
    std::vector<AtomId> all(static_cast<std::size_t>(num_atoms));
    std::iota(all.begin(), all.end(), 0);
    // Partial Fisher-Yates.
    count = std::min(count, num_atoms);
    for (int i = 0; i < count; ++i) {
        const auto j = static_cast<std::size_t>(rng.range(i, num_atoms - 1));
        std::swap(all[static_cast<std::size_t>(i)], all[j]);
    }
    all.resize(static_cast<std::size_t>(count));
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace

BaseTask random_task(const RandomTaskParams &params, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Atom> atoms;
    for (int i = 0; i < params.atoms; ++i)
        atoms.push_back({i, "p" + std::to_string(i)});

    State initial(static_cast<std::size_t>(params.atoms));
    for (int i = 0; i < params.atoms; ++i)
        if (rng.bernoulli(params.init_density))
            initial.set(i);

    BaseTask base;
    std::vector<GroundAction> actions;
    for (int i = 0; i < params.actions; ++i) {
        GroundAction a;
        a.id = i;
        a.name = "a" + std::to_string(i);
        a.pre = sample_atoms(rng, params.atoms, static_cast<int>(rng.range(0, params.max_pre)));
        a.add = sample_atoms(rng, params.atoms,
                             static_cast<int>(rng.range(1, std::max(1, params.max_add))));
        std::vector<AtomId> del_candidates =
            sample_atoms(rng, params.atoms, static_cast<int>(rng.range(0, params.max_del)));
        for (AtomId d : del_candidates)
            if (!std::binary_search(a.add.begin(), a.add.end(), d))
                a.del.push_back(d);
        actions.push_back(std::move(a));
        base.c_pddl.push_back(rng.range(params.min_cost, params.max_cost));
    }
    std::vector<AtomId> goal = sample_atoms(
        rng, params.atoms, static_cast<int>(rng.range(params.min_goal, params.max_goal)));
    base.name = "random-" + std::to_string(seed);
    base.task = GroundTask(std::move(atoms), std::move(actions), std::move(initial),
                           std::move(goal));
    return base;
}

PddlText transport_pddl(const TransportParams &params, std::uint64_t seed) {
    SplitMix64 rng(seed);
    PddlText text;
    text.domain = R"((define (domain transport-desk)
  (:requirements :typing :action-costs)
  (:types location locatable - object
          vehicle package - locatable)
  (:predicates (road ?l1 ?l2 - location)
               (at ?x - locatable ?l - location)
               (in ?p - package ?v - vehicle))
  (:functions (road-length ?l1 ?l2 - location) - number
              (total-cost) - number)
  (:action drive
    :parameters (?v - vehicle ?l1 ?l2 - location)
    :precondition (and (at ?v ?l1) (road ?l1 ?l2))
    :effect (and (not (at ?v ?l1)) (at ?v ?l2)
                 (increase (total-cost) (road-length ?l1 ?l2))))
  (:action pick-up
    :parameters (?v - vehicle ?l - location ?p - package)
    :precondition (and (at ?v ?l) (at ?p ?l))
    :effect (and (not (at ?p ?l)) (in ?p ?v)
                 (increase (total-cost) 1)))
  (:action drop
    :parameters (?v - vehicle ?l - location ?p - package)
    :precondition (and (at ?v ?l) (in ?p ?v))
    :effect (and (not (in ?p ?v)) (at ?p ?l)
                 (increase (total-cost) 1)))
)
)";

    const int n = params.locations;
    std::set<std::pair<int, int>> roads;
    for (int i = 1; i < n; ++i) {
        const int j = static_cast<int>(rng.range(0, i - 1));
        roads.insert({std::min(i, j), std::max(i, j)});
    }
    for (int k = 0; k < params.extra_roads && n > 1; ++k) {
        const int i = static_cast<int>(rng.range(0, n - 1));
        const int j = static_cast<int>(rng.range(0, n - 1));
        if (i != j)
            roads.insert({std::min(i, j), std::max(i, j)});
    }

    std::ostringstream p;
    p << "(define (problem transport-desk-" << seed << ")\n  (:domain transport-desk)\n";
    p << "  (:objects";
    for (int i = 0; i < n; ++i)
        p << " l" << i;
    p << " - location";
    for (int i = 0; i < params.trucks; ++i)
        p << " t" << i;
    p << " - vehicle";
    for (int i = 0; i < params.packages; ++i)
        p << " pkg" << i;
    p << " - package)\n  (:init\n    (= (total-cost) 0)\n";
    for (auto [a, b] : roads) {
        const long long len = rng.range(1, params.max_road_length);
        p << "    (road l" << a << " l" << b << ") (road l" << b << " l" << a << ")\n";
        p << "    (= (road-length l" << a << " l" << b << ") " << len << ") (= (road-length l" << b
          << " l" << a << ") " << len << ")\n";
    }
    for (int i = 0; i < params.trucks; ++i)
        p << "    (at t" << i << " l" << rng.range(0, n - 1) << ")\n";
    std::vector<long long> goal_location;
    for (int i = 0; i < params.packages; ++i) {
        const long long from = rng.range(0, n - 1);
        long long to = rng.range(0, n - 1);
        if (to == from && n > 1)
            to = (to + 1) % n;
        goal_location.push_back(to);
        p << "    (at pkg" << i << " l" << from << ")\n";
    }
    p << "  )\n  (:goal (and";
    for (int i = 0; i < params.packages; ++i)
        p << " (at pkg" << i << " l" << goal_location[static_cast<std::size_t>(i)] << ")";
    p << "))\n  (:metric minimize (total-cost))\n)\n";
    text.problem = p.str();
    return text;
}

BaseTask transport_task(const TransportParams &params, std::uint64_t seed) {
    PddlText text = transport_pddl(params, seed);
    pddl::GroundedTask grounded = pddl::load_pddl(text.domain, text.problem);
    BaseTask base;
    base.name = "transport-" + std::to_string(seed);
    base.task = std::move(grounded.task);
    base.c_pddl = std::move(grounded.c_pddl);
    return base;
}

std::vector<BaseTask> desk_corpus(int random_count, int transport_count, std::uint64_t seed,
                                  std::size_t max_states) {
    std::vector<BaseTask> corpus;
    SplitMix64 rng(seed);
    auto solvable = [&](const BaseTask &t) {
        try {
            std::vector<double> costs(t.c_pddl.begin(), t.c_pddl.end());
            return dijkstra(t.task, costs, max_states).plan.has_value();
        } catch (const OracleCapError &) {
            return false;
        }
    };
    int made = 0;
    while (made < random_count) {
        RandomTaskParams params;
        params.atoms = static_cast<int>(rng.range(8, 14));
        params.actions = static_cast<int>(rng.range(params.atoms * 2, params.atoms * 4));
        params.min_goal = 2;
        params.max_goal = 4;
        params.max_cost = 9;
        BaseTask t = random_task(params, rng.next());
        if (solvable(t) && !t.task.is_goal(t.task.initial())) {
            corpus.push_back(std::move(t));
            ++made;
        }
    }
    made = 0;
    while (made < transport_count) {
        TransportParams params;
        params.locations = static_cast<int>(rng.range(4, 6));
        params.trucks = static_cast<int>(rng.range(1, 2));
        params.packages = static_cast<int>(rng.range(1, 3));
        BaseTask t = transport_task(params, rng.next());
        if (solvable(t)) {
            corpus.push_back(std::move(t));
            ++made;
        }
    }
    return corpus;
}

} // namespace asec
