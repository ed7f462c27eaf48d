#ifndef ASEC_TASK_HPP
#define ASEC_TASK_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace asec {

using AtomId = int;
using ActionId = int;

/// Raised when an action is applied in a state that does not satisfy its
/// precondition.
class PreconditionViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised for malformed task structure: out-of-range ids, add/delete
/// overlap, plans naming unknown actions.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Atom {
    AtomId id = 0;
    std::string name;
};

/// Full truth assignment over the atoms of one task, stored as a packed bit
/// vector. Value type; equality and hashing look at the bit content only.
class State {
public:
    State() = default;
    explicit State(std::size_t num_atoms);

    std::size_t size() const { return num_atoms; }
    bool test(AtomId atom) const {
        return (words[word_index(atom)] >> bit_index(atom)) & 1u;
    }
    void set(AtomId atom, bool value = true);
    void reset(AtomId atom) { set(atom, false); }

    bool contains_all(std::span<const AtomId> atoms) const;
    std::vector<AtomId> true_atoms() const;
    std::span<const std::uint64_t> raw() const { return words; }

    friend bool operator==(const State &, const State &) = default;

private:
    static std::size_t word_index(AtomId atom) { return static_cast<std::size_t>(atom) / 64; }
    static unsigned bit_index(AtomId atom) { return static_cast<unsigned>(atom) % 64; }

    std::size_t num_atoms = 0;
    std::vector<std::uint64_t> words;
};

struct StateHash {
    std::size_t operator()(const State &state) const noexcept;
};

struct GroundAction {
    ActionId id = 0;
    std::string name;
    std::vector<AtomId> pre;
    std::vector<AtomId> add;
    std::vector<AtomId> del;
};

/// Propositional planning task. Action costs are not part of the task: they
/// are supplied separately by estimator tiers (and, in evaluation settings,
/// by a hidden cost oracle).
class GroundTask {
public:
    GroundTask() = default;
    /// Sorts and deduplicates every atom list and checks all invariants.
    GroundTask(std::vector<Atom> atoms, std::vector<GroundAction> actions,
               State initial, std::vector<AtomId> goal);

    std::size_t num_atoms() const { return atoms_.size(); }
    std::size_t num_actions() const { return actions_.size(); }
    const std::vector<Atom> &atoms() const { return atoms_; }
    const std::vector<GroundAction> &actions() const { return actions_; }
    const GroundAction &action(ActionId id) const;
    const State &initial() const { return initial_; }
    const std::vector<AtomId> &goal() const { return goal_; }

    bool is_goal(const State &state) const { return state.contains_all(goal_); }

private:
    std::vector<Atom> atoms_;
    std::vector<GroundAction> actions_;
    State initial_;
    std::vector<AtomId> goal_;
};

struct Plan {
    std::vector<ActionId> actions;

    std::size_t size() const { return actions.size(); }
    bool empty() const { return actions.empty(); }
    friend bool operator==(const Plan &, const Plan &) = default;
};

bool applicable(const State &state, const GroundAction &action);

/// (state \ del) ∪ add. Throws PreconditionViolation if not applicable.
State apply(const State &state, const GroundAction &action);

/// True iff the plan is sequentially applicable from the initial state and
/// ends in a goal state. Throws StructuralError on unknown action ids.
bool validate_plan(const GroundTask &task, const Plan &plan);

/// Calls `visit(action)` for every action applicable in `state`, in id order.
template <typename Visitor>
void for_each_applicable(const GroundTask &task, const State &state, Visitor &&visit) {
    for (const GroundAction &action : task.actions()) {
        if (applicable(state, action))
            visit(action);
    }
}

std::string plan_to_string(const GroundTask &task, const Plan &plan);

} // namespace asec

#endif
