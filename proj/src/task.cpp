#include "asec/task.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace asec {

State::State(std::size_t num_atoms)
    : num_atoms(num_atoms), words((num_atoms + 63) / 64, 0) {
}

void State::set(AtomId atom, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << bit_index(atom);
    if (value)
        words[word_index(atom)] |= mask;
    else
        words[word_index(atom)] &= ~mask;
}

bool State::contains_all(std::span<const AtomId> atoms) const {
    return std::all_of(atoms.begin(), atoms.end(), [this](AtomId a) { return test(a); });
}

std::vector<AtomId> State::true_atoms() const {
    std::vector<AtomId> result;
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            int bit = std::countr_zero(bits);
            result.push_back(static_cast<AtomId>(w * 64 + bit));
            bits &= bits - 1;
        }
    }
    return result;
}

std::size_t StateHash::operator()(const State &state) const noexcept {
    // FNV-1a over the packed words, finished with a 64-bit mix.
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : state.raw()) {
        h ^= w;
        h *= 1099511628211ull;
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
}

namespace {
void normalize(std::vector<AtomId> &atoms) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

void check_atoms(const std::vector<AtomId> &atoms, std::size_t num_atoms,
                 const std::string &where) {
    for (AtomId a : atoms) {
        if (a < 0 || static_cast<std::size_t>(a) >= num_atoms)
            throw StructuralError(where + ": atom id " + std::to_string(a) + " out of range");
    }
}
} // namespace

GroundTask::GroundTask(std::vector<Atom> atoms, std::vector<GroundAction> actions,
                       State initial, std::vector<AtomId> goal)
    : atoms_(std::move(atoms)), actions_(std::move(actions)),
      initial_(std::move(initial)), goal_(std::move(goal)) {
    std::unordered_set<std::string> names;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (atoms_[i].id != static_cast<AtomId>(i))
            throw StructuralError("atom ids must be contiguous from 0");
        if (!names.insert(atoms_[i].name).second)
            throw StructuralError("duplicate atom name '" + atoms_[i].name + "'");
    }
    if (initial_.size() != atoms_.size())
        throw StructuralError("initial state width does not match atom count");
    normalize(goal_);
    check_atoms(goal_, atoms_.size(), "goal");

    names.clear();
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        GroundAction &a = actions_[i];
        if (a.id != static_cast<ActionId>(i))
            throw StructuralError("action ids must be contiguous from 0");
        if (!names.insert(a.name).second)
            throw StructuralError("duplicate action name '" + a.name + "'");
        normalize(a.pre);
        normalize(a.add);
        normalize(a.del);
        check_atoms(a.pre, atoms_.size(), "action '" + a.name + "' pre");
        check_atoms(a.add, atoms_.size(), "action '" + a.name + "' add");
        check_atoms(a.del, atoms_.size(), "action '" + a.name + "' del");
        std::vector<AtomId> overlap;
        std::set_intersection(a.add.begin(), a.add.end(), a.del.begin(), a.del.end(),
                              std::back_inserter(overlap));
        if (!overlap.empty())
            throw StructuralError("action '" + a.name + "' adds and deletes atom '" +
                                  atoms_[overlap.front()].name + "'");
    }
}

const GroundAction &GroundTask::action(ActionId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= actions_.size())
        throw StructuralError("action id " + std::to_string(id) + " out of range");
    return actions_[id];
}

bool applicable(const State &state, const GroundAction &action) {
    return state.contains_all(action.pre);
}

State apply(const State &state, const GroundAction &action) {
    if (!applicable(state, action))
        throw PreconditionViolation("action '" + action.name + "' is not applicable");
    State next = state;
    for (AtomId a : action.del)
        next.reset(a);
    for (AtomId a : action.add)
        next.set(a);
    return next;
}

bool validate_plan(const GroundTask &task, const Plan &plan) {
    for (ActionId id : plan.actions)
        task.action(id);
    State state = task.initial();
    for (ActionId id : plan.actions) {
        const GroundAction &a = task.action(id);
        if (!applicable(state, a))
            return false;
        state = apply(state, a);
    }
    return task.is_goal(state);
}

std::string plan_to_string(const GroundTask &task, const Plan &plan) {
    std::string out;
    for (ActionId id : plan.actions) {
        out += task.action(id).name;
        out += '\n';
    }
    return out;
}

} // namespace asec
