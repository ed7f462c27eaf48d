#ifndef ASEC_PDDL_HPP
#define ASEC_PDDL_HPP

#include "asec/task.hpp"

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace asec::pddl {

/// Malformed input or a reference to something never declared.
class PddlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input uses a PDDL feature outside the supported STRIPS + typing +
/// action-costs subset. `construct()` names the offending feature.
class OutOfSubsetError : public PddlError {
public:
    explicit OutOfSubsetError(const std::string &construct)
        : PddlError("unsupported PDDL construct (out of subset): " + construct),
          construct_(construct) {}
    const std::string &construct() const { return construct_; }

private:
    std::string construct_;
};

/// Predicate or function application; arguments are variables (`?x`) or
/// object names.
struct Literal {
    std::string name;
    std::vector<std::string> args;
    friend bool operator==(const Literal &, const Literal &) = default;
    friend auto operator<=>(const Literal &, const Literal &) = default;
};

struct Parameter {
    std::string variable;
    std::string type;
};

/// `(increase (total-cost) k)` with k a literal or a static numeric fluent.
struct CostExpression {
    std::optional<long long> constant;
    std::optional<Literal> fluent;
};

struct LiftedAction {
    std::string name;
    std::vector<Parameter> parameters;
    std::vector<Literal> pre;
    std::vector<Literal> add;
    std::vector<Literal> del;
    /// Empty when the action has no cost effect.
    std::optional<CostExpression> cost;
};

struct LiftedTask {
    std::string domain_name;
    std::string problem_name;
    bool action_costs = false;
    /// type -> parent type ("object" at the root).
    std::map<std::string, std::string> type_parent;
    /// Object (and constant) names with their declared type, in declaration order.
    std::vector<std::pair<std::string, std::string>> objects;
    std::map<std::string, std::size_t> predicate_arity;
    std::map<std::string, std::size_t> function_arity;
    std::vector<LiftedAction> actions;
    std::vector<Literal> init;
    /// Ground numeric fluent values from `(= (f o1 o2) v)` in the init.
    std::map<Literal, long long> fluent_values;
    std::vector<Literal> goal;
};

LiftedTask parse_pddl_subset(std::string_view domain, std::string_view problem);

struct GroundedAction {
    std::string name;
    std::vector<std::string> pre;
    std::vector<std::string> add;
    std::vector<std::string> del;
    long long c_pddl = 0;
};

struct GroundOptions {
    /// Drop instantiations whose preconditions are not relaxed-reachable.
    bool prune_unreachable = true;
};

/// Every consistent instantiation of every template, ordered by template
/// name and then by the bound object names.
std::vector<GroundedAction> ground(const LiftedTask &lifted, GroundOptions options = {});

/// Number of type-consistent bindings before any pruning.
std::size_t count_candidate_bindings(const LiftedTask &lifted);

struct GroundedTask {
    GroundTask task;
    /// Declarative cost per action id.
    std::vector<long long> c_pddl;
};

/// Builds the propositional task. Static atoms (never added or deleted) are
/// compiled away from preconditions and goals.
GroundedTask build_task(const LiftedTask &lifted, const std::vector<GroundedAction> &actions);

/// Parse + ground + build in one step.
GroundedTask load_pddl(std::string_view domain, std::string_view problem,
                       GroundOptions options = {});

} // namespace asec::pddl

#endif
