#include "asec/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace asec::pddl {

namespace {

struct SExpr {
    bool is_list = false;
    std::string token;
    std::vector<SExpr> items;
    int line = 0;

    bool is(std::string_view t) const { return !is_list && token == t; }
    bool head_is(std::string_view t) const {
        return is_list && !items.empty() && items.front().is(t);
    }
};

class SExprParser {
public:
    explicit SExprParser(std::string_view text) : text(text) {}

    SExpr parse_document(const char *what) {
        skip_space();
        if (pos >= text.size())
            throw PddlError(std::string("empty ") + what);
        SExpr root = parse();
        skip_space();
        if (pos < text.size())
            throw PddlError(where() + "trailing content after " + what);
        return root;
    }

private:
    std::string where() const { return "line " + std::to_string(line) + ": "; }

    void skip_space() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ';') {
                while (pos < text.size() && text[pos] != '\n')
                    ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                if (c == '\n')
                    ++line;
                ++pos;
            } else {
                break;
            }
        }
    }

    SExpr parse() {
        skip_space();
        if (pos >= text.size())
            throw PddlError(where() + "unexpected end of input");
        SExpr e;
        e.line = line;
        if (text[pos] == '(') {
            ++pos;
            e.is_list = true;
            for (;;) {
                skip_space();
                if (pos >= text.size())
                    throw PddlError(where() + "unbalanced parentheses");
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                e.items.push_back(parse());
            }
        } else if (text[pos] == ')') {
            throw PddlError(where() + "unexpected ')'");
        } else {
            std::size_t start = pos;
            while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ';' &&
                   !std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
            e.token.reserve(pos - start);
            for (std::size_t i = start; i < pos; ++i)
                e.token.push_back(
                    static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
        }
        return e;
    }

    std::string_view text;
    std::size_t pos = 0;
    int line = 1;
};

const std::string &token_of(const SExpr &e, const char *context) {
    if (e.is_list)
        throw PddlError("line " + std::to_string(e.line) + ": expected a name in " + context);
    return e.token;
}

/// `a b - t c` style list. Each entry is (name, type); untyped names get "object".
std::vector<std::pair<std::string, std::string>>
typed_list(const std::vector<SExpr> &items, std::size_t begin, const char *context) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t pending_from = 0;
    for (std::size_t i = begin; i < items.size(); ++i) {
        const SExpr &item = items[i];
        if (item.is_list) {
            if (item.head_is("either"))
                throw OutOfSubsetError("either types");
            throw PddlError("line " + std::to_string(item.line) + ": unexpected list in " +
                            context);
        }
        if (item.token == "-") {
            if (i + 1 >= items.size())
                throw PddlError(std::string("dangling '-' in ") + context);
            if (items[i + 1].head_is("either"))
                throw OutOfSubsetError("either types");
            const std::string &type = token_of(items[i + 1], context);
            for (std::size_t k = pending_from; k < out.size(); ++k)
                out[k].second = type;
            pending_from = out.size();
            ++i;
        } else {
            out.emplace_back(item.token, "object");
        }
    }
    return out;
}

bool is_supported_requirement(const std::string &r) {
    return r == ":strips" || r == ":typing" || r == ":action-costs";
}

class DomainReader {
public:
    explicit DomainReader(LiftedTask &out) : out(out) {}

    void read(const SExpr &root) {
        if (!root.head_is("define") || root.items.size() < 2 || !root.items[1].head_is("domain"))
            throw PddlError("domain file must start with (define (domain <name>) ...)");
        out.domain_name = token_of(root.items[1].items.at(1), "domain name");
        out.type_parent["object"] = "";
        for (std::size_t i = 2; i < root.items.size(); ++i) {
            const SExpr &section = root.items[i];
            if (!section.is_list || section.items.empty())
                throw PddlError("malformed domain section");
            const std::string &key = token_of(section.items[0], "domain section");
            if (key == ":requirements")
                requirements(section);
            else if (key == ":types")
                types(section);
            else if (key == ":constants")
                for (auto &[name, type] : typed_list(section.items, 1, ":constants"))
                    out.objects.emplace_back(name, type);
            else if (key == ":predicates")
                predicates(section);
            else if (key == ":functions")
                functions(section);
            else if (key == ":action")
                action(section);
            else
                throw OutOfSubsetError(key);
        }
    }

private:
    void requirements(const SExpr &section) {
        for (std::size_t i = 1; i < section.items.size(); ++i) {
            const std::string &r = token_of(section.items[i], ":requirements");
            if (!is_supported_requirement(r))
                throw OutOfSubsetError(r);
            if (r == ":action-costs")
                out.action_costs = true;
        }
    }

    void types(const SExpr &section) {
        for (auto &[name, parent] : typed_list(section.items, 1, ":types")) {
            out.type_parent[name] = parent;
            if (!out.type_parent.count(parent))
                out.type_parent[parent] = "object";
        }
        out.type_parent["object"] = "";
    }

    void predicates(const SExpr &section) {
        for (std::size_t i = 1; i < section.items.size(); ++i) {
            const SExpr &p = section.items[i];
            if (!p.is_list || p.items.empty())
                throw PddlError("malformed predicate declaration");
            out.predicate_arity[token_of(p.items[0], ":predicates")] =
                typed_list(p.items, 1, "predicate").size();
        }
    }

    void functions(const SExpr &section) {
        for (std::size_t i = 1; i < section.items.size(); ++i) {
            const SExpr &f = section.items[i];
            if (!f.is_list) {
                if (f.token == "-") {
                    if (i + 1 >= section.items.size() || !section.items[i + 1].is("number"))
                        throw OutOfSubsetError("object fluents");
                    ++i;
                    continue;
                }
                throw PddlError("malformed function declaration");
            }
            out.function_arity[token_of(f.items.at(0), ":functions")] =
                typed_list(f.items, 1, "function").size();
        }
    }

    Literal literal(const SExpr &e, const std::set<std::string> &variables,
                    const char *context) const {
        if (!e.is_list || e.items.empty())
            throw PddlError(std::string("malformed literal in ") + context);
        Literal lit;
        lit.name = token_of(e.items[0], context);
        auto it = out.predicate_arity.find(lit.name);
        if (it == out.predicate_arity.end())
            throw PddlError("undeclared predicate '" + lit.name + "' in " + context);
        for (std::size_t i = 1; i < e.items.size(); ++i) {
            const std::string &arg = token_of(e.items[i], context);
            if (!arg.empty() && arg[0] == '?' && !variables.count(arg))
                throw PddlError("unbound variable " + arg + " in " + context);
            lit.args.push_back(arg);
        }
        if (lit.args.size() != it->second)
            throw PddlError("wrong arity for predicate '" + lit.name + "' in " + context);
        return lit;
    }

    void precondition(const SExpr &e, const std::set<std::string> &variables,
                      std::vector<Literal> &pre) const {
        if (!e.is_list)
            throw PddlError("malformed precondition");
        if (e.items.empty())
            return;
        const std::string &head = token_of(e.items[0], "precondition");
        if (head == "and") {
            for (std::size_t i = 1; i < e.items.size(); ++i)
                precondition(e.items[i], variables, pre);
        } else if (head == "not") {
            throw OutOfSubsetError("negative preconditions");
        } else if (head == "=") {
            throw OutOfSubsetError("equality");
        } else if (head == "or" || head == "imply") {
            throw OutOfSubsetError("disjunctive preconditions (" + head + ")");
        } else if (head == "exists" || head == "forall") {
            throw OutOfSubsetError("quantified preconditions (" + head + ")");
        } else {
            pre.push_back(literal(e, variables, "precondition"));
        }
    }

    CostExpression cost_expression(const SExpr &inc, const std::set<std::string> &variables) const {
        if (inc.items.size() != 3)
            throw PddlError("malformed increase effect");
        if (!inc.items[1].head_is("total-cost") || inc.items[1].items.size() != 1)
            throw OutOfSubsetError("numeric effects other than (increase (total-cost) ...)");
        const SExpr &amount = inc.items[2];
        CostExpression cost;
        if (!amount.is_list) {
            long long value = 0;
            const std::string &t = amount.token;
            auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
            if (ec != std::errc() || ptr != t.data() + t.size())
                throw OutOfSubsetError("non-integer cost literal '" + t + "'");
            if (value < 0)
                throw PddlError("negative action cost " + t);
            cost.constant = value;
            return cost;
        }
        if (amount.items.empty())
            throw PddlError("malformed cost expression");
        const std::string &fn = token_of(amount.items[0], "cost expression");
        if (fn == "+" || fn == "-" || fn == "*" || fn == "/")
            throw OutOfSubsetError("arithmetic cost expressions");
        auto it = out.function_arity.find(fn);
        if (it == out.function_arity.end())
            throw PddlError("cost expression references undefined fluent '" + fn + "'");
        Literal f;
        f.name = fn;
        for (std::size_t i = 1; i < amount.items.size(); ++i) {
            const std::string &arg = token_of(amount.items[i], "cost expression");
            if (!arg.empty() && arg[0] == '?' && !variables.count(arg))
                throw PddlError("unbound variable " + arg + " in cost expression");
            f.args.push_back(arg);
        }
        if (f.args.size() != it->second)
            throw PddlError("wrong arity for fluent '" + fn + "'");
        cost.fluent = std::move(f);
        return cost;
    }

    void effect(const SExpr &e, const std::set<std::string> &variables, LiftedAction &a) const {
        if (!e.is_list)
            throw PddlError("malformed effect");
        if (e.items.empty())
            return;
        const std::string &head = token_of(e.items[0], "effect");
        if (head == "and") {
            for (std::size_t i = 1; i < e.items.size(); ++i)
                effect(e.items[i], variables, a);
        } else if (head == "not") {
            if (e.items.size() != 2)
                throw PddlError("malformed negative effect");
            a.del.push_back(literal(e.items[1], variables, "effect"));
        } else if (head == "increase") {
            if (a.cost)
                throw OutOfSubsetError("multiple cost effects");
            a.cost = cost_expression(e, variables);
        } else if (head == "when") {
            throw OutOfSubsetError("conditional effects");
        } else if (head == "forall") {
            throw OutOfSubsetError("universal effects");
        } else if (head == "decrease" || head == "assign" || head == "scale-up" ||
                   head == "scale-down") {
            throw OutOfSubsetError("numeric effect " + head);
        } else {
            a.add.push_back(literal(e, variables, "effect"));
        }
    }

    void action(const SExpr &section) {
        LiftedAction a;
        a.name = token_of(section.items.at(1), ":action");
        std::set<std::string> variables;
        for (std::size_t i = 2; i < section.items.size(); i += 2) {
            const std::string &key = token_of(section.items[i], ":action");
            if (i + 1 >= section.items.size())
                throw PddlError("missing value for " + key + " in action " + a.name);
            const SExpr &value = section.items[i + 1];
            if (key == ":parameters") {
                if (!value.is_list)
                    throw PddlError("malformed :parameters in action " + a.name);
                for (auto &[var, type] : typed_list(value.items, 0, ":parameters")) {
                    if (var.empty() || var[0] != '?')
                        throw PddlError("parameter '" + var + "' must start with '?'");
                    if (!out.type_parent.count(type))
                        throw PddlError("unknown type '" + type + "'");
                    variables.insert(var);
                    a.parameters.push_back({var, type});
                }
            } else if (key == ":precondition") {
                precondition(value, variables, a.pre);
            } else if (key == ":effect") {
                effect(value, variables, a);
            } else {
                throw OutOfSubsetError("action key " + key);
            }
        }
        for (const LiftedAction &other : out.actions) {
            if (other.name == a.name)
                throw PddlError("duplicate action template '" + a.name + "'");
        }
        out.actions.push_back(std::move(a));
    }

    LiftedTask &out;
};

class ProblemReader {
public:
    explicit ProblemReader(LiftedTask &out) : out(out) {}

    void read(const SExpr &root) {
        if (!root.head_is("define") || root.items.size() < 2 || !root.items[1].head_is("problem"))
            throw PddlError("problem file must start with (define (problem <name>) ...)");
        out.problem_name = token_of(root.items[1].items.at(1), "problem name");
        for (std::size_t i = 2; i < root.items.size(); ++i) {
            const SExpr &section = root.items[i];
            if (!section.is_list || section.items.empty())
                throw PddlError("malformed problem section");
            const std::string &key = token_of(section.items[0], "problem section");
            if (key == ":domain") {
                if (token_of(section.items.at(1), ":domain") != out.domain_name)
                    throw PddlError("problem refers to domain '" + section.items[1].token +
                                    "' but domain is '" + out.domain_name + "'");
            } else if (key == ":objects") {
                for (auto &[name, type] : typed_list(section.items, 1, ":objects")) {
                    if (!out.type_parent.count(type))
                        throw PddlError("unknown type '" + type + "' for object " + name);
                    out.objects.emplace_back(name, type);
                }
            } else if (key == ":init") {
                init(section);
            } else if (key == ":goal") {
                goal(section.items.at(1));
            } else if (key == ":metric") {
                metric(section);
            } else if (key == ":requirements") {
                for (std::size_t k = 1; k < section.items.size(); ++k) {
                    if (!is_supported_requirement(token_of(section.items[k], ":requirements")))
                        throw OutOfSubsetError(section.items[k].token);
                }
            } else {
                throw OutOfSubsetError(key);
            }
        }
        std::set<std::string> names;
        for (auto &[name, type] : out.objects) {
            if (!names.insert(name).second)
                throw PddlError("duplicate object '" + name + "'");
        }
    }

private:
    Literal ground_literal(const SExpr &e, const char *context) const {
        if (!e.is_list || e.items.empty())
            throw PddlError(std::string("malformed atom in ") + context);
        Literal lit;
        lit.name = token_of(e.items[0], context);
        for (std::size_t i = 1; i < e.items.size(); ++i)
            lit.args.push_back(token_of(e.items[i], context));
        return lit;
    }

    void check_predicate(const Literal &lit, const char *context) const {
        auto it = out.predicate_arity.find(lit.name);
        if (it == out.predicate_arity.end())
            throw PddlError("undeclared predicate '" + lit.name + "' in " + context);
        if (it->second != lit.args.size())
            throw PddlError("wrong arity for predicate '" + lit.name + "' in " + context);
    }

    void init(const SExpr &section) {
        for (std::size_t i = 1; i < section.items.size(); ++i) {
            const SExpr &e = section.items[i];
            if (e.head_is("=")) {
                if (e.items.size() != 3)
                    throw PddlError("malformed fluent assignment in :init");
                Literal f = ground_literal(e.items[1], ":init");
                const std::string &v = token_of(e.items[2], ":init");
                long long value = 0;
                auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
                if (ec != std::errc() || ptr != v.data() + v.size())
                    throw OutOfSubsetError("non-integer fluent value '" + v + "'");
                if (f.name == "total-cost")
                    continue;
                if (!out.function_arity.count(f.name))
                    throw PddlError("value for undeclared function '" + f.name + "'");
                out.fluent_values[f] = value;
            } else if (e.head_is("not")) {
                throw OutOfSubsetError("negative initial literals");
            } else {
                Literal lit = ground_literal(e, ":init");
                check_predicate(lit, ":init");
                out.init.push_back(std::move(lit));
            }
        }
    }

    void goal(const SExpr &e) {
        if (!e.is_list)
            throw PddlError("malformed goal");
        if (e.items.empty())
            return;
        const std::string &head = token_of(e.items[0], ":goal");
        if (head == "and") {
            for (std::size_t i = 1; i < e.items.size(); ++i)
                goal(e.items[i]);
        } else if (head == "not") {
            throw OutOfSubsetError("negative goals");
        } else if (head == "or" || head == "imply" || head == "exists" || head == "forall") {
            throw OutOfSubsetError("goal connective " + head);
        } else {
            Literal lit = ground_literal(e, ":goal");
            check_predicate(lit, ":goal");
            out.goal.push_back(std::move(lit));
        }
    }

    void metric(const SExpr &section) {
        if (section.items.size() != 3 || !section.items[1].is("minimize") ||
            !section.items[2].head_is("total-cost"))
            throw OutOfSubsetError("metric other than (minimize (total-cost))");
    }

    LiftedTask &out;
};

std::string atom_name(const std::string &pred, const std::vector<std::string> &args) {
    std::string s = pred;
    for (const std::string &a : args) {
        s += ' ';
        s += a;
    }
    return s;
}

bool is_subtype(const LiftedTask &lifted, std::string type, const std::string &ancestor) {
    for (int guard = 0; guard < 1000 && !type.empty(); ++guard) {
        if (type == ancestor)
            return true;
        auto it = lifted.type_parent.find(type);
        if (it == lifted.type_parent.end())
            return false;
        type = it->second;
    }
    return false;
}

std::vector<std::string> objects_of(const LiftedTask &lifted, const std::string &type) {
    std::vector<std::string> result;
    for (const auto &[name, t] : lifted.objects) {
        if (is_subtype(lifted, t, type))
            result.push_back(name);
    }
    std::sort(result.begin(), result.end());
    return result;
}

struct Candidate {
    GroundedAction action;
    const LiftedAction *schema = nullptr;
    std::vector<std::string> binding;
};

std::vector<std::string> substitute(const std::vector<std::string> &args,
                                    const LiftedAction &schema,
                                    const std::vector<std::string> &binding) {
    std::vector<std::string> out;
    out.reserve(args.size());
    for (const std::string &arg : args) {
        if (!arg.empty() && arg[0] == '?') {
            for (std::size_t i = 0; i < schema.parameters.size(); ++i) {
                if (schema.parameters[i].variable == arg) {
                    out.push_back(binding[i]);
                    break;
                }
            }
        } else {
            out.push_back(arg);
        }
    }
    return out;
}

void sort_unique(std::vector<std::string> &v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <typename Visit>
void enumerate_bindings(const LiftedTask &lifted, const LiftedAction &schema, Visit &&visit) {
    std::vector<std::vector<std::string>> domains;
    for (const Parameter &p : schema.parameters)
        domains.push_back(objects_of(lifted, p.type));
    std::vector<std::string> binding(schema.parameters.size());
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == domains.size()) {
            visit(binding);
            return;
        }
        for (const std::string &obj : domains[depth]) {
            binding[depth] = obj;
            rec(depth + 1);
        }
    };
    rec(0);
}

std::vector<const LiftedAction *> sorted_schemas(const LiftedTask &lifted) {
    std::vector<const LiftedAction *> schemas;
    for (const LiftedAction &a : lifted.actions)
        schemas.push_back(&a);
    std::sort(schemas.begin(), schemas.end(),
              [](const LiftedAction *a, const LiftedAction *b) { return a->name < b->name; });
    return schemas;
}

} // namespace

LiftedTask parse_pddl_subset(std::string_view domain, std::string_view problem) {
    LiftedTask lifted;
    DomainReader(lifted).read(SExprParser(domain).parse_document("domain"));
    ProblemReader(lifted).read(SExprParser(problem).parse_document("problem"));
    return lifted;
}

std::size_t count_candidate_bindings(const LiftedTask &lifted) {
    std::size_t total = 0;
    for (const LiftedAction &a : lifted.actions) {
        std::size_t n = 1;
        for (const Parameter &p : a.parameters)
            n *= objects_of(lifted, p.type).size();
        total += n;
    }
    return total;
}

std::vector<GroundedAction> ground(const LiftedTask &lifted, GroundOptions options) {
    std::vector<Candidate> candidates;
    for (const LiftedAction *schema : sorted_schemas(lifted)) {
        enumerate_bindings(lifted, *schema, [&](const std::vector<std::string> &binding) {
            Candidate c;
            c.schema = schema;
            c.binding = binding;
            c.action.name = atom_name(schema->name, binding);
            for (const Literal &l : schema->pre)
                c.action.pre.push_back(atom_name(l.name, substitute(l.args, *schema, binding)));
            for (const Literal &l : schema->add)
                c.action.add.push_back(atom_name(l.name, substitute(l.args, *schema, binding)));
            for (const Literal &l : schema->del)
                c.action.del.push_back(atom_name(l.name, substitute(l.args, *schema, binding)));
            sort_unique(c.action.pre);
            sort_unique(c.action.add);
            sort_unique(c.action.del);
            // Delete-then-add semantics: an atom both added and deleted stays true.
            std::vector<std::string> del;
            std::set_difference(c.action.del.begin(), c.action.del.end(), c.action.add.begin(),
                                c.action.add.end(), std::back_inserter(del));
            c.action.del = std::move(del);
            candidates.push_back(std::move(c));
        });
    }

    // A static precondition missing from the init can never hold, so such
    // candidates are dropped even without reachability pruning.
    std::unordered_set<std::string> changing;
    for (const LiftedAction &a : lifted.actions) {
        for (const Literal &l : a.add)
            changing.insert(l.name);
        for (const Literal &l : a.del)
            changing.insert(l.name);
    }
    std::unordered_set<std::string> initial;
    for (const Literal &l : lifted.init)
        initial.insert(atom_name(l.name, l.args));
    std::vector<bool> keep(candidates.size(), true);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const LiftedAction &schema = *candidates[i].schema;
        for (std::size_t k = 0; k < schema.pre.size() && keep[i]; ++k) {
            const Literal &l = schema.pre[k];
            if (!changing.contains(l.name) &&
                !initial.contains(
                    atom_name(l.name, substitute(l.args, schema, candidates[i].binding))))
                keep[i] = false;
        }
    }
    if (options.prune_unreachable) {
        std::unordered_set<std::string> reached;
        for (const Literal &l : lifted.init)
            reached.insert(atom_name(l.name, l.args));
        std::vector<bool> possible = std::move(keep);
        keep.assign(candidates.size(), false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (keep[i] || !possible[i])
                    continue;
                const GroundedAction &a = candidates[i].action;
                if (std::all_of(a.pre.begin(), a.pre.end(),
                                [&](const std::string &p) { return reached.count(p) > 0; })) {
                    keep[i] = true;
                    changed = true;
                    for (const std::string &p : a.add)
                        reached.insert(p);
                }
            }
        }
    }

    std::vector<GroundedAction> result;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!keep[i])
            continue;
        Candidate &c = candidates[i];
        const LiftedAction &schema = *c.schema;
        if (!schema.cost) {
            c.action.c_pddl = lifted.action_costs ? 0 : 1;
        } else if (schema.cost->constant) {
            c.action.c_pddl = *schema.cost->constant;
        } else {
            Literal f{schema.cost->fluent->name,
                      substitute(schema.cost->fluent->args, schema, c.binding)};
            auto it = lifted.fluent_values.find(f);
            if (it == lifted.fluent_values.end())
                throw PddlError("action '" + c.action.name + "': no value for fluent (" +
                                atom_name(f.name, f.args) + ")");
            if (it->second < 0)
                throw PddlError("action '" + c.action.name + "': negative cost");
            c.action.c_pddl = it->second;
        }
        result.push_back(std::move(c.action));
    }
    return result;
}

GroundedTask build_task(const LiftedTask &lifted, const std::vector<GroundedAction> &actions) {
    std::set<std::string> fluent;
    for (const GroundedAction &a : actions) {
        fluent.insert(a.add.begin(), a.add.end());
        fluent.insert(a.del.begin(), a.del.end());
    }
    std::set<std::string> init;
    for (const Literal &l : lifted.init)
        init.insert(atom_name(l.name, l.args));

    // Static atoms that hold initially are always true and drop out; static
    // atoms that do not hold stay as never-true atoms.
    auto relevant = [&](const std::string &atom) {
        return fluent.count(atom) > 0 || init.count(atom) == 0;
    };
    std::set<std::string> names = fluent;
    for (const GroundedAction &a : actions)
        for (const std::string &p : a.pre)
            if (relevant(p))
                names.insert(p);
    std::vector<std::string> goal_names;
    for (const Literal &l : lifted.goal) {
        std::string g = atom_name(l.name, l.args);
        if (relevant(g)) {
            names.insert(g);
            goal_names.push_back(g);
        }
    }

    std::vector<Atom> atoms;
    std::unordered_map<std::string, AtomId> ids;
    for (const std::string &n : names) {
        ids.emplace(n, static_cast<AtomId>(atoms.size()));
        atoms.push_back({static_cast<AtomId>(atoms.size()), n});
    }
    State initial(atoms.size());
    for (const std::string &n : init) {
        auto it = ids.find(n);
        if (it != ids.end())
            initial.set(it->second);
    }
    std::vector<AtomId> goal;
    for (const std::string &g : goal_names)
        goal.push_back(ids.at(g));

    GroundedTask result;
    std::vector<GroundAction> ground_actions;
    for (const GroundedAction &a : actions) {
        GroundAction ga;
        ga.id = static_cast<ActionId>(ground_actions.size());
        ga.name = a.name;
        for (const std::string &p : a.pre)
            if (relevant(p))
                ga.pre.push_back(ids.at(p));
        for (const std::string &p : a.add)
            ga.add.push_back(ids.at(p));
        for (const std::string &p : a.del)
            ga.del.push_back(ids.at(p));
        ground_actions.push_back(std::move(ga));
        result.c_pddl.push_back(a.c_pddl);
    }
    result.task = GroundTask(std::move(atoms), std::move(ground_actions), std::move(initial),
                             std::move(goal));
    return result;
}

GroundedTask load_pddl(std::string_view domain, std::string_view problem, GroundOptions options) {
    LiftedTask lifted = parse_pddl_subset(domain, problem);
    return build_task(lifted, ground(lifted, options));
}

} // namespace asec::pddl
