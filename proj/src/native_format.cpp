#include "asec/native_format.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace asec {

using nlohmann::json;

ParseError::ParseError(ParseErrorKind kind, std::string field, const std::string &message,
                       int line)
    : std::runtime_error(
          (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
          (field.empty() ? std::string() : field + ": ") + message),
      kind_(kind), field_(std::move(field)), line_(line) {
}

namespace {

int line_of_offset(std::string_view text, std::size_t offset) {
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n')
            ++line;
    }
    return line;
}

class Reader {
public:
    explicit Reader(NativeParseOptions options) : options(options) {}

    NativeTask read(const json &doc) {
        require_object(doc, "");
        check_keys(doc, "", {"atoms", "init", "goal", "actions"});

        const json &atoms_doc = member(doc, "", "atoms");
        require_array(atoms_doc, "atoms");
        std::vector<Atom> atoms;
        for (std::size_t i = 0; i < atoms_doc.size(); ++i) {
            const std::string path = "atoms[" + std::to_string(i) + "]";
            std::string name = string_value(atoms_doc[i], path);
            if (atom_ids.count(name))
                throw ParseError(ParseErrorKind::duplicate_name, path,
                                 "duplicate atom name '" + name + "'");
            atom_ids.emplace(name, static_cast<AtomId>(i));
            atoms.push_back({static_cast<AtomId>(i), std::move(name)});
        }

        State initial(atoms.size());
        for (AtomId a : atom_list(member(doc, "", "init"), "init"))
            initial.set(a);
        std::vector<AtomId> goal = atom_list(member(doc, "", "goal"), "goal");

        const json &actions_doc = member(doc, "", "actions");
        require_array(actions_doc, "actions");
        std::vector<GroundAction> actions;
        EstimatorTable estimators;
        std::vector<double> true_costs;
        std::size_t with_true_cost = 0;
        std::set<std::string> action_names;
        for (std::size_t i = 0; i < actions_doc.size(); ++i) {
            const std::string path = "actions[" + std::to_string(i) + "]";
            const json &a = actions_doc[i];
            require_object(a, path);
            check_keys(a, path, {"name", "pre", "add", "del", "estimators", "true_cost"});
            GroundAction action;
            action.id = static_cast<ActionId>(i);
            action.name = string_value(member(a, path, "name"), path + ".name");
            if (!action_names.insert(action.name).second)
                throw ParseError(ParseErrorKind::duplicate_name, path + ".name",
                                 "duplicate action name '" + action.name + "'");
            action.pre = atom_list(member(a, path, "pre"), path + ".pre");
            action.add = atom_list(member(a, path, "add"), path + ".add");
            action.del = atom_list(member(a, path, "del"), path + ".del");
            estimators.push_back(tiers(member(a, path, "estimators"), path + ".estimators"));
            if (a.contains("true_cost")) {
                double c = number(a["true_cost"], path + ".true_cost");
                if (c < 0.0)
                    throw ParseError(ParseErrorKind::negative_bound, path + ".true_cost",
                                     "negative true cost");
                true_costs.push_back(c);
                ++with_true_cost;
            } else {
                true_costs.push_back(0.0);
            }
            actions.push_back(std::move(action));
        }
        if (with_true_cost != 0 && with_true_cost != actions.size())
            throw ParseError(ParseErrorKind::schema, "actions",
                             "true_cost must be given for every action or for none");

        NativeTask result;
        try {
            result.task = GroundTask(std::move(atoms), std::move(actions), std::move(initial),
                                     std::move(goal));
        } catch (const StructuralError &err) {
            throw ParseError(ParseErrorKind::schema, "", err.what());
        }
        result.estimators = std::move(estimators);
        if (with_true_cost > 0) {
            result.oracle = CostOracleTable(std::move(true_costs));
            try {
                check_oracle_containment(result.task, result.estimators, *result.oracle);
            } catch (const InconsistentEstimatorsError &err) {
                throw ParseError(ParseErrorKind::schema, "true_cost", err.what());
            }
        }
        return result;
    }

private:
    static void require_object(const json &j, const std::string &path) {
        if (!j.is_object())
            throw ParseError(ParseErrorKind::schema, path, "expected an object");
    }
    static void require_array(const json &j, const std::string &path) {
        if (!j.is_array())
            throw ParseError(ParseErrorKind::schema, path, "expected an array");
    }
    static const json &member(const json &j, const std::string &path, const char *key) {
        auto it = j.find(key);
        if (it == j.end())
            throw ParseError(ParseErrorKind::schema, path.empty() ? key : path + "." + key,
                             "missing required key");
        return *it;
    }
    static std::string string_value(const json &j, const std::string &path) {
        if (!j.is_string())
            throw ParseError(ParseErrorKind::schema, path, "expected a string");
        return j.get<std::string>();
    }
    static double number(const json &j, const std::string &path) {
        if (!j.is_number())
            throw ParseError(ParseErrorKind::schema, path, "expected a number");
        return j.get<double>();
    }

    void check_keys(const json &j, const std::string &path,
                    std::initializer_list<const char *> allowed) const {
        if (options.lenient)
            return;
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool known = false;
            for (const char *k : allowed)
                known = known || it.key() == k;
            if (!known)
                throw ParseError(ParseErrorKind::unknown_key,
                                 path.empty() ? it.key() : path + "." + it.key(),
                                 "unknown key");
        }
    }

    std::vector<AtomId> atom_list(const json &j, const std::string &path) const {
        require_array(j, path);
        std::vector<AtomId> ids;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string item = path + "[" + std::to_string(i) + "]";
            const std::string name = string_value(j[i], item);
            auto it = atom_ids.find(name);
            if (it == atom_ids.end())
                throw ParseError(ParseErrorKind::unknown_atom, item,
                                 "unknown atom '" + name + "'");
            ids.push_back(it->second);
        }
        return ids;
    }

    EstimatorSet tiers(const json &j, const std::string &path) const {
        require_array(j, path);
        if (j.empty())
            throw ParseError(ParseErrorKind::schema, path, "at least one estimator required");
        std::vector<EstimatorSpec> specs;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const std::string item = path + "[" + std::to_string(i) + "]";
            require_object(j[i], item);
            check_keys(j[i], item, {"cmin", "cmax", "tau_ms"});
            EstimatorSpec spec;
            spec.c_min = number(member(j[i], item, "cmin"), item + ".cmin");
            spec.c_max = number(member(j[i], item, "cmax"), item + ".cmax");
            spec.tau_ms = number(member(j[i], item, "tau_ms"), item + ".tau_ms");
            if (spec.c_min < 0.0)
                throw ParseError(ParseErrorKind::negative_bound, item + ".cmin", "negative bound");
            if (spec.c_max < 0.0)
                throw ParseError(ParseErrorKind::negative_bound, item + ".cmax", "negative bound");
            if (spec.tau_ms < 0.0)
                throw ParseError(ParseErrorKind::negative_bound, item + ".tau_ms",
                                 "negative latency");
            if (spec.c_min > spec.c_max)
                throw ParseError(ParseErrorKind::cmin_exceeds_cmax, item, "cmin exceeds cmax");
            if (!specs.empty() && spec.tau_ms < specs.back().tau_ms)
                throw ParseError(ParseErrorKind::tier_order, item + ".tau_ms",
                                 "tiers must be ordered cheapest-first");
            specs.push_back(spec);
        }
        return EstimatorSet(std::move(specs));
    }

    NativeParseOptions options;
    std::unordered_map<std::string, AtomId> atom_ids;
};

json number_json(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15)
        return static_cast<long long>(v);
    return v;
}

json names(const GroundTask &task, const std::vector<AtomId> &ids) {
    json arr = json::array();
    for (AtomId a : ids)
        arr.push_back(task.atoms()[a].name);
    return arr;
}

} // namespace

NativeTask parse_native(std::string_view text, NativeParseOptions options) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &err) {
        throw ParseError(ParseErrorKind::syntax, "", err.what(),
                         line_of_offset(text, err.byte > 0 ? err.byte - 1 : 0));
    }
    return Reader(options).read(doc);
}

NativeTask load_native(const std::filesystem::path &path, NativeParseOptions options) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(ParseErrorKind::io, path.string(), "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_native(buffer.str(), options);
}

std::string write_native(const GroundTask &task, const EstimatorTable &estimators,
                         const CostOracleTable *oracle) {
    json doc;
    json atoms = json::array();
    for (const Atom &a : task.atoms())
        atoms.push_back(a.name);
    doc["atoms"] = std::move(atoms);
    doc["init"] = names(task, task.initial().true_atoms());
    doc["goal"] = names(task, task.goal());
    json actions = json::array();
    for (const GroundAction &a : task.actions()) {
        json entry;
        entry["name"] = a.name;
        entry["pre"] = names(task, a.pre);
        entry["add"] = names(task, a.add);
        entry["del"] = names(task, a.del);
        json tiers = json::array();
        for (const EstimatorSpec &t : estimators.at(a.id).tiers()) {
            tiers.push_back({{"cmin", number_json(t.c_min)},
                             {"cmax", number_json(t.c_max)},
                             {"tau_ms", number_json(t.tau_ms)}});
        }
        entry["estimators"] = std::move(tiers);
        if (oracle)
            entry["true_cost"] = number_json(oracle->cost(a.id));
        actions.push_back(std::move(entry));
    }
    doc["actions"] = std::move(actions);
    return doc.dump(2) + "\n";
}

} // namespace asec
