#ifndef ASEC_NATIVE_FORMAT_HPP
#define ASEC_NATIVE_FORMAT_HPP

#include "asec/cost_oracle.hpp"
#include "asec/estimation.hpp"
#include "asec/task.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace asec {

enum class ParseErrorKind {
    syntax,
    schema,
    unknown_key,
    unknown_atom,
    duplicate_name,
    cmin_exceeds_cmax,
    negative_bound,
    tier_order,
    io,
};

/// Parse failure with the JSON path of the offending field (e.g.
/// `actions[2].estimators[0].cmin`) and, for syntax errors, the line.
class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::string field, const std::string &message, int line = 0);

    ParseErrorKind kind() const { return kind_; }
    const std::string &field() const { return field_; }
    int line() const { return line_; }

private:
    ParseErrorKind kind_;
    std::string field_;
    int line_;
};

struct NativeTask {
    GroundTask task;
    EstimatorTable estimators;
    /// Present iff every action carries `true_cost`.
    std::optional<CostOracleTable> oracle;
};

struct NativeParseOptions {
    /// Accept and ignore unknown object keys.
    bool lenient = false;
};

/// Grounded JSON task format:
///
///     { "atoms": [...], "init": [...], "goal": [...],
///       "actions": [ { "name": ..., "pre": [...], "add": [...], "del": [...],
///                      "estimators": [ {"cmin": 1, "cmax": 4, "tau_ms": 0}, ... ],
///                      "true_cost": 2 } ] }
///
/// Tiers are kept in file order and must be cheapest-first.
NativeTask parse_native(std::string_view text, NativeParseOptions options = {});
NativeTask load_native(const std::filesystem::path &path, NativeParseOptions options = {});

std::string write_native(const GroundTask &task, const EstimatorTable &estimators,
                         const CostOracleTable *oracle = nullptr);

} // namespace asec

#endif
