#include "support.hpp"

#include "asec/native_format.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

using namespace asec;

namespace {

const char *minimal = R"({
  "atoms": ["p"],
  "init": [],
  "goal": ["p"],
  "actions": [
    {"name": "make-p", "pre": [], "add": ["p"], "del": [],
     "estimators": [{"cmin": 1, "cmax": 4, "tau_ms": 0}, {"cmin": 2, "cmax": 2, "tau_ms": 5}]}
  ]
})";

ParseErrorKind kind_of(const std::string &text, NativeParseOptions options = {}) {
    try {
        parse_native(text, options);
    } catch (const ParseError &e) {
        return e.kind();
    }
    ADD_FAILURE() << "document was accepted";
    return ParseErrorKind::io;
}

std::string with_tier(const std::string &tier) {
    return R"({"atoms": ["p"], "init": [], "goal": ["p"], "actions": [
      {"name": "a", "pre": [], "add": ["p"], "del": [], "estimators": [)" +
           tier + "]}]}";
}

} // namespace

TEST(ParseNative, MinimalDocument) {
    const NativeTask t = parse_native(minimal);
    ASSERT_EQ(t.task.num_actions(), 1u);
    EXPECT_EQ(t.task.num_atoms(), 1u);
    EXPECT_EQ(t.task.action(0).name, "make-p");
    ASSERT_EQ(t.estimators[0].size(), 2u);
    EXPECT_EQ(t.estimators[0].tier(0), (EstimatorSpec{1, 4, 0}));
    EXPECT_EQ(t.estimators[0].tier(1), (EstimatorSpec{2, 2, 5}));
    EXPECT_FALSE(t.oracle.has_value());
}

TEST(ParseNative, CminExceedsCmax) {
    try {
        parse_native(with_tier(R"({"cmin": 3, "cmax": 2, "tau_ms": 0})"));
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.kind(), ParseErrorKind::cmin_exceeds_cmax);
        EXPECT_NE(std::string(e.what()).find("cmin exceeds cmax"), std::string::npos);
        EXPECT_EQ(e.field(), "actions[0].estimators[0]");
    }
}

TEST(ParseNative, NegativeBound) {
    EXPECT_EQ(kind_of(with_tier(R"({"cmin": -1, "cmax": 2, "tau_ms": 0})")),
              ParseErrorKind::negative_bound);
}

TEST(ParseNative, UnknownAtom) {
    const std::string doc = R"({"atoms": ["p"], "init": ["q"], "goal": ["p"], "actions": []})";
    EXPECT_EQ(kind_of(doc), ParseErrorKind::unknown_atom);
}

TEST(ParseNative, DuplicateNames) {
    EXPECT_EQ(kind_of(R"({"atoms": ["p", "p"], "init": [], "goal": [], "actions": []})"),
              ParseErrorKind::duplicate_name);
    const std::string actions = R"({"atoms": ["p"], "init": [], "goal": ["p"], "actions": [
      {"name": "a", "pre": [], "add": ["p"], "del": [], "estimators": [{"cmin": 1, "cmax": 1, "tau_ms": 0}]},
      {"name": "a", "pre": [], "add": ["p"], "del": [], "estimators": [{"cmin": 1, "cmax": 1, "tau_ms": 0}]}]})";
    EXPECT_EQ(kind_of(actions), ParseErrorKind::duplicate_name);
}

TEST(ParseNative, SyntaxErrorCarriesLine) {
    try {
        parse_native("{\n\"atoms\": [\n,]}");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.kind(), ParseErrorKind::syntax);
        EXPECT_EQ(e.line(), 3);
    }
}

TEST(ParseNative, SchemaErrors) {
    EXPECT_EQ(kind_of("[]"), ParseErrorKind::schema);
    EXPECT_EQ(kind_of(R"({"atoms": ["p"], "init": [], "goal": ["p"]})"), ParseErrorKind::schema);
    EXPECT_EQ(kind_of(with_tier("")), ParseErrorKind::schema);
    EXPECT_EQ(kind_of(with_tier(R"({"cmin": "1", "cmax": 2, "tau_ms": 0})")),
              ParseErrorKind::schema);
}

TEST(ParseNative, TierOrderMustBeCheapestFirst) {
    EXPECT_EQ(kind_of(with_tier(R"({"cmin": 1, "cmax": 4, "tau_ms": 5}, {"cmin": 2, "cmax": 2, "tau_ms": 1})")),
              ParseErrorKind::tier_order);
}

TEST(ParseNative, UnknownKeysStrictAndLenient) {
    const std::string doc = R"({"atoms": ["p"], "init": [], "goal": ["p"], "comment": "x", "actions": [
      {"name": "a", "pre": [], "add": ["p"], "del": [], "colour": 1,
       "estimators": [{"cmin": 1, "cmax": 1, "tau_ms": 0, "unit": "s"}]}]})";
    EXPECT_EQ(kind_of(doc), ParseErrorKind::unknown_key);
    EXPECT_NO_THROW(parse_native(doc, {true}));
}

TEST(ParseNative, TrueCostGoesToOracleOnly) {
    const std::string doc = R"({"atoms": ["p"], "init": [], "goal": ["p"], "actions": [
      {"name": "a", "pre": [], "add": ["p"], "del": [],
       "estimators": [{"cmin": 1, "cmax": 4, "tau_ms": 0}], "true_cost": 3}]})";
    const NativeTask t = parse_native(doc);
    ASSERT_TRUE(t.oracle.has_value());
    EXPECT_EQ(t.oracle->cost(0), 3.0);
}

TEST(ParseNative, TrueCostOutsideTierRejected) {
    const std::string doc = R"({"atoms": ["p"], "init": [], "goal": ["p"], "actions": [
      {"name": "a", "pre": [], "add": ["p"], "del": [],
       "estimators": [{"cmin": 1, "cmax": 4, "tau_ms": 0}], "true_cost": 7}]})";
    EXPECT_THROW(parse_native(doc), std::exception);
}

TEST(ParseNative, PartialTrueCostsRejected) {
    const std::string doc = R"({"atoms": ["p"], "init": [], "goal": ["p"], "actions": [
      {"name": "a", "pre": [], "add": ["p"], "del": [], "estimators": [{"cmin": 1, "cmax": 1, "tau_ms": 0}], "true_cost": 1},
      {"name": "b", "pre": [], "add": ["p"], "del": [], "estimators": [{"cmin": 1, "cmax": 1, "tau_ms": 0}]}]})";
    EXPECT_EQ(kind_of(doc), ParseErrorKind::schema);
}

TEST(ParseNative, AddDeleteOverlapIsSchemaError) {
    const std::string doc = R"({"atoms": ["p"], "init": [], "goal": ["p"], "actions": [
      {"name": "a", "pre": [], "add": ["p"], "del": ["p"], "estimators": [{"cmin": 1, "cmax": 1, "tau_ms": 0}]}]})";
    EXPECT_EQ(kind_of(doc), ParseErrorKind::schema);
}

TEST(LoadNative, MissingFile) {
    try {
        load_native("/nonexistent/task.json");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.kind(), ParseErrorKind::io);
    }
}

TEST(LoadNative, DiamondFixture) {
    const NativeTask t = load_native(ASEC_TEST_DATA "/diamond.json");
    EXPECT_EQ(t.task.num_actions(), 4u);
    ASSERT_TRUE(t.oracle.has_value());
    EXPECT_EQ(t.oracle->cost(0), 2.0);
}

TEST(WriteNative, RoundTrip) {
    const NativeTask first = load_native(ASEC_TEST_DATA "/diamond.json");
    const std::string text = write_native(first.task, first.estimators, &*first.oracle);
    const NativeTask second = parse_native(text);
    EXPECT_EQ(second.estimators, first.estimators);
    EXPECT_EQ(second.oracle->costs(), first.oracle->costs());
    ASSERT_EQ(second.task.num_actions(), first.task.num_actions());
    for (std::size_t a = 0; a < first.task.num_actions(); ++a) {
        const auto id = static_cast<ActionId>(a);
        EXPECT_EQ(second.task.action(id).name, first.task.action(id).name);
        EXPECT_EQ(second.task.action(id).pre, first.task.action(id).pre);
        EXPECT_EQ(second.task.action(id).add, first.task.action(id).add);
        EXPECT_EQ(second.task.action(id).del, first.task.action(id).del);
    }
    EXPECT_EQ(second.task.initial(), first.task.initial());
    EXPECT_EQ(second.task.goal(), first.task.goal());
    EXPECT_EQ(write_native(second.task, second.estimators, &*second.oracle), text);
}

// Generated documents: valid tiers are accepted, any tier with cmin > cmax is
// rejected.
TEST(Properties, GeneratedDocuments) {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        RandomTaskParams p;
        p.atoms = static_cast<int>(rng.range(1, 6));
        p.actions = static_cast<int>(rng.range(1, 6));
        const BaseTask base = random_task(p, rng.next());
        EstimatorTable table;
        bool broken = false;
        for (std::size_t a = 0; a < base.task.num_actions(); ++a) {
            std::vector<EstimatorSpec> tiers;
            const auto count = rng.range(1, 3);
            for (int k = 0; k < count; ++k) {
                const double lo = static_cast<double>(rng.range(0, 10));
                const double hi = lo + static_cast<double>(rng.range(0, 10));
                tiers.push_back({lo, hi, static_cast<double>(k)});
            }
            table.emplace_back(tiers);
        }
        std::string text = write_native(base.task, table);
        if (rng.bernoulli(0.5)) {
            // Push one tier's cmin above its cmax.
            nlohmann::json doc = nlohmann::json::parse(text);
            const auto a = static_cast<std::size_t>(rng.range(0, p.actions - 1));
            auto &tier = doc["actions"][a]["estimators"][0];
            tier["cmin"] = tier["cmax"].get<double>() + 1.0;
            text = doc.dump();
            broken = true;
        }
        if (broken)
            EXPECT_THROW(parse_native(text), ParseError);
        else
            EXPECT_NO_THROW(parse_native(text));
    }
}
