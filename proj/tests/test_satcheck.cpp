#include <fairaudit/error.hpp>
#include <fairaudit/fairness.hpp>
#include <fairaudit/satcheck.hpp>

#include "support/fixtures.hpp"

#include <gtest/gtest.h>

using namespace fairaudit;

namespace {

auto cnf(int vars, std::vector<std::vector<int>> clauses) -> CnfFormula
{
    CnfFormula f;
    for (int i = 1; i <= vars; ++i)
        f.new_variable("v" + std::to_string(i));
    for (auto & c : clauses)
        f.add_clause(std::move(c));
    return f;
}

auto satisfies(const CnfFormula & f, const std::vector<bool> & model) -> bool
{
    for (const auto & c : f.clauses) {
        bool sat = false;
        for (int lit : c)
            sat = sat || model.at(static_cast<std::size_t>(std::abs(lit))) == (lit > 0);
        if (! sat)
            return false;
    }
    return true;
}

} // namespace

TEST(Search, TrivialFormulas)
{
    EXPECT_TRUE(search(cnf(0, {})).satisfiable);
    EXPECT_TRUE(search(cnf(2, {})).satisfiable);
    EXPECT_FALSE(search(cnf(1, {{1}, {-1}})).satisfiable);
    auto f = cnf(1, {});
    EXPECT_THROW(f.add_clause({}), ContractError);
    f.clauses.push_back({});
    EXPECT_FALSE(search(f).satisfiable);
}

TEST(Search, FindsModels)
{
    auto f = cnf(3, {{1, 2}, {-1, 3}, {-2, -3}, {-3, 1}});
    auto r = search(f);
    ASSERT_TRUE(r.satisfiable);
    EXPECT_TRUE(satisfies(f, r.model));
    // false-first branching on the lowest variable reaches x1=0, x2=1, x3=0
    EXPECT_EQ(r.model, (std::vector<bool>{false, false, true, false}));
}

TEST(Search, PigeonholeIsUnsat)
{
    // three pigeons, two holes: p(i,h) = 2*i + h + 1
    CnfFormula f = cnf(6, {});
    for (int i = 0; i < 3; ++i)
        f.add_clause({2 * i + 1, 2 * i + 2});
    for (int h = 0; h < 2; ++h)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                f.add_clause({-(2 * i + h + 1), -(2 * j + h + 1)});
    auto r = search(f);
    EXPECT_FALSE(r.satisfiable);
    EXPECT_GT(r.stats.nodes, 0U);
}

TEST(Encode, FixturesMatchExhaustiveFtu)
{
    for (const char * name : fixtures::worked_examples) {
        auto doc = fixtures::model(name);
        auto cs = enumerate_space(doc.space, doc.constraints);
        auto f = encode_ftu_counterexample(cs, *doc.classifier);
        auto r = search(f);
        EXPECT_EQ(r.satisfiable, ! check_ftu(cs, *doc.classifier).holds) << name;
    }
}

TEST(Encode, FtuHoldsMeansUnsat)
{
    for (const char * name : {"ex0bis", "exFTUnotfair"}) {
        auto doc = fixtures::model(name);
        EXPECT_FALSE(search(encode_ftu_counterexample(doc.space, doc.constraints, *doc.classifier)).satisfiable)
            << name;
    }
}

TEST(Encode, DecodesAWitness)
{
    auto doc = fixtures::model("ex0");
    auto f = encode_ftu_counterexample(doc.space, ConstraintSet{}, *doc.classifier);
    auto r = search(f);
    ASSERT_TRUE(r.satisfiable);
    auto [x, y] = decode_model(f, r.model, doc.space, ConstraintSet{}, *doc.classifier);
    EXPECT_EQ(x[2], y[2]);
    EXPECT_NE(doc.classifier->evaluate(x), doc.classifier->evaluate(y));
}

TEST(Encode, DecodeRejectsNonWitnesses)
{
    auto doc = fixtures::model("ex0");
    auto f = encode_ftu_counterexample(doc.space, ConstraintSet{}, *doc.classifier);
    std::vector<bool> zeros(static_cast<std::size_t>(f.variable_count) + 1, false);
    EXPECT_THROW(decode_model(f, zeros, doc.space, ConstraintSet{}, *doc.classifier), ContractError);
}

TEST(Encode, ProtectedSwitchOverANonTautology)
{
    // k(x0, x1, x2) = x0 ? 1 : ((x1 & !x2) | x2), x0 protected
    FeatureSpace space{{Feature::boolean("x0", true), Feature::boolean("x1"), Feature::boolean("x2")}};
    auto k = Classifier::expression(
        space, parse_expr("(or x0 (or (and x1 (not x2)) x2))", space));
    auto r = check_ftu_search(space, ConstraintSet{}, k);
    EXPECT_FALSE(r.holds);
    auto t = Classifier::expression(space, parse_expr("(or x0 (or x1 (not x1)))", space));
    EXPECT_TRUE(check_ftu_search(space, ConstraintSet{}, t).holds);
}

TEST(Encode, NonBooleanDomainsAreOneHot)
{
    auto doc = fixtures::model("ex5");
    auto f = encode_ftu_counterexample(doc.space, doc.constraints, *doc.classifier);
    std::vector<std::string> names;
    for (const auto & [v, name] : f.comment_map)
        names.push_back(name);
    for (const char * want : {"x.m", "y.m", "x.n=0", "x.n=1", "x.n=2", "y.n=0", "y.n=2"})
        EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;

    auto var = [&](const std::string & name) {
        for (const auto & [v, n] : f.comment_map)
            if (n == name)
                return v;
        return 0;
    };
    std::vector<int> at_least{var("x.n=0"), var("x.n=1"), var("x.n=2")};
    EXPECT_NE(std::find(f.clauses.begin(), f.clauses.end(), at_least), f.clauses.end());
    std::vector<int> at_most{-var("x.n=0"), -var("x.n=1")};
    EXPECT_NE(std::find(f.clauses.begin(), f.clauses.end(), at_most), f.clauses.end());
}

TEST(Encode, TableAndTreeClassifiers)
{
    auto doc = fixtures::model("exFTUnotfair");
    auto cs = enumerate_space(doc.space, doc.constraints);
    auto table = compile_to_table(*doc.classifier);
    auto tree = compile_to_tree(doc.space, doc.classifier->expr());
    EXPECT_FALSE(search(encode_ftu_counterexample(cs, table)).satisfiable);
    EXPECT_FALSE(search(encode_ftu_counterexample(cs, tree)).satisfiable);

    auto ex0 = fixtures::model("ex0");
    auto full = enumerate_space(ex0.space, ConstraintSet{});
    auto t0 = compile_to_table(*ex0.classifier);
    auto f = encode_ftu_counterexample(full, t0);
    auto r = search(f);
    ASSERT_TRUE(r.satisfiable);
    auto [x, y] = decode_model(f, r.model, full, t0);
    EXPECT_NE(t0.evaluate(x), t0.evaluate(y));

    EncodeOptions small;
    small.max_table_rows = 4;
    EXPECT_THROW(encode_ftu_counterexample(full, t0, small), UnsupportedError);
}

TEST(Dimacs, ExportFormat)
{
    CnfFormula f;
    f.new_variable("x.a");
    f.add_clause({1});
    EXPECT_EQ(export_dimacs(f), "c 1 x.a\np cnf 1 1\n1 0\n");
}

TEST(Dimacs, RoundTrip)
{
    for (const char * name : fixtures::worked_examples) {
        auto doc = fixtures::model(name);
        auto f = encode_ftu_counterexample(doc.space, doc.constraints, *doc.classifier);
        auto g = parse_dimacs(export_dimacs(f));
        EXPECT_EQ(g, f) << name;
        EXPECT_EQ(export_dimacs(g), export_dimacs(f)) << name;
    }
}

TEST(Dimacs, ParseErrors)
{
    EXPECT_TRUE(parse_dimacs("p cnf 2 1\n1 -2 0\n").clauses.size() == 1);
    EXPECT_THROW(parse_dimacs("1 0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 1 1\n1\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 1 1\n1 x 0\n"), ParseError);
}
