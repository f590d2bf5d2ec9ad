#include <fairaudit/classifier.hpp>
#include <fairaudit/error.hpp>

#include "support/fixtures.hpp"

#include <gtest/gtest.h>

using namespace fairaudit;

namespace {

auto bools(std::initializer_list<const char *> names) -> FeatureSpace
{
    std::vector<Feature> fs;
    for (const auto * n : names)
        fs.push_back(Feature::boolean(n));
    return FeatureSpace{fs};
}

auto leaf(int id, unsigned label) -> TreeNode
{
    TreeNode n;
    n.id = id;
    n.leaf = true;
    n.label = ClassLabel{label};
    return n;
}

auto test(int id, std::size_t feature, Value v, std::size_t t, std::size_t f) -> TreeNode
{
    TreeNode n;
    n.id = id;
    n.feature = feature;
    n.value = v;
    n.if_true = t;
    n.if_false = f;
    return n;
}

} // namespace

TEST(Classifier, Ex0Expression)
{
    auto doc = fixtures::model("ex0");
    const auto & k = *doc.classifier;
    EXPECT_EQ(k.evaluate(Instance{1, 0, 1}).value, 1U);
    EXPECT_EQ(k.evaluate(Instance{0, 0, 1}).value, 0U);
    EXPECT_THROW((void)k.evaluate(Instance{0, 0}), ContractError);
}

TEST(Classifier, ConstantExpression)
{
    auto space = bools({"a", "b"});
    auto k = Classifier::expression(space, parse_expr("true", space));
    for (std::uint64_t r = 0; r < 4; ++r)
        EXPECT_EQ(k.evaluate(space.unrank(r)).value, 1U);
}

TEST(Classifier, FTUnotfairDecision)
{
    auto doc = fixtures::model("exFTUnotfair");
    EXPECT_EQ(doc.classifier->evaluate(Instance{1, 1, 1, 1}).value, 0U);
    EXPECT_EQ(doc.classifier->evaluate(Instance{0, 1, 1, 0}).value, 1U);
}

TEST(Classifier, TableMustBeTotalAndUnique)
{
    auto space = bools({"a"});
    EXPECT_THROW(Classifier::table(space, {{Instance{0}, ClassLabel{0}}}), SemanticError);
    EXPECT_THROW(Classifier::table(space, {{Instance{0}, ClassLabel{0}}, {Instance{0}, ClassLabel{1}}, {Instance{1}, ClassLabel{1}}}),
        SemanticError);
    EXPECT_THROW(Classifier::table(space, {{Instance{0}, ClassLabel{0}}, {Instance{2}, ClassLabel{1}}}), SemanticError);
    auto k = Classifier::table(space, {{Instance{1}, ClassLabel{2}}, {Instance{0}, ClassLabel{0}}});
    EXPECT_EQ(k.class_count(), 3U);
    EXPECT_EQ(k.evaluate(Instance{1}).value, 2U);
    EXPECT_THROW(Classifier::table(space, {{Instance{1}, ClassLabel{2}}, {Instance{0}, ClassLabel{0}}}, 2), SemanticError);
}

TEST(Classifier, TreeEvaluation)
{
    auto space = bools({"a", "b"});
    // a ? 1 : (b ? 1 : 0)
    auto k = Classifier::tree(space, {test(0, 0, 1, 1, 2), leaf(1, 1), test(2, 1, 1, 3, 4), leaf(3, 1), leaf(4, 0)});
    EXPECT_EQ(k.evaluate(Instance{0, 0}).value, 0U);
    EXPECT_EQ(k.evaluate(Instance{0, 1}).value, 1U);
    EXPECT_EQ(k.evaluate(Instance{1, 0}).value, 1U);
}

TEST(Classifier, TreeStructureChecks)
{
    auto space = bools({"a", "b"});
    EXPECT_THROW(Classifier::tree(space, {}), SemanticError);
    // cycle back to the root
    EXPECT_THROW(Classifier::tree(space, {test(0, 0, 1, 0, 1), leaf(1, 0)}), SemanticError);
    // repeated test on a path
    EXPECT_THROW(Classifier::tree(space, {test(0, 0, 1, 1, 2), test(1, 0, 1, 2, 2), leaf(2, 0)}), SemanticError);
    // unreachable node
    EXPECT_THROW(Classifier::tree(space, {test(0, 0, 1, 1, 1), leaf(1, 0), leaf(2, 1)}), SemanticError);
    // missing child
    EXPECT_THROW(Classifier::tree(space, {test(0, 0, 1, 1, 5), leaf(1, 0)}), SemanticError);
    // value outside the domain
    EXPECT_THROW(Classifier::tree(space, {test(0, 0, 3, 1, 2), leaf(1, 0), leaf(2, 1)}), SemanticError);
}

TEST(Classifier, CompiledFormsAgree)
{
    for (const char * name : fixtures::worked_examples) {
        auto doc = fixtures::model(name);
        const auto & k = *doc.classifier;
        auto table = compile_to_table(k);
        auto tree = compile_to_tree(doc.space, k.expr());
        EXPECT_EQ(table.form(), Classifier::Form::Table);
        EXPECT_EQ(tree.form(), Classifier::Form::Tree);
        auto full = enumerate_space(doc.space, ConstraintSet{});
        EXPECT_TRUE(equivalent_on(k, table, full).equivalent) << name;
        EXPECT_TRUE(equivalent_on(k, tree, full).equivalent) << name;
    }
}

TEST(Classifier, TreeOnlyBranchesOnScope)
{
    auto doc = fixtures::model("ex5");
    auto space = doc.space;
    auto tree = compile_to_tree(space, parse_expr("(le n 1)", space));
    for (const auto & node : tree.nodes())
        if (! node.leaf)
            EXPECT_EQ(node.feature, 1U);
}

TEST(Equivalence, Ex0OnConstrainedAndFullSpace)
{
    auto doc = fixtures::model("ex0");
    auto g = Classifier::expression(doc.space, parse_expr("g", doc.space));
    auto cs = enumerate_space(doc.space, doc.constraints);
    EXPECT_TRUE(equivalent_on(*doc.classifier, g, cs).equivalent);
    auto full = enumerate_space(doc.space, ConstraintSet{});
    auto r = equivalent_on(*doc.classifier, g, full);
    EXPECT_FALSE(r.equivalent);
    EXPECT_EQ(r.counterexample, (Instance{0, 0, 1}));
    EXPECT_TRUE(equivalent_on(g, g, full).equivalent);
}
