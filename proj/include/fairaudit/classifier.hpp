#ifndef FAIRAUDIT_CLASSIFIER_HPP
#define FAIRAUDIT_CLASSIFIER_HPP

#include <fairaudit/expr.hpp>
#include <fairaudit/model.hpp>
#include <fairaudit/space.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fairaudit {

struct ClassLabel
{
    unsigned value = 0;

    friend auto operator<=>(ClassLabel, ClassLabel) = default;
};

/// Binary decision tree node. Internal nodes test `feature = value` and
/// continue at if_true / if_false (indices into the node list); leaves carry
/// a label. Node 0 is the root.
struct TreeNode
{
    int id = 0;
    bool leaf = false;
    std::size_t feature = 0;
    Value value = 0;
    std::size_t if_true = 0;
    std::size_t if_false = 0;
    ClassLabel label{};

    friend auto operator==(const TreeNode &, const TreeNode &) -> bool = default;
};

/**
 * A total map from F to class labels, in one of three forms: a boolean
 * expression (labels 1/0), an explicit table over all of F, or a decision
 * tree. Classifiers keep a copy of the space they were built for.
 */
class Classifier
{
public:
    enum class Form
    {
        Expression,
        Table,
        Tree
    };

    static auto expression(const FeatureSpace & space, Expr e) -> Classifier;

    /// `rows` must cover every instance of F exactly once.
    static auto table(const FeatureSpace & space, const std::vector<std::pair<Instance, ClassLabel>> & rows,
        std::optional<unsigned> class_count = std::nullopt, const Limits & limits = {}) -> Classifier;

    /// Dense table indexed by FeatureSpace::rank.
    static auto table_by_rank(const FeatureSpace & space, std::vector<ClassLabel> labels,
        std::optional<unsigned> class_count = std::nullopt) -> Classifier;

    static auto tree(const FeatureSpace & space, std::vector<TreeNode> nodes,
        std::optional<unsigned> class_count = std::nullopt) -> Classifier;

    [[nodiscard]] auto form() const -> Form { return _form; }
    [[nodiscard]] auto space() const -> const FeatureSpace & { return _space; }
    [[nodiscard]] auto class_count() const -> unsigned { return _class_count; }
    [[nodiscard]] auto class_names() const -> const std::vector<std::string> & { return _class_names; }
    auto set_class_names(std::vector<std::string> names) -> void;

    [[nodiscard]] auto expr() const -> const Expr & { return _expr; }
    [[nodiscard]] auto table_labels() const -> const std::vector<ClassLabel> & { return _table; }
    [[nodiscard]] auto nodes() const -> const std::vector<TreeNode> & { return _nodes; }

    /// Throws ContractError for a malformed instance.
    [[nodiscard]] auto evaluate(const Instance & x) const -> ClassLabel;
    /// No validation; x must already be well-formed.
    [[nodiscard]] auto evaluate_unchecked(std::span<const Value> values) const -> ClassLabel;

    friend auto operator==(const Classifier &, const Classifier &) -> bool = default;

private:
    Classifier() = default;

    Form _form = Form::Expression;
    FeatureSpace _space;
    unsigned _class_count = 2;
    std::vector<std::string> _class_names;
    Expr _expr;
    std::vector<ClassLabel> _table;
    std::vector<TreeNode> _nodes;
};

auto to_string(Classifier::Form f) -> std::string;

/// Table form of k over all of F.
auto compile_to_table(const Classifier & k, const Limits & limits = {}) -> Classifier;
/// Decision tree branching only on the features the expression mentions.
auto compile_to_tree(const FeatureSpace & space, const Expr & e) -> Classifier;

struct Equivalence
{
    bool equivalent = true;
    /// Least disagreeing instance in canonical order.
    std::optional<Instance> counterexample;
};

auto equivalent_on(const Classifier & a, const Classifier & b, const ConstrainedSpace & cs) -> Equivalence;

} // namespace fairaudit

#endif
