#include <fairaudit/classifier.hpp>

#include <fairaudit/error.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace fairaudit {

namespace {

auto resolve_class_count(std::optional<unsigned> requested, unsigned max_label) -> unsigned
{
    auto needed = std::max(2U, max_label + 1);
    if (requested) {
        if (*requested < 2)
            throw SemanticError("a classifier needs at least two classes");
        if (*requested < needed)
            throw SemanticError("label " + std::to_string(max_label) + " is not below the class count " +
                std::to_string(*requested));
        return *requested;
    }
    return needed;
}

// Every node reachable from the root, no cycles, no literal tested twice on a path.
auto check_tree(const FeatureSpace & space, const std::vector<TreeNode> & nodes) -> void
{
    if (nodes.empty())
        throw SemanticError("decision tree has no nodes");
    std::vector<bool> reached(nodes.size(), false);
    std::vector<bool> on_path(nodes.size(), false);
    std::set<std::pair<std::size_t, Value>> tested;

    auto visit = [&](auto && self, std::size_t i) -> void {
        if (i >= nodes.size())
            throw SemanticError("decision tree edge points to a missing node");
        if (on_path[i])
            throw SemanticError("decision tree contains a cycle through node " + std::to_string(nodes[i].id));
        reached[i] = true;
        const auto & node = nodes[i];
        if (node.leaf)
            return;
        if (node.feature >= space.size() || ! space.feature(node.feature).domain_index(node.value))
            throw SemanticError("decision tree node " + std::to_string(node.id) + " tests a value outside the domain");
        auto lit = std::pair{node.feature, node.value};
        if (tested.contains(lit))
            throw SemanticError("decision tree node " + std::to_string(node.id) + " repeats a test on its path");
        on_path[i] = true;
        tested.insert(lit);
        self(self, node.if_true);
        self(self, node.if_false);
        tested.erase(lit);
        on_path[i] = false;
    };
    visit(visit, 0);

    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (! reached[i])
            throw SemanticError("decision tree node " + std::to_string(nodes[i].id) + " is unreachable");
}

} // namespace

auto Classifier::expression(const FeatureSpace & space, Expr e) -> Classifier
{
    Classifier k;
    k._form = Form::Expression;
    k._space = space;
    k._expr = std::move(e);
    return k;
}

auto Classifier::table(const FeatureSpace & space, const std::vector<std::pair<Instance, ClassLabel>> & rows,
    std::optional<unsigned> class_count, const Limits & limits) -> Classifier
{
    auto total = space.full_size();
    if (! total || *total > limits.max_instances)
        throw CapacityError("table classifier over a space above the enumeration cap");
    std::vector<ClassLabel> labels(*total);
    std::vector<bool> seen(*total, false);
    for (const auto & [x, label] : rows) {
        if (! space.contains(x))
            throw SemanticError("table row " + x.to_string() + " is not an instance of the feature space");
        auto r = space.rank(x);
        if (seen[r])
            throw SemanticError("table has more than one row for " + x.to_string());
        seen[r] = true;
        labels[r] = label;
    }
    if (auto missing = std::find(seen.begin(), seen.end(), false); missing != seen.end())
        throw SemanticError("table is not total: no row for " +
            space.unrank(static_cast<std::uint64_t>(missing - seen.begin())).to_string());
    return table_by_rank(space, std::move(labels), class_count);
}

auto Classifier::table_by_rank(const FeatureSpace & space, std::vector<ClassLabel> labels,
    std::optional<unsigned> class_count) -> Classifier
{
    auto total = space.full_size();
    if (! total || labels.size() != *total)
        throw SemanticError("table must have exactly one label per instance of the feature space");
    unsigned max_label = 0;
    for (auto l : labels)
        max_label = std::max(max_label, l.value);
    Classifier k;
    k._form = Form::Table;
    k._space = space;
    k._table = std::move(labels);
    k._class_count = resolve_class_count(class_count, max_label);
    return k;
}

auto Classifier::tree(const FeatureSpace & space, std::vector<TreeNode> nodes, std::optional<unsigned> class_count)
    -> Classifier
{
    check_tree(space, nodes);
    unsigned max_label = 0;
    for (const auto & n : nodes)
        if (n.leaf)
            max_label = std::max(max_label, n.label.value);
    Classifier k;
    k._form = Form::Tree;
    k._space = space;
    k._nodes = std::move(nodes);
    k._class_count = resolve_class_count(class_count, max_label);
    return k;
}

auto Classifier::set_class_names(std::vector<std::string> names) -> void
{
    if (names.size() > _class_count)
        _class_count = static_cast<unsigned>(names.size());
    _class_names = std::move(names);
}

auto Classifier::evaluate(const Instance & x) const -> ClassLabel
{
    _space.validate(x);
    return evaluate_unchecked(x.values());
}

auto Classifier::evaluate_unchecked(std::span<const Value> values) const -> ClassLabel
{
    switch (_form) {
    case Form::Expression: return ClassLabel{fairaudit::evaluate(_expr, values) ? 1U : 0U};
    case Form::Table: {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < _space.size(); ++i) {
            const auto & f = _space.feature(i);
            r = r * f.domain.size() + *f.domain_index(values[i]);
        }
        return _table[r];
    }
    case Form::Tree: {
        std::size_t i = 0;
        while (! _nodes[i].leaf) {
            const auto & n = _nodes[i];
            i = values[n.feature] == n.value ? n.if_true : n.if_false;
        }
        return _nodes[i].label;
    }
    }
    return {};
}

auto to_string(Classifier::Form f) -> std::string
{
    switch (f) {
    case Classifier::Form::Expression: return "expression";
    case Classifier::Form::Table: return "table";
    case Classifier::Form::Tree: return "tree";
    }
    return "?";
}

auto compile_to_table(const Classifier & k, const Limits & limits) -> Classifier
{
    const auto & space = k.space();
    auto total = space.full_size();
    if (! total || *total > limits.max_instances)
        throw CapacityError("cannot tabulate a classifier over a space above the enumeration cap");
    std::vector<ClassLabel> labels;
    labels.reserve(*total);
    for (std::uint64_t r = 0; r < *total; ++r)
        labels.push_back(k.evaluate_unchecked(space.unrank(r).values()));
    auto t = Classifier::table_by_rank(space, std::move(labels), k.class_count());
    t.set_class_names(k.class_names());
    return t;
}

auto compile_to_tree(const FeatureSpace & space, const Expr & e) -> Classifier
{
    const auto relevant = scope(e).members();
    std::vector<TreeNode> nodes;
    std::vector<Value> values(space.size());
    for (std::size_t f = 0; f < space.size(); ++f)
        values[f] = space.feature(f).domain[0];

    // Builds the subtree for relevant[depth..] and returns its node index.
    auto build = [&](auto && self, std::size_t depth) -> std::size_t {
        auto at = nodes.size();
        if (depth == relevant.size()) {
            nodes.push_back(TreeNode{static_cast<int>(at), true, 0, 0, 0, 0, ClassLabel{evaluate(e, values) ? 1U : 0U}});
            return at;
        }
        const auto f = relevant[depth];
        const auto & dom = space.feature(f).domain;
        // chain of tests f = d0, f = d1, ..., the last value needs no test
        auto chain = [&](auto && chain_self, std::size_t vi) -> std::size_t {
            if (vi + 1 == dom.size()) {
                values[f] = dom[vi];
                return self(self, depth + 1);
            }
            auto me = nodes.size();
            nodes.push_back(TreeNode{static_cast<int>(me), false, f, dom[vi], 0, 0, {}});
            values[f] = dom[vi];
            auto t = self(self, depth + 1);
            auto rest = chain_self(chain_self, vi + 1);
            nodes[me].if_true = t;
            nodes[me].if_false = rest;
            return me;
        };
        return chain(chain, 0);
    };
    build(build, 0);
    return Classifier::tree(space, std::move(nodes), 2U);
}

auto equivalent_on(const Classifier & a, const Classifier & b, const ConstrainedSpace & cs) -> Equivalence
{
    if (! (a.space().features().size() == cs.space().size() && b.space().features().size() == cs.space().size()))
        throw ContractError("classifiers and constrained space disagree on the number of features");
    for (const auto & x : cs.instances())
        if (a.evaluate_unchecked(x.values()) != b.evaluate_unchecked(x.values()))
            return Equivalence{false, x};
    return Equivalence{};
}

} // namespace fairaudit
