#include <fairaudit/satcheck.hpp>

#include <fairaudit/error.hpp>

#include <algorithm>
#include <charconv>

namespace fairaudit {

auto CnfFormula::new_variable(std::string name) -> int
{
    ++variable_count;
    comment_map.emplace(variable_count, std::move(name));
    return variable_count;
}

auto CnfFormula::add_clause(std::vector<int> clause) -> void
{
    if (clause.empty())
        throw ContractError("refusing to add an empty clause");
    for (auto lit : clause)
        if (lit == 0 || std::abs(lit) > variable_count)
            throw InternalError("clause mentions an undeclared variable");
    clauses.push_back(std::move(clause));
}

namespace {

auto one_hot(const Feature & f) -> bool
{
    return ! (f.domain.size() == 2 && f.kind == ValueKind::Boolean);
}

class Encoder
{
public:
    Encoder(const FeatureSpace & space, CnfFormula & cnf) : _space(space), _cnf(cnf) {}

    // Variables of one copy ("x" or "y") of the feature vector.
    struct Copy
    {
        std::string prefix;
        std::vector<std::vector<int>> vars; // one var (boolean) or one per domain value
    };

    auto make_copy(const std::string & prefix) -> Copy
    {
        Copy c{prefix, {}};
        for (const auto & f : _space.features()) {
            std::vector<int> vs;
            if (! one_hot(f))
                vs.push_back(_cnf.new_variable(prefix + "." + f.name));
            else {
                for (auto v : f.domain)
                    vs.push_back(_cnf.new_variable(prefix + "." + f.name + "=" + std::to_string(v)));
                exactly_one(vs);
            }
            c.vars.push_back(std::move(vs));
        }
        return c;
    }

    auto exactly_one(const std::vector<int> & vs) -> void
    {
        _cnf.add_clause(vs);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                _cnf.add_clause({-vs[i], -vs[j]});
    }

    auto at_most_one(const std::vector<int> & vs) -> void
    {
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                _cnf.add_clause({-vs[i], -vs[j]});
    }

    auto constant(bool b) -> int
    {
        if (_true == 0) {
            _true = _cnf.new_variable("const.true");
            _cnf.add_clause({_true});
        }
        return b ? _true : -_true;
    }

    auto literal(const Copy & c, std::size_t f, Value v) -> int
    {
        const auto & feat = _space.feature(f);
        auto idx = feat.domain_index(v);
        if (! idx)
            return constant(false);
        if (! one_hot(feat))
            return v == 1 ? c.vars[f][0] : -c.vars[f][0];
        return c.vars[f][*idx];
    }

    auto gate_and(std::vector<int> lits) -> int
    {
        if (lits.empty())
            return constant(true);
        if (lits.size() == 1)
            return lits[0];
        auto g = _cnf.new_variable("aux." + std::to_string(_cnf.variable_count + 1));
        std::vector<int> back{g};
        for (auto a : lits) {
            _cnf.add_clause({-g, a});
            back.push_back(-a);
        }
        _cnf.add_clause(std::move(back));
        return g;
    }

    auto gate_or(std::vector<int> lits) -> int
    {
        if (lits.empty())
            return constant(false);
        if (lits.size() == 1)
            return lits[0];
        auto g = _cnf.new_variable("aux." + std::to_string(_cnf.variable_count + 1));
        std::vector<int> forward{-g};
        for (auto a : lits) {
            _cnf.add_clause({g, -a});
            forward.push_back(a);
        }
        _cnf.add_clause(std::move(forward));
        return g;
    }

    auto gate_iff(int a, int b) -> int
    {
        auto g = _cnf.new_variable("aux." + std::to_string(_cnf.variable_count + 1));
        _cnf.add_clause({-g, -a, b});
        _cnf.add_clause({-g, a, -b});
        _cnf.add_clause({g, a, b});
        _cnf.add_clause({g, -a, -b});
        return g;
    }

    // Tseitin: returns a literal equivalent to e over copy c.
    auto encode(const Expr & e, const Copy & c) -> int
    {
        using Op = Expr::Op;
        switch (e.op) {
        case Op::True: return constant(true);
        case Op::False: return constant(false);
        case Op::Eq: return literal(c, e.feature, e.constant);
        case Op::Le:
        case Op::Lt: {
            std::vector<int> lits;
            const auto & dom = _space.feature(e.feature).domain;
            for (auto v : dom)
                if (e.op == Op::Le ? v <= e.constant : v < e.constant)
                    lits.push_back(literal(c, e.feature, v));
            if (lits.size() == dom.size())
                return constant(true);
            return gate_or(std::move(lits));
        }
        case Op::Not: return -encode(e.args[0], c);
        case Op::And:
        case Op::Or: {
            std::vector<int> lits;
            for (const auto & a : e.args)
                lits.push_back(encode(a, c));
            return e.op == Op::And ? gate_and(std::move(lits)) : gate_or(std::move(lits));
        }
        case Op::Implies: {
            auto a = encode(e.args[0], c);
            auto b = encode(e.args[1], c);
            return gate_or({-a, b});
        }
        case Op::Iff: {
            auto a = encode(e.args[0], c);
            auto b = encode(e.args[1], c);
            return gate_iff(a, b);
        }
        }
        throw InternalError("unknown expression operator");
    }

    // One indicator per class, true exactly for the tree's label on copy c.
    auto encode_tree(const Classifier & k, const Copy & c) -> std::vector<int>
    {
        std::vector<std::vector<int>> leaves_of(k.class_count());
        std::vector<int> path;
        auto walk = [&](auto && self, std::size_t i) -> void {
            const auto & node = k.nodes()[i];
            if (node.leaf) {
                leaves_of[node.label.value].push_back(gate_and(path));
                return;
            }
            auto lit = literal(c, node.feature, node.value);
            path.push_back(lit);
            self(self, node.if_true);
            path.back() = -lit;
            self(self, node.if_false);
            path.pop_back();
        };
        walk(walk, 0);

        std::vector<int> labels;
        for (unsigned cl = 0; cl < k.class_count(); ++cl) {
            auto v = _cnf.new_variable(c.prefix + ".label=" + std::to_string(cl));
            auto g = gate_or(leaves_of[cl]);
            _cnf.add_clause({-v, g});
            _cnf.add_clause({v, -g});
            labels.push_back(v);
        }
        return labels;
    }

    auto encode_table(const Classifier & k, const Copy & c) -> std::vector<int>
    {
        std::vector<int> labels;
        for (unsigned cl = 0; cl < k.class_count(); ++cl)
            labels.push_back(_cnf.new_variable(c.prefix + ".label=" + std::to_string(cl)));
        at_most_one(labels);
        const auto & rows = k.table_labels();
        for (std::uint64_t r = 0; r < rows.size(); ++r) {
            auto x = _space.unrank(r);
            std::vector<int> clause;
            for (std::size_t f = 0; f < _space.size(); ++f)
                clause.push_back(-literal(c, f, x[f]));
            clause.push_back(labels[rows[r].value]);
            _cnf.add_clause(std::move(clause));
        }
        return labels;
    }

private:
    const FeatureSpace & _space;
    CnfFormula & _cnf;
    int _true = 0;
};

} // namespace

auto encode_ftu_counterexample(const FeatureSpace & space, const ConstraintSet & constraints, const Classifier & k,
    const EncodeOptions & options) -> CnfFormula
{
    if (k.space().size() != space.size())
        throw ContractError("classifier and feature space disagree on the number of features");
    if (k.form() == Classifier::Form::Table && k.table_labels().size() > options.max_table_rows)
        throw UnsupportedError("table classifier with " + std::to_string(k.table_labels().size()) +
            " rows is above the CNF expansion limit of " + std::to_string(options.max_table_rows));

    CnfFormula cnf;
    Encoder enc{space, cnf};
    auto x = enc.make_copy("x");
    auto y = enc.make_copy("y");

    for (const auto * copy : {&x, &y})
        for (const auto & c : constraints.constraints())
            cnf.add_clause({enc.encode(c.expr, *copy)});

    // x_N = y_N
    for (auto f : space.unprotected_set().members()) {
        for (std::size_t i = 0; i < x.vars[f].size(); ++i) {
            cnf.add_clause({-x.vars[f][i], y.vars[f][i]});
            cnf.add_clause({x.vars[f][i], -y.vars[f][i]});
        }
    }

    // kappa(x) != kappa(y)
    switch (k.form()) {
    case Classifier::Form::Expression: {
        auto kx = enc.encode(k.expr(), x);
        auto ky = enc.encode(k.expr(), y);
        cnf.add_clause({kx, ky});
        cnf.add_clause({-kx, -ky});
        break;
    }
    case Classifier::Form::Tree:
    case Classifier::Form::Table: {
        auto lx = k.form() == Classifier::Form::Tree ? enc.encode_tree(k, x) : enc.encode_table(k, x);
        auto ly = k.form() == Classifier::Form::Tree ? enc.encode_tree(k, y) : enc.encode_table(k, y);
        for (std::size_t c = 0; c < lx.size(); ++c)
            cnf.add_clause({-lx[c], -ly[c]});
        break;
    }
    }
    return cnf;
}

auto encode_ftu_counterexample(const ConstrainedSpace & cs, const Classifier & k, const EncodeOptions & options)
    -> CnfFormula
{
    return encode_ftu_counterexample(cs.space(), cs.constraints(), k, options);
}

auto decode_model(const CnfFormula & f, const std::vector<bool> & model, const FeatureSpace & space,
    const ConstraintSet & constraints, const Classifier & k) -> std::pair<Instance, Instance>
{
    if (model.size() != static_cast<std::size_t>(f.variable_count) + 1)
        throw ContractError("model size does not match the formula");
    for (const auto & clause : f.clauses)
        if (std::none_of(clause.begin(), clause.end(), [&](int lit) { return model[std::abs(lit)] == (lit > 0); }))
            throw ContractError("decode_model needs a satisfying assignment");

    const auto n = space.size();
    std::vector<std::vector<Value>> values(2, std::vector<Value>(n, 0));
    std::vector<std::vector<int>> hits(2, std::vector<int>(n, 0));
    for (const auto & [var, name] : f.comment_map) {
        if (name.size() < 3 || (name[0] != 'x' && name[0] != 'y') || name[1] != '.')
            continue;
        const auto copy = name[0] == 'x' ? 0 : 1;
        auto rest = name.substr(2);
        auto eq = rest.find('=');
        auto fname = rest.substr(0, eq);
        auto fi = space.index_of(fname);
        if (! fi)
            continue; // label indicators and the like
        if (eq == std::string::npos) {
            values[copy][*fi] = model[var] ? 1 : 0;
            ++hits[copy][*fi];
        }
        else if (model[var]) {
            Value v{};
            auto text = rest.substr(eq + 1);
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw InternalError("unreadable one-hot variable name '" + name + "'");
            values[copy][*fi] = v;
            ++hits[copy][*fi];
        }
    }
    for (int copy = 0; copy < 2; ++copy)
        for (std::size_t i = 0; i < n; ++i)
            if (hits[copy][i] != 1)
                throw InternalError("model does not assign exactly one value to feature '" + space.feature(i).name + "'");

    Instance x{values[0]}, y{values[1]};
    if (! space.contains(x) || ! space.contains(y))
        throw InternalError("decoded witness lies outside the feature space");
    if (! constraints.satisfied_by(x.values()) || ! constraints.satisfied_by(y.values()))
        throw InternalError("decoded witness violates the constraints");
    for (auto i : space.unprotected_set().members())
        if (x[i] != y[i])
            throw InternalError("decoded witness disagrees on an unprotected feature");
    if (k.evaluate(x) == k.evaluate(y))
        throw InternalError("decoded witness has equal labels");
    return {std::move(x), std::move(y)};
}

auto decode_model(const CnfFormula & f, const std::vector<bool> & model, const ConstrainedSpace & cs,
    const Classifier & k) -> std::pair<Instance, Instance>
{
    return decode_model(f, model, cs.space(), cs.constraints(), k);
}

} // namespace fairaudit
