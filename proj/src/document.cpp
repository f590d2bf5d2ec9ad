#include <fairaudit/document.hpp>

#include <fairaudit/error.hpp>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <array>
#include <map>

namespace fairaudit {

using nlohmann::json;

namespace {

auto line_column(std::string_view text, std::size_t byte) -> std::pair<std::size_t, std::size_t>
{
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        }
        else
            ++column;
    }
    return {line, column};
}

auto parse_json(std::string_view text) -> json
{
    try {
        return json::parse(text);
    }
    catch (const json::parse_error & e) {
        // byte is one past the offending character
        auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string{"malformed JSON: "} + e.what(), line, column);
    }
}

auto require(const json & j, const char * key, const std::string & where) -> const json &
{
    if (! j.is_object() || ! j.contains(key))
        throw SemanticError(where + ": missing field '" + key + "'");
    return j.at(key);
}

auto read_value(const json & j, const Feature & f, const std::string & where) -> Value
{
    if (f.kind == ValueKind::Boolean) {
        if (! j.is_boolean())
            throw SemanticError(where + ": feature '" + f.name + "' expects a boolean value");
        return j.get<bool>() ? 1 : 0;
    }
    if (! j.is_number_integer())
        throw SemanticError(where + ": feature '" + f.name + "' expects an integer value");
    auto v = j.get<Value>();
    if (! f.domain_index(v))
        throw SemanticError(where + ": value " + std::to_string(v) + " is outside the domain of '" + f.name + "'");
    return v;
}

auto write_value(const Feature & f, Value v) -> nlohmann::ordered_json
{
    if (f.kind == ValueKind::Boolean)
        return nlohmann::ordered_json(v != 0);
    return nlohmann::ordered_json(v);
}

auto read_features(const json & j) -> FeatureSpace
{
    if (! j.is_array())
        throw SemanticError("'features' must be a list");
    std::vector<Feature> features;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto where = "feature #" + std::to_string(i + 1);
        const auto & fj = j[i];
        const auto & name = require(fj, "name", where);
        if (! name.is_string())
            throw SemanticError(where + ": 'name' must be a string");
        const auto & dom = require(fj, "domain", where);
        if (! dom.is_array() || dom.empty())
            throw SemanticError(where + ": 'domain' must be a non-empty list");
        bool is_protected = false;
        if (fj.contains("protected")) {
            if (! fj["protected"].is_boolean())
                throw SemanticError(where + ": 'protected' must be a boolean");
            is_protected = fj["protected"].get<bool>();
        }
        Feature f;
        f.name = name.get<std::string>();
        f.is_protected = is_protected;
        if (std::all_of(dom.begin(), dom.end(), [](const json & v) { return v.is_boolean(); })) {
            f.kind = ValueKind::Boolean;
            for (const auto & v : dom)
                f.domain.push_back(v.get<bool>() ? 1 : 0);
        }
        else if (std::all_of(dom.begin(), dom.end(), [](const json & v) { return v.is_number_integer(); })) {
            f.kind = ValueKind::Integer;
            for (const auto & v : dom)
                f.domain.push_back(v.get<Value>());
        }
        else
            throw SemanticError(where + ": domain values must be all booleans or all integers");
        features.push_back(std::move(f));
    }
    return FeatureSpace{std::move(features)};
}

auto read_expr(const json & j, const FeatureSpace & space, const std::string & where) -> Expr
{
    if (! j.is_string())
        throw SemanticError(where + ": expression must be a string");
    try {
        return parse_expr(j.get<std::string>(), space);
    }
    catch (const ParseError & e) {
        throw ParseError(where + ": " + e.what(), e.line(), e.column());
    }
    catch (const SemanticError & e) {
        throw SemanticError(where + ": " + e.what());
    }
}

auto read_label(const json & j, const std::string & where) -> ClassLabel
{
    if (! j.is_number_integer() || j.get<long long>() < 0)
        throw SemanticError(where + ": label must be a non-negative integer");
    return ClassLabel{j.get<unsigned>()};
}

auto read_classifier(const json & j, const FeatureSpace & space, const Limits & limits) -> Classifier
{
    const std::string where = "classifier";
    const auto & form = require(j, "form", where);
    if (! form.is_string())
        throw SemanticError("classifier: 'form' must be a string");

    std::optional<unsigned> classes;
    if (j.contains("classes")) {
        if (! j["classes"].is_number_integer() || j["classes"].get<long long>() < 2)
            throw SemanticError("classifier: 'classes' must be an integer >= 2");
        classes = j["classes"].get<unsigned>();
    }
    std::vector<std::string> names;
    if (j.contains("class_names")) {
        for (const auto & n : j["class_names"]) {
            if (! n.is_string())
                throw SemanticError("classifier: 'class_names' must be strings");
            names.push_back(n.get<std::string>());
        }
        if (! classes && names.size() >= 2)
            classes = static_cast<unsigned>(names.size());
    }

    auto finish = [&](Classifier k) {
        if (! names.empty())
            k.set_class_names(names);
        return k;
    };

    const auto kind = form.get<std::string>();
    if (kind == "expression") {
        if (classes && *classes != 2)
            throw SemanticError("classifier: expression form is binary");
        return finish(Classifier::expression(space, read_expr(require(j, "expr", where), space, "classifier")));
    }
    if (kind == "table") {
        const auto & rows = require(j, "rows", where);
        if (! rows.is_array())
            throw SemanticError("classifier: 'rows' must be a list");
        std::vector<std::pair<Instance, ClassLabel>> parsed;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto rw = "table row #" + std::to_string(r + 1);
            const auto & row = rows[r];
            if (! row.is_array() || row.size() != space.size() + 1)
                throw SemanticError(rw + ": expected " + std::to_string(space.size()) + " values and a label");
            std::vector<Value> values;
            for (std::size_t i = 0; i < space.size(); ++i)
                values.push_back(read_value(row[i], space.feature(i), rw));
            parsed.emplace_back(Instance{std::move(values)}, read_label(row[space.size()], rw));
        }
        return finish(Classifier::table(space, parsed, classes, limits));
    }
    if (kind == "tree") {
        const auto & nodes = require(j, "nodes", where);
        if (! nodes.is_array() || nodes.empty())
            throw SemanticError("classifier: 'nodes' must be a non-empty list");
        std::map<long long, std::size_t> position;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto & id = require(nodes[i], "id", "tree node #" + std::to_string(i + 1));
            if (! id.is_number_integer())
                throw SemanticError("tree node #" + std::to_string(i + 1) + ": 'id' must be an integer");
            if (! position.emplace(id.get<long long>(), i).second)
                throw SemanticError("tree node id " + std::to_string(id.get<long long>()) + " is used twice");
        }
        std::vector<TreeNode> built;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto & nj = nodes[i];
            auto nw = "tree node " + std::to_string(nj["id"].get<long long>());
            TreeNode node;
            node.id = nj["id"].get<int>();
            if (nj.contains("label")) {
                node.leaf = true;
                node.label = read_label(nj["label"], nw);
            }
            else {
                const auto & fname = require(nj, "feature", nw);
                if (! fname.is_string())
                    throw SemanticError(nw + ": 'feature' must be a string");
                auto f = space.index_of(fname.get<std::string>());
                if (! f)
                    throw SemanticError(nw + ": unknown feature '" + fname.get<std::string>() + "'");
                node.feature = *f;
                node.value = read_value(require(nj, "value", nw), space.feature(*f), nw);
                auto child = [&](const char * key) {
                    const auto & c = require(nj, key, nw);
                    if (! c.is_number_integer() || ! position.contains(c.get<long long>()))
                        throw SemanticError(nw + ": '" + key + "' does not name a node");
                    return position.at(c.get<long long>());
                };
                node.if_true = child("if_true");
                node.if_false = child("if_false");
            }
            built.push_back(node);
        }
        return finish(Classifier::tree(space, std::move(built), classes));
    }
    throw SemanticError("classifier: unknown form '" + kind + "'");
}

auto write_classifier(const Classifier & k) -> nlohmann::ordered_json
{
    nlohmann::ordered_json j;
    const auto & space = k.space();
    j["form"] = to_string(k.form());
    switch (k.form()) {
    case Classifier::Form::Expression: j["expr"] = to_string(k.expr(), space); break;
    case Classifier::Form::Table: {
        j["classes"] = k.class_count();
        auto rows = nlohmann::ordered_json::array();
        const auto & labels = k.table_labels();
        for (std::uint64_t r = 0; r < labels.size(); ++r) {
            auto x = space.unrank(r);
            auto row = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < space.size(); ++i)
                row.push_back(write_value(space.feature(i), x[i]));
            row.push_back(labels[r].value);
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        break;
    }
    case Classifier::Form::Tree: {
        j["classes"] = k.class_count();
        auto nodes = nlohmann::ordered_json::array();
        for (const auto & n : k.nodes()) {
            nlohmann::ordered_json nj;
            nj["id"] = n.id;
            if (n.leaf)
                nj["label"] = n.label.value;
            else {
                nj["feature"] = space.feature(n.feature).name;
                nj["value"] = write_value(space.feature(n.feature), n.value);
                nj["if_true"] = k.nodes()[n.if_true].id;
                nj["if_false"] = k.nodes()[n.if_false].id;
            }
            nodes.push_back(std::move(nj));
        }
        j["nodes"] = std::move(nodes);
        break;
    }
    }
    if (! k.class_names().empty())
        j["class_names"] = k.class_names();
    return j;
}

} // namespace

auto parse_model(std::string_view text, const Limits & limits) -> ModelDocument
{
    auto j = parse_json(text);
    if (! j.is_object())
        throw SemanticError("model document must be a JSON object");
    for (const auto & [key, value] : j.items())
        if (key != "features" && key != "constraints" && key != "classifier")
            throw SemanticError("unknown top-level field '" + key + "'");

    auto space = read_features(require(j, "features", "model"));
    std::vector<Expr> exprs;
    if (j.contains("constraints")) {
        const auto & cj = j["constraints"];
        if (! cj.is_array())
            throw SemanticError("'constraints' must be a list");
        for (std::size_t i = 0; i < cj.size(); ++i)
            exprs.push_back(read_expr(cj[i], space, "constraint #" + std::to_string(i + 1)));
    }
    ModelDocument doc{space, ConstraintSet{std::move(exprs)}, std::nullopt};
    if (j.contains("classifier") && ! j["classifier"].is_null())
        doc.classifier = read_classifier(j["classifier"], space, limits);
    return doc;
}

auto print_model(const ModelDocument & doc) -> std::string
{
    nlohmann::ordered_json j;
    auto features = nlohmann::ordered_json::array();
    for (const auto & f : doc.space.features()) {
        nlohmann::ordered_json fj;
        fj["name"] = f.name;
        auto dom = nlohmann::ordered_json::array();
        for (auto v : f.domain)
            dom.push_back(write_value(f, v));
        fj["domain"] = std::move(dom);
        fj["protected"] = f.is_protected;
        features.push_back(std::move(fj));
    }
    j["features"] = std::move(features);
    auto constraints = nlohmann::ordered_json::array();
    for (const auto & c : doc.constraints.constraints())
        constraints.push_back(to_string(c.expr, doc.space));
    j["constraints"] = std::move(constraints);
    if (doc.classifier)
        j["classifier"] = write_classifier(*doc.classifier);
    return j.dump(2) + "\n";
}

auto model_digest(std::string_view text) -> std::string
{
    // json (not ordered_json) keeps object keys sorted
    const auto canonical = parse_json(text).dump();
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(canonical.data(), canonical.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw InternalError("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

} // namespace fairaudit
