#ifndef FAIRAUDIT_DOCUMENT_HPP
#define FAIRAUDIT_DOCUMENT_HPP

#include <fairaudit/classifier.hpp>
#include <fairaudit/model.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace fairaudit {

/**
 * A model document: JSON with `features`, `constraints` and an optional
 * `classifier` section.
 *
 *     {
 *       "features": [{"name": "m", "domain": [false, true], "protected": true}, ...],
 *       "constraints": ["(iff m (not f))"],
 *       "classifier": {"form": "expression", "expr": "(and m g)"}
 *     }
 *
 * Classifier forms: {"form": "expression", "expr": E},
 * {"form": "table", "rows": [[v1, ..., vn, label], ...]} and
 * {"form": "tree", "nodes": [{"id", "feature", "value", "if_true", "if_false"} | {"id", "label"}]}
 * with the first node as root. Tables and trees may give "classes" (count)
 * and "class_names".
 */
struct ModelDocument
{
    FeatureSpace space;
    ConstraintSet constraints;
    std::optional<Classifier> classifier;
};

auto parse_model(std::string_view text, const Limits & limits = {}) -> ModelDocument;

/// Canonical pretty-printed JSON; parse_model(print_model(d)) reproduces d.
auto print_model(const ModelDocument & doc) -> std::string;

/// Hex SHA-256 of the document with keys sorted and whitespace removed.
auto model_digest(std::string_view text) -> std::string;

} // namespace fairaudit

#endif
