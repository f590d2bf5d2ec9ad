#ifndef FAIRAUDIT_EXPR_HPP
#define FAIRAUDIT_EXPR_HPP

#include <fairaudit/feature_set.hpp>
#include <fairaudit/space.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fairaudit {

/**
 * Boolean expression over the features of a FeatureSpace.
 *
 * Textual form (S-expressions, case-sensitive):
 *
 *     true | false | <feature> | (not E) | (and E E+) | (or E E+)
 *     | (implies E E) | (iff E E) | (= <feature> <const>)
 *     | (le <feature> <const>) | (lt <feature> <const>)
 *
 * A bare boolean feature name is shorthand for (= <feature> true) and is
 * stored that way.
 */
struct Expr
{
    enum class Op
    {
        True,
        False,
        Eq,
        Le,
        Lt,
        Not,
        And,
        Or,
        Implies,
        Iff
    };

    Op op = Op::True;
    std::size_t feature = 0;
    Value constant = 0;
    std::vector<Expr> args;

    static auto truth(bool b) -> Expr { return Expr{b ? Op::True : Op::False, 0, 0, {}}; }
    static auto eq(std::size_t f, Value v) -> Expr { return Expr{Op::Eq, f, v, {}}; }
    static auto le(std::size_t f, Value v) -> Expr { return Expr{Op::Le, f, v, {}}; }
    static auto lt(std::size_t f, Value v) -> Expr { return Expr{Op::Lt, f, v, {}}; }
    static auto negate(Expr e) -> Expr;
    static auto conj(std::vector<Expr> es) -> Expr;
    static auto disj(std::vector<Expr> es) -> Expr;
    static auto implies(Expr a, Expr b) -> Expr;
    static auto iff(Expr a, Expr b) -> Expr;

    [[nodiscard]] auto is_atom() const -> bool { return op == Op::Eq || op == Op::Le || op == Op::Lt; }

    friend auto operator==(const Expr &, const Expr &) -> bool = default;
};

/// Parses `text` against `space`. Syntax errors carry a line/column inside
/// `text`; name and type problems raise SemanticError.
auto parse_expr(std::string_view text, const FeatureSpace & space) -> Expr;

/// Canonical text; parse_expr(to_string(e)) == e.
auto to_string(const Expr & e, const FeatureSpace & space) -> std::string;

auto evaluate(const Expr & e, std::span<const Value> values) -> bool;

/// Features syntactically occurring in e.
auto scope(const Expr & e) -> FeatureSet;

} // namespace fairaudit

#endif
