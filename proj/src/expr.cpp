#include <fairaudit/expr.hpp>

#include <fairaudit/error.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace fairaudit {

auto Expr::negate(Expr e) -> Expr
{
    return Expr{Op::Not, 0, 0, {std::move(e)}};
}

auto Expr::conj(std::vector<Expr> es) -> Expr
{
    return Expr{Op::And, 0, 0, std::move(es)};
}

auto Expr::disj(std::vector<Expr> es) -> Expr
{
    return Expr{Op::Or, 0, 0, std::move(es)};
}

auto Expr::implies(Expr a, Expr b) -> Expr
{
    return Expr{Op::Implies, 0, 0, {std::move(a), std::move(b)}};
}

auto Expr::iff(Expr a, Expr b) -> Expr
{
    return Expr{Op::Iff, 0, 0, {std::move(a), std::move(b)}};
}

namespace {

struct Token
{
    enum class Kind
    {
        Open,
        Close,
        Atom,
        End
    };
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer
{
public:
    explicit Lexer(std::string_view text) : _text(text) {}

    auto next() -> Token
    {
        skip_space();
        if (_pos >= _text.size())
            return {Token::Kind::End, "", _line, _column};
        auto line = _line, column = _column;
        char c = _text[_pos];
        if (c == '(' || c == ')') {
            advance();
            return {c == '(' ? Token::Kind::Open : Token::Kind::Close, std::string(1, c), line, column};
        }
        std::string atom;
        while (_pos < _text.size() && ! std::isspace(static_cast<unsigned char>(_text[_pos])) &&
            _text[_pos] != '(' && _text[_pos] != ')') {
            atom += _text[_pos];
            advance();
        }
        return {Token::Kind::Atom, atom, line, column};
    }

private:
    auto advance() -> void
    {
        if (_text[_pos] == '\n') {
            ++_line;
            _column = 1;
        }
        else
            ++_column;
        ++_pos;
    }

    auto skip_space() -> void
    {
        while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
            advance();
    }

    std::string_view _text;
    std::size_t _pos = 0;
    std::size_t _line = 1;
    std::size_t _column = 1;
};

class Parser
{
public:
    Parser(std::string_view text, const FeatureSpace & space) : _lexer(text), _space(space)
    {
        _current = _lexer.next();
    }

    auto parse() -> Expr
    {
        auto e = expression();
        if (_current.kind != Token::Kind::End)
            fail("unexpected trailing input '" + _current.text + "'");
        return e;
    }

private:
    [[noreturn]] auto fail(const std::string & msg) -> void
    {
        throw ParseError(msg, _current.line, _current.column);
    }

    auto take() -> Token
    {
        auto t = _current;
        _current = _lexer.next();
        return t;
    }

    auto feature_ref(const Token & t) -> std::size_t
    {
        if (t.kind != Token::Kind::Atom)
            throw ParseError("expected a feature name", t.line, t.column);
        auto idx = _space.index_of(t.text);
        if (! idx)
            throw SemanticError("unknown feature '" + t.text + "' at line " + std::to_string(t.line) +
                ", column " + std::to_string(t.column));
        return *idx;
    }

    auto constant(const Token & t, const Feature & f, bool comparison) -> Value
    {
        if (t.kind != Token::Kind::Atom)
            throw ParseError("expected a constant", t.line, t.column);
        auto where = " at line " + std::to_string(t.line) + ", column " + std::to_string(t.column);
        if (f.kind == ValueKind::Boolean) {
            if (comparison)
                throw SemanticError("ordering comparison on boolean feature '" + f.name + "'" + where);
            if (t.text == "true")
                return 1;
            if (t.text == "false")
                return 0;
            throw SemanticError("boolean feature '" + f.name + "' compared with non-boolean constant '" + t.text + "'" + where);
        }
        Value v{};
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
            throw SemanticError("integer feature '" + f.name + "' compared with non-integer constant '" + t.text + "'" + where);
        if (! comparison && ! f.domain_index(v))
            throw SemanticError("constant " + t.text + " is outside the domain of feature '" + f.name + "'" + where);
        return v;
    }

    auto expression() -> Expr
    {
        if (_current.kind == Token::Kind::End)
            fail("unexpected end of expression");
        if (_current.kind == Token::Kind::Close)
            fail("unexpected ')'");
        if (_current.kind == Token::Kind::Atom) {
            auto t = take();
            if (t.text == "true")
                return Expr::truth(true);
            if (t.text == "false")
                return Expr::truth(false);
            auto f = feature_ref(t);
            if (_space.feature(f).kind != ValueKind::Boolean)
                throw SemanticError("bare reference to non-boolean feature '" + t.text + "' at line " +
                    std::to_string(t.line) + ", column " + std::to_string(t.column));
            return Expr::eq(f, 1);
        }

        take(); // (
        if (_current.kind != Token::Kind::Atom)
            fail("expected an operator");
        auto op_tok = take();
        const auto & op = op_tok.text;

        Expr result;
        if (op == "=" || op == "le" || op == "lt") {
            auto ft = take();
            auto f = feature_ref(ft);
            auto ct = take();
            auto v = constant(ct, _space.feature(f), op != "=");
            result = op == "=" ? Expr::eq(f, v) : op == "le" ? Expr::le(f, v) : Expr::lt(f, v);
        }
        else if (op == "not" || op == "and" || op == "or" || op == "implies" || op == "iff") {
            std::vector<Expr> args;
            while (_current.kind != Token::Kind::Close && _current.kind != Token::Kind::End)
                args.push_back(expression());
            auto arity_error = [&](const std::string & expected) {
                throw ParseError("'" + op + "' expects " + expected + ", got " + std::to_string(args.size()),
                    op_tok.line, op_tok.column);
            };
            if (op == "not") {
                if (args.size() != 1)
                    arity_error("1 argument");
                result = Expr::negate(std::move(args[0]));
            }
            else if (op == "and" || op == "or") {
                if (args.size() < 2)
                    arity_error("at least 2 arguments");
                result = op == "and" ? Expr::conj(std::move(args)) : Expr::disj(std::move(args));
            }
            else {
                if (args.size() != 2)
                    arity_error("2 arguments");
                result = op == "implies" ? Expr::implies(std::move(args[0]), std::move(args[1]))
                                         : Expr::iff(std::move(args[0]), std::move(args[1]));
            }
        }
        else
            throw ParseError("unknown operator '" + op + "'", op_tok.line, op_tok.column);

        if (_current.kind != Token::Kind::Close)
            fail("expected ')'");
        take();
        return result;
    }

    Lexer _lexer;
    const FeatureSpace & _space;
    Token _current;
};

auto write(const Expr & e, const FeatureSpace & space, std::string & out) -> void
{
    using Op = Expr::Op;
    auto nary = [&](const char * name) {
        out += '(';
        out += name;
        for (const auto & a : e.args) {
            out += ' ';
            write(a, space, out);
        }
        out += ')';
    };
    switch (e.op) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Eq: {
        const auto & f = space.feature(e.feature);
        if (f.kind == ValueKind::Boolean && e.constant == 1)
            out += f.name;
        else
            out += "(= " + f.name + " " + f.render(e.constant) + ")";
        break;
    }
    case Op::Le: out += "(le " + space.feature(e.feature).name + " " + std::to_string(e.constant) + ")"; break;
    case Op::Lt: out += "(lt " + space.feature(e.feature).name + " " + std::to_string(e.constant) + ")"; break;
    case Op::Not: nary("not"); break;
    case Op::And: nary("and"); break;
    case Op::Or: nary("or"); break;
    case Op::Implies: nary("implies"); break;
    case Op::Iff: nary("iff"); break;
    }
}

} // namespace

auto parse_expr(std::string_view text, const FeatureSpace & space) -> Expr
{
    return Parser{text, space}.parse();
}

auto to_string(const Expr & e, const FeatureSpace & space) -> std::string
{
    std::string out;
    write(e, space, out);
    return out;
}

auto evaluate(const Expr & e, std::span<const Value> values) -> bool
{
    using Op = Expr::Op;
    switch (e.op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Eq: return values[e.feature] == e.constant;
    case Op::Le: return values[e.feature] <= e.constant;
    case Op::Lt: return values[e.feature] < e.constant;
    case Op::Not: return ! evaluate(e.args[0], values);
    case Op::And:
        return std::all_of(e.args.begin(), e.args.end(), [&](const Expr & a) { return evaluate(a, values); });
    case Op::Or:
        return std::any_of(e.args.begin(), e.args.end(), [&](const Expr & a) { return evaluate(a, values); });
    case Op::Implies: return ! evaluate(e.args[0], values) || evaluate(e.args[1], values);
    case Op::Iff: return evaluate(e.args[0], values) == evaluate(e.args[1], values);
    }
    return false;
}

auto scope(const Expr & e) -> FeatureSet
{
    if (e.is_atom())
        return FeatureSet{}.with(e.feature);
    FeatureSet s;
    for (const auto & a : e.args)
        s = s | scope(a);
    return s;
}

} // namespace fairaudit
