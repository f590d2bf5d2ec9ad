#ifndef FAIRAUDIT_ERROR_HPP
#define FAIRAUDIT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairaudit {

/// Base class for every user-facing failure raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error
{
public:
    ParseError(const std::string & what, std::size_t line, std::size_t column) :
        Error(line == 0 ? what : what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        _line(line),
        _column(column)
    {
    }

    [[nodiscard]] auto line() const -> std::size_t { return _line; }
    [[nodiscard]] auto column() const -> std::size_t { return _column; }

private:
    std::size_t _line;
    std::size_t _column;
};

/// Well-formed text that does not describe a valid model (unknown feature,
/// duplicate name, out-of-domain constant, type mismatch...).
class SemanticError : public Error
{
public:
    using Error::Error;
};

/// A configured enumeration limit would be exceeded.
class CapacityError : public Error
{
public:
    using Error::Error;
};

/// An operation was asked to do something its inputs cannot support
/// (e.g. completing a classifier that violates constrained FTU).
class PreconditionError : public Error
{
public:
    using Error::Error;
};

/// Input form the requested operation does not handle.
class UnsupportedError : public Error
{
public:
    using Error::Error;
};

/// Caller broke a documented contract (wrong arity, instance outside F[C]...).
class ContractError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// A self-check failed: this is a bug in the library, never a user error.
class InternalError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace fairaudit

#endif
