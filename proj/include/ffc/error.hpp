#pragma once

#include <stdexcept>
#include <string>

namespace ffc {

/// Base exception. Every failure carries a stable machine-readable code
/// (e.g. "NotAUnit") which the CLI forwards in its JSON error objects.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Domain errors (bad arguments to a mathematically partial operation).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Syntax and type errors raised by the expression language.
class ParseError : public Error {
public:
    ParseError(std::string code, const std::string& what, int line = 0, int column = 0)
        : Error(std::move(code), what), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw DomainError(code, code + ": " + what);
}

} // namespace ffc
