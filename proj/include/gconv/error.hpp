#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gconv {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed grammar, script or plan text.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string & what, std::size_t line, std::size_t column)
        : Error(format(what, line, column)), m_line(line), m_column(column) {}

    std::size_t line() const { return m_line; }
    std::size_t column() const { return m_column; }

private:
    static std::string format(const std::string & what, std::size_t line, std::size_t column) {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
    }

    std::size_t m_line;
    std::size_t m_column;
};

// Violated grammar invariant (duplicate label, dangling root, stray marker).
class InvariantError : public Error {
public:
    using Error::Error;
};

// Unreadable or unwritable file.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace gconv
