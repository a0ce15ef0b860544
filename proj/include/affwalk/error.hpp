#pragma once

#include <stdexcept>
#include <string>

namespace affwalk {

// Error categories map one-to-one onto the CLI exit codes.
enum class ErrorKind {
    Config = 2,       // malformed or inconsistent input
    Math = 3,         // mathematical precondition violated (singular, inadmissible, non-prime, ...)
    Budget = 4,       // state / character / step budget exceeded
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class MathError : public Error {
public:
    explicit MathError(const std::string& what) : Error(ErrorKind::Math, what) {}
};

class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& what) : Error(ErrorKind::Budget, what) {}
};

}  // namespace affwalk
