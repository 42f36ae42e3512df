#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace udg {

/// Base class for all errors thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or out-of-contract input (bad vertex id, coordinate overflow, ...).
class input_error : public error {
public:
    explicit input_error(const std::string& what) : error(what) {}
};

/// Parse failure in a text format; carries the 1-based line number.
class parse_error : public input_error {
public:
    parse_error(const std::string& path, std::size_t line, const std::string& what)
        : input_error(path + ":" + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A structural invariant was violated (e.g. the input cannot be a unit disk
/// graph, or an algorithm exceeded its proven iteration bound).
class invariant_error : public error {
public:
    explicit invariant_error(const std::string& what) : error(what) {}
};

/// A search exceeded its node/time budget.
class budget_error : public error {
public:
    explicit budget_error(const std::string& what) : error(what) {}
};

}  // namespace udg
