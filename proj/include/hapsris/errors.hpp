#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hapsris {

// Out-of-range input to an operation (e.g. a zone radius outside [0, R0]).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Physically meaningless geometry: coincident points, near-field distances.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Subcarrier or element index outside the band/panel it must come from.
class AllocationError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A caller broke a documented precondition between modules.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Scenario file problems. Parse errors carry a 1-based line/column,
// validation errors carry the dotted field name.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what),
          field_(std::move(field)) {}

    ConfigError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string field_;
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

}  // namespace hapsris
