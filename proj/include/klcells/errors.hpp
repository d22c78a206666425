#ifndef KLCELLS_ERRORS_HPP
#define KLCELLS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace klcells {

// Bad input data: malformed Coxeter matrix, unparseable word, unknown type name.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration or table construction exceeded its size budget, or the group
// is not finite.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Query for an element outside the scope of a table.
class scope_error : public std::runtime_error {
public:
    explicit scope_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A map was applied outside its domain, or an argument violates a stated
// precondition.
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Cache file problems: header mismatch, truncation, checksum failure.
class cache_error : public std::runtime_error {
public:
    explicit cache_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace klcells

#endif
