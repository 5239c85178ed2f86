// errors.hpp — error taxonomy shared by the library and the CLI exit codes.
#pragma once

#include <exception>
#include <stdexcept>
#include <string>

namespace cliquemask {

// CLI exit codes: 0 success, 2 invalid parameters, 3 parse error, 4 resource limit.

// Invalid parameters, invalid arguments, and violated preconditions.
class InvalidParams : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input files; the message carries the offending line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A requested computation exceeds a configured budget.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InvalidParams*>(&e)) return 2;
    if (dynamic_cast<const ParseError*>(&e)) return 3;
    if (dynamic_cast<const ResourceLimit*>(&e)) return 4;
    return 1;
}

} // namespace cliquemask
