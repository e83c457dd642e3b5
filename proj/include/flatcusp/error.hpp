#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace flatcusp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

// Structurally bad group data (dimensions, integrality, unknown generators, ...).
struct ValidationError : Error {
    using Error::Error;
};

struct EnumerationLimitError : Error {
    using Error::Error;
};

// Abstract-mode translation system has no rational solution.
struct InconsistentSystemError : Error {
    using Error::Error;
};

// Parse failure with a location (JSON path or line reference).
struct ParseError : Error {
    std::string location;
    ParseError(const std::string& what, std::string loc)
        : Error(what + " [" + loc + "]"), location(std::move(loc)) {}
};

} // namespace flatcusp
