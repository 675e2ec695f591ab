#pragma once

#include <stdexcept>
#include <string>

namespace sixvertex {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : Error { using Error::Error; };
struct CapacityError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DegeneracyError : Error { using Error::Error; };

// config / usage problems surface at the CLI as exit code 2
struct ConfigError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

}  // namespace sixvertex
