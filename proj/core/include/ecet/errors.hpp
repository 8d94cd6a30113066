#pragma once

#include <stdexcept>
#include <string>

namespace ecet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fusion of mass vectors defined over frames of different size.
struct FrameMismatchError : Error {
    using Error::Error;
};

// Dempster combination is undefined when the conflict reaches 1.
struct TotalConflictError : Error {
    using Error::Error;
};

struct EmptySequenceError : Error {
    using Error::Error;
};

struct InvalidMassError : Error {
    using Error::Error;
};

struct InvalidArgumentError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct DegenerateDataError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace ecet
