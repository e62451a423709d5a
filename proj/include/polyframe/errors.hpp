#pragma once

#include <stdexcept>
#include <string>

namespace polyframe {

struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace polyframe
