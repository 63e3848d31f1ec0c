#pragma once

#include <stdexcept>
#include <string>

namespace girg {

// Caller passed arguments that violate a documented precondition.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Serialized data is malformed, truncated, or inconsistent.
class CorruptDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Model constants are inconsistent with what the sampling machinery assumes
// (e.g. an upper-bound constant that some pair probability exceeds).
class ModelConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised internally when a sampled pair probability exceeds the envelope the
// skip sampler was configured with.  Callers either surface it as a
// ModelConfigError or retry with a larger envelope constant.
class BoundViolationError : public ModelConfigError {
public:
    using ModelConfigError::ModelConfigError;
};

// A statistic was requested on data too small or too degenerate to support it.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace girg
