#pragma once

#include <stdexcept>
#include <string>

namespace nkland {

/// A parameter lies outside its admissible domain (k > n - 1, empty betas, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (length mismatch, empty input).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exhaustive analysis requested for a design space that is too large.
class TractabilityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Reading or writing an output file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nkland
