#pragma once

#include <stdexcept>
#include <string>

namespace salemap {

// Precondition / parameter failures. The CLI maps these to exit status 1.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Mismatched or inconsistent arguments (e.g. moduli differ).
class ArgumentError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Spectral counting needs an odd modulus.
class ParityError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class RangeError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class SizeLimitError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Rejection sampling ran out of retries for some block.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// File could not be read/written or did not parse. Exit status 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace salemap
