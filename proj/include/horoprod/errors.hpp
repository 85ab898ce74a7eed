#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace horoprod {

// Every failure raised by the library derives from Error so that callers
// (the CLI in particular) can map categories onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class StructureError : public Error {
public:
    using Error::Error;
};

class ResourceError : public Error {
public:
    using Error::Error;
};

class ModelError : public Error {
public:
    using Error::Error;
};

class CapabilityError : public Error {
public:
    using Error::Error;
};

/// Raised by the descriptor and word grammars. `position` is the byte offset
/// of the offending token in the input and `length` its extent.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position, std::size_t length = 1)
        : Error(what), position_(position), length_(length) {}

    std::size_t position() const noexcept { return position_; }
    std::size_t length() const noexcept { return length_; }

private:
    std::size_t position_;
    std::size_t length_;
};

}  // namespace horoprod
