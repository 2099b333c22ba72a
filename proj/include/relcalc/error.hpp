#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relcalc {

// Base class for every error raised by the library. The CLI maps all of
// them to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : Error("syntax error at column " + std::to_string(position + 1) + ": " + message),
          position_(position), detail_(message) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t position_;
    std::string detail_;
};

class UnknownVariable : public Error {
public:
    explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'") {}
};

class MalformedAtom : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class SelfReference : public Error {
public:
    using Error::Error;
};

class UnknownContext : public Error {
public:
    explicit UnknownContext(const std::string& id) : Error("unknown context '" + id + "'") {}
};

// A single intervened system did not have exactly one solution.
class NotUnique : public Error {
public:
    using Error::Error;
};

// The model is not in T_uniq (some intervention has zero or several solutions).
class NotUniq : public Error {
public:
    using Error::Error;
};

class SignatureMismatch : public Error {
public:
    using Error::Error;
};

class Inconsistent : public Error {
public:
    using Error::Error;
};

class InvalidExtension : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class TooManyExtensions : public Error {
public:
    using Error::Error;
};

} // namespace relcalc
