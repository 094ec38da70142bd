#pragma once

#include <stdexcept>
#include <string>

namespace mehler {

// Base class for all library errors. CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotSymmetricError : public Error {
public:
    explicit NotSymmetricError(const std::string& msg) : Error(msg) {}
};

class NegativeEigenvalueError : public Error {
public:
    explicit NegativeEigenvalueError(const std::string& msg) : Error(msg) {}
};

class OutOfCameronMartinError : public Error {
public:
    explicit OutOfCameronMartinError(const std::string& msg) : Error(msg) {}
};

class SpecInvalidError : public Error {
public:
    explicit SpecInvalidError(const std::string& msg) : Error(msg) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Thrown when an operation needs field metadata (Holder exponent, closed-form
// gradient/Hessian) that the given field does not declare.
class MissingMetadataError : public Error {
public:
    explicit MissingMetadataError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace mehler
