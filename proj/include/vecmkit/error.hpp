#pragma once

#include <stdexcept>
#include <string>

namespace vecmkit {

/// Base error for all toolkit failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Unusable input (missing file, bad CSV cell, bad flag value).
/// The CLI maps these to exit status 2.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

} // namespace vecmkit
