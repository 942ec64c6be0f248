#pragma once

#include <stdexcept>
#include <string>

namespace dtnlab {

/// Base class for all errors raised by the library (bad input files,
/// invalid configurations, degenerate statistics, ...).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace dtnlab
