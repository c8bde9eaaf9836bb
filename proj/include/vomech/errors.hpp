#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vomech {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A physical parameter is missing, non-finite or out of range.
class ParameterError : public Error {
public:
    ParameterError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Malformed configuration text. line is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
public:
    ConfigError(std::string key, int line, const std::string& what)
        : Error(format(key, line, what)), key_(std::move(key)), line_(line) {}
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& key, int line, const std::string& what) {
        std::string s;
        if (line > 0) s += "line " + std::to_string(line) + ": ";
        if (!key.empty()) s += key + ": ";
        return s + what;
    }
    std::string key_;
    int line_;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

// A numerical procedure failed to meet its tolerance. estimate carries the
// achieved residual or error bound when one is available.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what, double estimate = 0.0)
        : Error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

// No steady state with a stable drift matrix exists. roots holds every real
// candidate displacement that was examined.
class UnstableError : public Error {
public:
    UnstableError(const std::string& what, std::vector<double> roots = {})
        : Error(what), roots_(std::move(roots)) {}
    const std::vector<double>& roots() const noexcept { return roots_; }

private:
    std::vector<double> roots_;
};

} // namespace vomech
