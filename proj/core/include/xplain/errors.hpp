#pragma once

#include <stdexcept>
#include <string>

namespace xplain {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for malformed or inconsistent inputs (files, configs, parameters).
/// The CLI maps these to exit code 2.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

/// An error that occurred inside a named pipeline stage. Stage failures on
/// loaded data map to exit code 1; failures while loading inputs keep the
/// InputError classification (exit code 2) via `input_failure`.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what, bool input_failure = false)
        : Error("stage '" + stage + "': " + what),
          stage_(std::move(stage)),
          input_failure_(input_failure) {}

    const std::string& stage() const { return stage_; }
    bool input_failure() const { return input_failure_; }

private:
    std::string stage_;
    bool input_failure_;
};

} // namespace xplain
