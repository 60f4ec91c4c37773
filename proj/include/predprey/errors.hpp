#ifndef PREDPREY_ERRORS_HPP
#define PREDPREY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace predprey {

// All library errors carry a short machine-readable kind (e.g. "SchemaError",
// "NoPositiveEquilibrium") plus a human-readable detail, and map onto the CLI
// exit code scheme: 2 usage/config, 3 assumption violation, 4 numerical failure.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }
    virtual int exit_code() const noexcept = 0;

private:
    std::string kind_;
};

// Bad input: malformed config, invalid parameters, unusable grid/step settings.
class UsageError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

// A model assumption required by the requested computation does not hold.
class AssumptionError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

// A numerical procedure failed to produce a trustworthy result.
class NumericError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

}  // namespace predprey

#endif
