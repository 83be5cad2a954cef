#ifndef DICTMON_ERRORS_HPP
#define DICTMON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dictmon {

/// Bad input data: unreadable files, malformed records, contract violations
/// on user-supplied values. Maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure: non-finite values where finite ones are required,
/// zero-norm vectors, degenerate energies. Maps to exit code 3 in the CLI.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dictmon

#endif
