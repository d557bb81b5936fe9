#pragma once

#include <stdexcept>
#include <string>

namespace coset {

// Exception categories used across the library.  The command line tool maps
// them to process exit codes: ConfigError -> 1, IoError -> 2, NumericError -> 3.
// Plain API misuse (bad dimensions, out-of-range arguments) stays
// std::invalid_argument and is treated like ConfigError at the tool boundary.

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coset
