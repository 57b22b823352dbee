#ifndef VIDMINE_ERRORS_HPP
#define VIDMINE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vidmine {

// Unreadable or malformed input data (exit code 1 at the CLI).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Out-of-range or inconsistent configuration (exit code 2 at the CLI).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A broken internal invariant (exit code 3 at the CLI).
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vidmine

#endif
