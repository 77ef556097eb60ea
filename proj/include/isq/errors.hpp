#pragma once

#include <stdexcept>
#include <string>

namespace isq {

// Bad user-supplied configuration (seeds, distribution parameters, CLI input).
// The CLI maps this to exit code 2; everything else that escapes is code 3.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace isq
