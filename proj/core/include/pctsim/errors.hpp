#pragma once

#include <stdexcept>
#include <string>

namespace pctsim {

// Invalid user-supplied configuration (files, CLI flags, world parameters).
// The CLI maps this to exit code 1; all other exceptions map to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pctsim
