#pragma once

#include <stdexcept>
#include <string>

namespace skein {

// Invalid input: malformed diagram, violated invariant, bad shape. Exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

// A configured cap (crossings, matchings, cable level) was exceeded. Exit code 3.
struct CapError : std::runtime_error {
    explicit CapError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace skein
