#pragma once

#include <optional>
#include <string>

#include "nacirc/circuit.hpp"
#include "nacirc/error.hpp"

namespace nacirc::testing {

template <class F>
std::optional<ErrorKind> error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

inline std::string header(const char* mode, unsigned long long p, int n) {
    return "nacirc v1\nmode " + std::string(mode) + "\nfield " + std::to_string(p) + "\nnvars " + std::to_string(n) + "\n";
}

}  // namespace nacirc::testing
