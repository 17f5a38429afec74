#pragma once

#include <stdexcept>
#include <string>

namespace thiele {

/// Invalid wiring between components: misaligned grids, bad strides,
/// malformed scenario specs.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A solver produced a non-finite value. Carries the time at which the
/// right-hand side blew up.
struct NumericalError : std::runtime_error {
    double time;

    NumericalError(const std::string& what, double t)
        : std::runtime_error(what), time(t) {}
};

}  // namespace thiele
