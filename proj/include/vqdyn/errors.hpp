#pragma once

#include <stdexcept>

namespace vqdyn {

/// Thrown when an iterative numerical procedure cannot meet its contract
/// (iteration cap, bracket exhaustion, integrator norm drift).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace vqdyn
