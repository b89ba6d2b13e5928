#pragma once

#include <cmath>
#include <stdexcept>

namespace vqdyn {

/// Physical parameters shared by all modules. Rates and frequencies are
/// expressed in units of the reservoir central frequency omega0; theta is the
/// dipole-overlap (interference) parameter of the two decay channels, 0 for
/// perpendicular dipoles and 1 for parallel ones. The two upper levels are
/// degenerate and resonant with the reservoir, so a single gamma0 and omega0
/// describe both transitions.
struct SystemParams {
    double gamma0 = 1.0;  ///< relaxation rate of either upper level
    double lambda = 0.8;  ///< Lorentzian spectral width
    double omega0 = 1.0;  ///< reservoir central / transition frequency
    double theta = 0.5;   ///< interference parameter in [0, 1]
    int n_atoms = 1;      ///< qutrits sharing each reservoir

    void validate() const {
        if (!std::isfinite(gamma0) || gamma0 < 0.0)
            throw std::invalid_argument("SystemParams: gamma0 must be finite and >= 0");
        if (!std::isfinite(lambda) || lambda <= 0.0)
            throw std::invalid_argument("SystemParams: lambda must be finite and > 0");
        if (!std::isfinite(omega0) || omega0 <= 0.0)
            throw std::invalid_argument("SystemParams: omega0 must be finite and > 0");
        if (!std::isfinite(theta) || theta < 0.0 || theta > 1.0)
            throw std::invalid_argument("SystemParams: theta must lie in [0, 1]");
        if (n_atoms < 1)
            throw std::invalid_argument("SystemParams: n_atoms must be >= 1");
    }
};

}  // namespace vqdyn
