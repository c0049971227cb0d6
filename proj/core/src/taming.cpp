#include "tamedns/taming.hpp"

#include <stdexcept>

namespace tns {

TamingProfile::TamingProfile(double threshold, double viscosity)
    : N_(threshold), nu_(viscosity) {
    if (threshold <= 0.0 || viscosity <= 0.0)
        throw std::invalid_argument("TamingProfile: threshold and viscosity must be positive");
}

// Bridge on (N, N+1): p(t) = (6t^3 - 8t^4 + 3t^5)/nu with t = z - N.
// Matches value and slope at both ends (0,0) and (1/nu, 1/nu), has zero
// curvature at the joints, and max slope 1.512/nu < 2/min(nu,1).
double TamingProfile::psi(double z) const {
    if (z < 0.0) throw std::invalid_argument("psi: z must be nonnegative");
    if (z <= N_) return 0.0;
    if (z >= N_ + 1.0) return (z - N_) / nu_;
    double t = z - N_;
    double t3 = t * t * t;
    return (6.0 * t3 - 8.0 * t3 * t + 3.0 * t3 * t * t) / nu_;
}

double TamingProfile::psi_prime(double z) const {
    if (z < 0.0) throw std::invalid_argument("psi_prime: z must be nonnegative");
    if (z <= N_) return 0.0;
    if (z >= N_ + 1.0) return 1.0 / nu_;
    double t = z - N_;
    double t2 = t * t;
    return (18.0 * t2 - 32.0 * t2 * t + 15.0 * t2 * t2) / nu_;
}

}  // namespace tns
