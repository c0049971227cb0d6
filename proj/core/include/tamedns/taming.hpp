#pragma once

namespace tns {

/// The taming function: zero below the kinetic threshold N, linear slope 1/nu
/// above N+1, joined on (N, N+1) by a quintic Hermite bridge whose derivative
/// stays within [0, 2/min(nu,1)].
class TamingProfile {
public:
    TamingProfile(double threshold, double viscosity);

    double threshold() const { return N_; }
    double viscosity() const { return nu_; }

    double psi(double z) const;
    double psi_prime(double z) const;

private:
    double N_;
    double nu_;
};

}  // namespace tns
