#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tns {

/// Modulus of continuity A : [0,1) -> R+ with the metadata the uniqueness
/// argument needs (concavity, monotonicity, Osgood divergence of
/// int_0+ dr/A(r)).
struct ModulusOfContinuity {
    std::function<double(double)> a;
    bool concave = true;
    bool increasing = true;
    bool osgood = true;
    std::string name;

    double operator()(double r) const { return a(r); }

    /// A(r) = r (Lipschitz-type modulus).
    static ModulusOfContinuity linear();
    /// A(r) = r (1 - ln r) for r < r0, linearly extended; the canonical
    /// Osgood modulus.
    static ModulusOfContinuity log_osgood();
};

struct ModulusCheck {
    bool zero_at_origin = false;
    bool nondecreasing = false;
    bool concave = false;
    bool osgood_divergent = false;
    std::vector<double> divergence_samples;  // Gamma-type integral per delta rung
    bool pass() const {
        return zero_at_origin && nondecreasing && concave && osgood_divergent;
    }
};

/// Samples the modulus invariants on a mesh of (0,1) and probes the Osgood
/// divergence over delta in {1e-2, 1e-4, ..., 1e-10}.
ModulusCheck check_modulus(const ModulusOfContinuity& m);

/// Gamma(t) = int_iota^t ds / (A(s) + s), the control function of the
/// contraction argument.  Relative quadrature error <= 1e-8.
double osgood_control(const ModulusOfContinuity& m, double iota, double t);

}  // namespace tns
