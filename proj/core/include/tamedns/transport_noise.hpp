#pragma once

#include <array>
#include <string>
#include <vector>

#include "tamedns/field.hpp"

namespace tns {

/// One Fourier mode of a transport-noise vector field:
///   contribution(t, x) = (c0 + c1 sin(omega t)) *
///                        [amp_cos cos(k.x) + amp_sin sin(k.x)].
struct NoiseMode {
    std::array<int, 3> k{0, 0, 0};
    std::array<double, 3> amp_cos{0.0, 0.0, 0.0};
    std::array<double, 3> amp_sin{0.0, 0.0, 0.0};
    double c0 = 1.0;
    double c1 = 0.0;
    double omega = 1.0;
};

/// The family K_1..K_J of smooth transport-noise fields, each a truncated
/// Fourier series with time-dependent amplitudes.
struct TransportNoiseSpec {
    std::vector<std::vector<NoiseMode>> fields;  // one mode list per K_j

    int columns() const { return int(fields.size()); }
    bool empty() const;

    /// Collocation samples of K_j at time t.
    PhysicalField evaluate(int j, double t, const TorusGrid& grid) const;

    /// sup over a grid/time mesh of sum_j |K_j(t,x)|^2.
    double sampled_sup_sq(const TorusGrid& grid, double t_max, int t_samples) const;
    /// sup over the same mesh of max_i |d/dx_i K|.
    double sampled_grad_bound(const TorusGrid& grid, double t_max, int t_samples) const;
};

struct H3Report {
    double a_star = 0.0;    // sampled sup |K|^2
    double bound = 0.0;     // branch-appropriate admissible bound
    double margin = 0.0;    // bound - a_star
    double grad_bound = 0.0;
    bool pass = false;
    std::string branch;     // "p in [1,75/2]" or "p > 75/2"
};

/// Checks sup|K|^2 against nu/73 for p in [1,75/2] and (p nu - eps)/(2p(p-1))
/// beyond.
H3Report validate_h3(const TransportNoiseSpec& spec, const TorusGrid& grid,
                     double nu, double p, double eps, double t_max = 1.0,
                     int t_samples = 16);

}  // namespace tns
