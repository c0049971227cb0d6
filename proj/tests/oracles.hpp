#pragma once

// Brute-force spectral-space oracles shared by the unit and acceptance
// suites.  Deliberately O(n^6): direct convolution sums with no FFT and no
// code shared with the operators under test.

#include <cmath>
#include <vector>

#include "tamedns/operators.hpp"

namespace oracles {

using tns::cplx;
using tns::NoiseMode;
using tns::SpectralField;
using tns::TorusGrid;

//   w_a(k) = sum_{p+q=k} u_j(p) (i q_j) u_a(q)  over retained modes
inline SpectralField convection_oracle(const SpectralField& u) {
    const TorusGrid& g = u.grid();
    const int half = g.n() / 2;
    std::vector<int> retained;
    for (int idx = 0; idx < g.size(); ++idx)
        if (g.dealiased(idx)) retained.push_back(idx);

    SpectralField w(g);
    for (int pi : retained) {
        auto p = g.wavevector(pi);
        for (int qi : retained) {
            auto q = g.wavevector(qi);
            int k0 = p[0] + q[0], k1 = p[1] + q[1], k2 = p[2] + q[2];
            if (k0 < -half || k0 >= half || k1 < -half || k1 >= half ||
                k2 < -half || k2 >= half)
                continue;
            int ki = g.index(k0, k1, k2);
            cplx dot = u.at(0, pi) * cplx(0.0, double(q[0])) +
                       u.at(1, pi) * cplx(0.0, double(q[1])) +
                       u.at(2, pi) * cplx(0.0, double(q[2]));
            for (int a = 0; a < 3; ++a) w.at(a, ki) += dot * u.at(a, qi);
        }
    }
    w.dealias();
    return tns::leray_project(w);
}

/// Spectral coefficients of one transport-noise field at time t.
inline SpectralField noise_field_spectrum(const std::vector<NoiseMode>& modes,
                                          double t, const TorusGrid& g) {
    SpectralField K(g);
    for (const auto& m : modes) {
        double amp = m.c0 + m.c1 * std::sin(m.omega * t);
        int pi = g.index(m.k[0], m.k[1], m.k[2]);
        int mi = g.index(-m.k[0], -m.k[1], -m.k[2]);
        for (int a = 0; a < 3; ++a) {
            K.at(a, pi) += amp * cplx(0.5 * m.amp_cos[a], -0.5 * m.amp_sin[a]);
            if (mi != pi)
                K.at(a, mi) += amp * cplx(0.5 * m.amp_cos[a], 0.5 * m.amp_sin[a]);
        }
    }
    return K;
}

inline SpectralField transport_oracle(const std::vector<NoiseMode>& modes, double t,
                                      const SpectralField& u) {
    const TorusGrid& g = u.grid();
    const int half = g.n() / 2;
    SpectralField K = noise_field_spectrum(modes, t, g);
    SpectralField w(g);
    for (int pi = 0; pi < g.size(); ++pi) {
        bool active = false;
        for (int a = 0; a < 3; ++a)
            if (K.at(a, pi) != cplx(0.0)) active = true;
        if (!active) continue;
        auto p = g.wavevector(pi);
        for (int qi = 0; qi < g.size(); ++qi) {
            if (!g.dealiased(qi)) continue;
            auto q = g.wavevector(qi);
            int k0 = p[0] + q[0], k1 = p[1] + q[1], k2 = p[2] + q[2];
            if (k0 < -half || k0 >= half || k1 < -half || k1 >= half ||
                k2 < -half || k2 >= half)
                continue;
            int ki = g.index(k0, k1, k2);
            cplx dot = K.at(0, pi) * cplx(0.0, double(q[0])) +
                       K.at(1, pi) * cplx(0.0, double(q[1])) +
                       K.at(2, pi) * cplx(0.0, double(q[2]));
            for (int a = 0; a < 3; ++a) w.at(a, ki) += dot * u.at(a, qi);
        }
    }
    w.dealias();
    return tns::leray_project(w);
}

inline double rel_dist(const SpectralField& a, const SpectralField& b) {
    SpectralField d = a;
    d -= b;
    double ref = std::sqrt(tns::sobolev_norm_sq(a, 0)) +
                 std::sqrt(tns::sobolev_norm_sq(b, 0));
    return ref == 0.0 ? 0.0 : std::sqrt(tns::sobolev_norm_sq(d, 0)) / ref;
}

}  // namespace oracles
