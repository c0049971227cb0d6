#include "tamedns/operators.hpp"

#include <cmath>

#include "tamedns/transform.hpp"

namespace tns {
namespace {

/// Physical-space samples of all nine partial derivatives d_j u_a of a
/// dealiased field.
struct GradientSamples {
    std::vector<double> d[3][3];  // d[a][j] = samples of d_j u_a
};

GradientSamples gradients(const SpectralField& u) {
    const TorusGrid& g = u.grid();
    GradientSamples out;
    SpectralField tmp(g);
    for (int a = 0; a < 3; ++a)
        for (int j = 0; j < 3; ++j) {
            for (int idx = 0; idx < g.size(); ++idx) {
                auto k = g.wavevector(idx);
                tmp.at(0, idx) = cplx(0.0, double(k[j])) * u.at(a, idx);
            }
            out.d[a][j] = to_physical_component(tmp, 0);
        }
    return out;
}

}  // namespace

SpectralField stokes(const SpectralField& u) {
    SpectralField out = u;
    const TorusGrid& g = u.grid();
    for (int a = 0; a < 3; ++a)
        for (int idx = 0; idx < g.size(); ++idx) out.at(a, idx) *= -g.k_sq(idx);
    return out;
}

SpectralField convection(const SpectralField& u) {
    SpectralField in = u;
    in.dealias();
    PhysicalField up = to_physical(in);
    GradientSamples gr = gradients(in);
    const int n3 = u.grid().size();
    PhysicalField w;
    w.n = up.n;
    for (int a = 0; a < 3; ++a) {
        w.v[a].resize(n3);
        for (int i = 0; i < n3; ++i)
            w.v[a][i] = up.v[0][i] * gr.d[a][0][i] + up.v[1][i] * gr.d[a][1][i] +
                        up.v[2][i] * gr.d[a][2][i];
    }
    SpectralField out = to_spectral(w, u.grid());
    out.dealias();
    return leray_project(out);
}

SpectralField taming_term(const SpectralField& u, const TamingProfile& profile) {
    PhysicalField up = to_physical(u);
    const int n3 = u.grid().size();
    PhysicalField w;
    w.n = up.n;
    for (int a = 0; a < 3; ++a) w.v[a].resize(n3);
    for (int i = 0; i < n3; ++i) {
        double sq = up.v[0][i] * up.v[0][i] + up.v[1][i] * up.v[1][i] +
                    up.v[2][i] * up.v[2][i];
        double psi = profile.psi(sq);
        for (int a = 0; a < 3; ++a) w.v[a][i] = psi * up.v[a][i];
    }
    SpectralField out = to_spectral(w, u.grid());
    out.dealias();
    return leray_project(out);
}

SpectralField tamed_drift(const SpectralField& u, const TamingProfile& profile,
                          double eta1, double eta2, const SpectralField& forcing) {
    SpectralField out = stokes(u);
    out *= eta1;
    SpectralField nl = convection(u);
    nl += taming_term(u, profile);
    nl *= -eta2;
    out += nl;
    out += leray_project(forcing);
    return out;
}

std::vector<SpectralField> transport_noise_apply(const TransportNoiseSpec& spec,
                                                 double t, const SpectralField& u) {
    const TorusGrid& g = u.grid();
    SpectralField in = u;
    in.dealias();
    GradientSamples gr = gradients(in);
    const int n3 = g.size();
    std::vector<SpectralField> cols;
    cols.reserve(spec.columns());
    for (int j = 0; j < spec.columns(); ++j) {
        PhysicalField kj = spec.evaluate(j, t, g);
        PhysicalField w;
        w.n = kj.n;
        for (int a = 0; a < 3; ++a) {
            w.v[a].resize(n3);
            for (int i = 0; i < n3; ++i)
                w.v[a][i] = kj.v[0][i] * gr.d[a][0][i] + kj.v[1][i] * gr.d[a][1][i] +
                            kj.v[2][i] * gr.d[a][2][i];
        }
        SpectralField out = to_spectral(w, g);
        out.dealias();
        cols.push_back(leray_project(out));
    }
    return cols;
}

}  // namespace tns
