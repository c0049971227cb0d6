#include "tamedns/transport_noise.hpp"

#include <cmath>
#include <stdexcept>

namespace tns {

bool TransportNoiseSpec::empty() const {
    for (const auto& f : fields)
        if (!f.empty()) return false;
    return true;
}

PhysicalField TransportNoiseSpec::evaluate(int j, double t, const TorusGrid& grid) const {
    const int n = grid.n();
    PhysicalField p;
    p.n = n;
    for (int a = 0; a < 3; ++a) p.v[a].assign(grid.size(), 0.0);
    if (j < 0 || j >= columns())
        throw std::out_of_range("TransportNoiseSpec::evaluate: column index");
    const double h = 6.283185307179586 / n;
    for (const auto& m : fields[j]) {
        double amp = m.c0 + m.c1 * std::sin(m.omega * t);
        int idx = 0;
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix, ++idx) {
                    double phase = h * (m.k[0] * ix + m.k[1] * iy + m.k[2] * iz);
                    double c = std::cos(phase), s = std::sin(phase);
                    for (int a = 0; a < 3; ++a)
                        p.v[a][idx] += amp * (m.amp_cos[a] * c + m.amp_sin[a] * s);
                }
    }
    return p;
}

double TransportNoiseSpec::sampled_sup_sq(const TorusGrid& grid, double t_max,
                                          int t_samples) const {
    double worst = 0.0;
    for (int it = 0; it <= t_samples; ++it) {
        double t = t_max * it / double(t_samples);
        std::vector<double> acc(grid.size(), 0.0);
        for (int j = 0; j < columns(); ++j) {
            PhysicalField p = evaluate(j, t, grid);
            for (int i = 0; i < grid.size(); ++i)
                acc[i] += p.v[0][i] * p.v[0][i] + p.v[1][i] * p.v[1][i] +
                          p.v[2][i] * p.v[2][i];
        }
        for (double a : acc) worst = std::max(worst, a);
    }
    return worst;
}

double TransportNoiseSpec::sampled_grad_bound(const TorusGrid& grid, double t_max,
                                              int t_samples) const {
    // |d/dx_i of a single Fourier mode| <= |amp| * |k_i|; sum over modes and
    // the time-amplitude envelope gives a cheap rigorous bound.
    double bound = 0.0;
    for (const auto& f : fields) {
        double per_field = 0.0;
        for (const auto& m : f) {
            double env = std::abs(m.c0) + std::abs(m.c1);
            double amp = 0.0;
            for (int a = 0; a < 3; ++a)
                amp += std::abs(m.amp_cos[a]) + std::abs(m.amp_sin[a]);
            int kmax = std::max({std::abs(m.k[0]), std::abs(m.k[1]), std::abs(m.k[2])});
            per_field += env * amp * kmax;
        }
        bound = std::max(bound, per_field);
    }
    (void)grid;
    (void)t_max;
    (void)t_samples;
    return bound;
}

H3Report validate_h3(const TransportNoiseSpec& spec, const TorusGrid& grid,
                     double nu, double p, double eps, double t_max, int t_samples) {
    if (p < 1.0 || eps <= 0.0 || nu <= 0.0)
        throw std::invalid_argument("validate_h3: require p >= 1, eps > 0, nu > 0");
    H3Report r;
    r.a_star = spec.sampled_sup_sq(grid, t_max, t_samples);
    if (p <= 37.5) {
        r.bound = nu / 73.0;
        r.branch = "p in [1,75/2]";
    } else {
        r.bound = (p * nu - eps) / (2.0 * p * (p - 1.0));
        r.branch = "p > 75/2";
    }
    r.grad_bound = spec.sampled_grad_bound(grid, t_max, t_samples);
    r.margin = r.bound - r.a_star;
    r.pass = r.a_star <= r.bound + 1e-12;
    return r;
}

}  // namespace tns
