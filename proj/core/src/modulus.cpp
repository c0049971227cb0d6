#include "tamedns/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tamedns/quadrature.hpp"

namespace tns {

ModulusOfContinuity ModulusOfContinuity::linear() {
    ModulusOfContinuity m;
    m.a = [](double r) { return r; };
    m.name = "linear";
    return m;
}

ModulusOfContinuity ModulusOfContinuity::log_osgood() {
    ModulusOfContinuity m;
    // r(1 - ln r) is increasing and concave below 1/e; extended linearly with
    // the matching slope so the modulus stays increasing and concave for all r.
    m.a = [](double r) {
        constexpr double r0 = 0.36787944117144233;  // 1/e
        if (r <= 0.0) return 0.0;
        if (r >= r0) return 2.0 * r0 + (r - r0);
        return r * (1.0 - std::log(r));
    };
    m.name = "log_osgood";
    return m;
}

ModulusCheck check_modulus(const ModulusOfContinuity& m) {
    ModulusCheck out;
    out.zero_at_origin = std::fabs(m(0.0)) < 1e-14;

    // mesh of (0,1): geometric + uniform points
    std::vector<double> mesh;
    for (int i = 1; i <= 200; ++i) mesh.push_back(i / 201.0);
    for (int e = 2; e <= 10; ++e) mesh.push_back(std::pow(10.0, -e));
    std::sort(mesh.begin(), mesh.end());

    out.nondecreasing = true;
    for (std::size_t i = 1; i < mesh.size(); ++i)
        if (m(mesh[i]) < m(mesh[i - 1]) - 1e-14) out.nondecreasing = false;

    out.concave = true;
    for (std::size_t i = 1; i + 1 < mesh.size(); ++i) {
        double lam = (mesh[i] - mesh[i - 1]) / (mesh[i + 1] - mesh[i - 1]);
        double chord = (1.0 - lam) * m(mesh[i - 1]) + lam * m(mesh[i + 1]);
        if (m(mesh[i]) < chord - 1e-12) out.concave = false;
    }

    // int_delta^{1/2} dr/A(r) must keep growing as delta shrinks
    double prev = 0.0;
    out.osgood_divergent = true;
    for (int e = 2; e <= 10; e += 2) {
        double delta = std::pow(10.0, -e);
        double val = integrate([&m](double r) { return 1.0 / m.a(r); }, delta, 0.5,
                               1e-8);
        out.divergence_samples.push_back(val);
        if (val <= prev + 1e-6) out.osgood_divergent = false;
        prev = val;
    }
    return out;
}

double osgood_control(const ModulusOfContinuity& m, double iota, double t) {
    if (iota <= 0.0) throw std::invalid_argument("osgood_control: iota must be > 0");
    if (t < iota) throw std::invalid_argument("osgood_control: need t >= iota");
    if (t == iota) return 0.0;
    return integrate([&m](double s) { return 1.0 / (m.a(s) + s); }, iota, t, 1e-9);
}

}  // namespace tns
