#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace tns {
namespace detail {

template <class F, class V, class NormFn>
V simpson_rec(const F& f, double a, double b, const V& fa, const V& fm, const V& fb,
              const V& whole, double tol, int depth, const NormFn& norm, double scale) {
    const double m = 0.5 * (a + b);
    const double h = b - a;
    V fl = f(0.5 * (a + m));
    V fr = f(0.5 * (m + b));
    auto simpson = [h](const V& x, const V& y, const V& z) {
        V out = x;
        V y4 = y;
        y4 *= 4.0;
        out += y4;
        out += z;
        out *= h / 12.0;
        return out;
    };
    V left = simpson(fa, fl, fm);
    V right = simpson(fm, fr, fb);
    V combined = left;
    combined += right;
    V err = combined;
    err -= whole;
    if (depth <= 0 || norm(err) <= 15.0 * tol * (scale + norm(combined))) {
        V corr = err;
        corr *= 1.0 / 15.0;
        combined += corr;
        return combined;
    }
    V lv = simpson_rec(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1, norm, scale);
    V rv = simpson_rec(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1, norm, scale);
    lv += rv;
    return lv;
}

}  // namespace detail

/// Adaptive Simpson for values supporting +=, -=, *= double; norm(V) supplies
/// the error metric.  rel_tol is measured against the whole-integral scale.
template <class F, class NormFn>
auto integrate_vector(const F& f, double a, double b, const NormFn& norm,
                      double rel_tol = 1e-9, int max_depth = 30) {
    using V = decltype(f(a));
    if (!(b > a)) throw std::invalid_argument("integrate_vector: need b > a");
    V fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    V whole = fa;
    {
        V y4 = fm;
        y4 *= 4.0;
        whole += y4;
        whole += fb;
        whole *= (b - a) / 6.0;
    }
    double scale = norm(whole);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, rel_tol, max_depth, norm,
                               scale);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-9, int max_depth = 48) {
    return integrate_vector(f, a, b, [](double v) { return std::fabs(v); }, rel_tol,
                            max_depth);
}

}  // namespace tns
