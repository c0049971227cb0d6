#include "tamedns/coefficients.hpp"

#include <cmath>
#include <stdexcept>

#include "tamedns/quadrature.hpp"

namespace tns {

double TimeFn::operator()(double t) const {
    return base + amp * std::sin(omega * t + phase);
}

namespace {

// Scalar Osgood map: x (1 - ln|x|) below the kink, linear with the matching
// slope above.  Odd and monotone, with derivative -ln|x| blowing up at 0 --
// the non-Lipschitz point that drives the Osgood uniqueness experiments.
double fang_zhang(double x, double delta) {
    double ax = std::fabs(x);
    if (ax == 0.0) return 0.0;
    if (ax <= delta) return x * (1.0 - std::log(ax));
    return x * (1.0 - std::log(delta));
}

SpectralField osgood_map(const SpectralField& u, double delta) {
    SpectralField out(u.grid());
    const TorusGrid& g = u.grid();
    for (int a = 0; a < 3; ++a)
        for (int idx = 0; idx < g.size(); ++idx) {
            if (!g.dealiased(idx)) continue;
            const cplx& z = u.at(a, idx);
            out.at(a, idx) = cplx(fang_zhang(z.real(), delta),
                                  fang_zhang(z.imag(), delta));
        }
    return leray_project(out);
}

}  // namespace

SpectralField DriftFamily::eval(double t, const SpectralField& u) const {
    switch (kind) {
        case Kind::Zero:
            return SpectralField(u.grid());
        case Kind::Linear: {
            SpectralField out = u;
            out *= time(t) * scale;
            return out;
        }
        case Kind::Osgood: {
            SpectralField out = osgood_map(u, fz_delta);
            out *= time(t) * scale;
            return out;
        }
        case Kind::ConstantField: {
            SpectralField out = *base_field;
            out *= time(t) * scale;
            return out;
        }
    }
    throw std::logic_error("DriftFamily::eval: unreachable");
}

SpectralField DriftFamily::averaged(const SpectralField& u) const {
    DriftFamily avg = *this;
    avg.time = TimeFn{time.mean(), 0.0, 1.0, 0.0};
    return avg.eval(0.0, u);
}

double DiffusionFamily::time_factor(double t) const {
    switch (time_kind) {
        case TimeKind::Const:
            return time.base;
        case TimeKind::Sin:
            return time(t);
        case TimeKind::Decay:
            return time.base + time.amp / (1.0 + t);
    }
    throw std::logic_error("DiffusionFamily::time_factor: unreachable");
}

std::vector<SpectralField> DiffusionFamily::eval(double t, const SpectralField& u) const {
    std::vector<SpectralField> cols;
    cols.reserve(columns);
    const TorusGrid& g = u.grid();
    double s = time_factor(t);
    for (int j = 0; j < columns; ++j) {
        SpectralField col(g);
        if (kind == Kind::DiagLow) {
            // diagonal multiplier on the low-mode band, strength tapering in j
            double w = s * gamma / double(j + 1);
            for (int a = 0; a < 3; ++a)
                for (int idx = 0; idx < g.size(); ++idx)
                    if (g.k_sq(idx) > 0.0 && g.k_sq(idx) <= mode_cut_sq)
                        col.at(a, idx) = w * u.at(a, idx);
        } else if (kind == Kind::AdditiveLow) {
            // fixed low-mode field per column, independent of u
            double w = s * gamma / double(j + 1);
            int axis = j % 3;
            int other = (axis + 1) % 3;
            std::array<int, 3> k{0, 0, 0};
            k[other] = 1;
            int idx = g.index(k[0], k[1], k[2]);
            int midx = g.index(-k[0], -k[1], -k[2]);
            col.at(axis, idx) = 0.5 * w;
            col.at(axis, midx) = 0.5 * w;
        }
        cols.push_back(std::move(col));
    }
    return cols;
}

std::vector<SpectralField> DiffusionFamily::averaged(const SpectralField& u) const {
    DiffusionFamily avg = *this;
    avg.time_kind = TimeKind::Const;
    // mean-square minimiser of the (H5) distance is the mean time factor
    return avg.eval(0.0, u);
}

CoefficientSet oscillate(const CoefficientSet& set, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("oscillate: epsilon must be > 0");
    CoefficientSet out = set;
    out.eta1.omega /= epsilon;
    out.eta2.omega /= epsilon;
    out.f.time.omega /= epsilon;
    out.g.time.omega /= epsilon;
    for (auto& field : out.transport.fields)
        for (auto& m : field) m.omega /= epsilon;
    return out;
}

EtaAverage empirical_average_eta(const std::function<double(double)>& eta,
                                 double t0, double T) {
    if (T <= 0.0) throw std::invalid_argument("empirical_average_eta: T must be > 0");
    auto window_mean = [&eta](double a, double w) {
        return integrate(eta, a, a + w, 1e-9) / w;
    };
    EtaAverage out;
    out.mean = window_mean(t0, T);
    double big = std::max(1e4, 100.0 * T);
    out.eta_star = window_mean(0.0, big);
    for (int i = 0; i <= 8; ++i) {
        double start = t0 + i * T / 3.0;
        out.rate_bound = std::max(out.rate_bound,
                                  std::fabs(window_mean(start, T) - out.eta_star));
    }
    return out;
}

FieldAverage empirical_average_f(
    const std::function<SpectralField(double, const SpectralField&)>& f,
    const SpectralField& u, double t0, double T, double M,
    const SpectralField* analytic_avg) {
    if (T <= 0.0) throw std::invalid_argument("empirical_average_f: T must be > 0");
    auto h0 = [](const SpectralField& v) { return std::sqrt(sobolev_norm_sq(v, 0)); };
    auto integrand = [&](double s) { return f(s, u); };
    SpectralField mean = integrate_vector(integrand, t0, t0 + T, h0, 1e-9);
    mean *= 1.0 / T;
    FieldAverage out{mean, 0.0};
    double denom = std::sqrt(sobolev_norm_sq(u, 0)) + M;
    if (analytic_avg) {
        SpectralField diff = mean;
        diff -= *analytic_avg;
        out.rate_estimate = h0(diff) / denom;
    } else {
        SpectralField m1 = integrate_vector(integrand, t0, t0 + 0.5 * T, h0, 1e-9);
        m1 *= 2.0 / T;
        SpectralField m2 = integrate_vector(integrand, t0 + 0.5 * T, t0 + T, h0, 1e-9);
        m2 *= 2.0 / T;
        m1 -= m2;
        out.rate_estimate = h0(m1) / denom;
    }
    return out;
}

namespace {

double hs_dist_sq(const std::vector<SpectralField>& a,
                  const std::vector<SpectralField>& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        SpectralField d = a[j];
        d -= b[j];
        acc += sobolev_norm_sq(d, 0);
    }
    return acc;
}

}  // namespace

ColumnsAverage empirical_average_g(
    const std::function<std::vector<SpectralField>(double, const SpectralField&)>& g,
    const SpectralField& u, double t0, double T, double M,
    const std::vector<SpectralField>* analytic_avg) {
    if (T <= 0.0) throw std::invalid_argument("empirical_average_g: T must be > 0");
    std::vector<SpectralField> probe = g(t0, u);
    const int J = int(probe.size());
    ColumnsAverage out;
    if (J == 0) return out;

    out.mean.assign(J, SpectralField(u.grid()));
    for (int j = 0; j < J; ++j) {
        auto integrand = [&, j](double s) { return g(s, u)[j]; };
        auto h0 = [](const SpectralField& v) { return std::sqrt(sobolev_norm_sq(v, 0)); };
        SpectralField m = integrate_vector(integrand, t0, t0 + T, h0, 1e-8);
        m *= 1.0 / T;
        out.mean[j] = std::move(m);
    }
    const std::vector<SpectralField>& ref = analytic_avg ? *analytic_avg : out.mean;
    auto dist = [&](double s) { return hs_dist_sq(g(s, u), ref); };
    double denom = sobolev_norm_sq(u, 0) + M;
    out.rate_estimate = integrate(dist, t0, t0 + T, 1e-8) / (T * denom);
    return out;
}

MonotonicityReport verify_weak_monotonicity(
    const std::function<SpectralField(double, const SpectralField&)>& f,
    const ModulusOfContinuity& mod, double c, double zeta,
    const std::vector<std::pair<SpectralField, SpectralField>>& corpus,
    bool squared_form, double t) {
    MonotonicityReport rep;
    for (const auto& [u, v] : corpus) {
        SpectralField d = u;
        d -= v;
        double dist_sq = sobolev_norm_sq(d, 0);
        if (std::sqrt(dist_sq) > zeta) continue;
        SpectralField fd = f(t, u);
        fd -= f(t, v);
        double lhs;
        if (squared_form) {
            lhs = sobolev_norm_sq(fd, 0);
        } else {
            lhs = inner_product(d, fd, 0);
        }
        double rhs = c * mod(dist_sq);
        ++rep.pairs;
        double margin = lhs - rhs;
        rep.worst_margin = std::max(rep.worst_margin, margin);
        if (margin > 1e-10 * (1.0 + std::fabs(rhs))) ++rep.violations;
    }
    return rep;
}

GrowthReport verify_growth(const CoefficientSet& set,
                           const std::vector<SpectralField>& corpus) {
    GrowthReport rep;
    for (const auto& u : corpus) {
        for (double t : {0.0, 0.7, 2.3}) {
            double usq = sobolev_norm_sq(u, 0);
            double lhs = 0.0;
            if (set.f.active())
                lhs = inner_product(u, set.f.eval(t, u), 0);
            if (set.g.active()) {
                double gsq = 0.0;
                for (const auto& col : set.g.eval(t, u)) gsq += sobolev_norm_sq(col, 0);
                lhs = std::max(lhs, gsq);
            }
            double rhs = set.growth_c * usq + set.growth_m;
            ++rep.samples;
            rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
            if (lhs > rhs * (1.0 + 1e-10)) ++rep.violations;
        }
    }
    return rep;
}

}  // namespace tns
