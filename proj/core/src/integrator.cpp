#include "tamedns/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tamedns/parallel.hpp"

namespace tns {

int noise_columns(const CoefficientSet& coeffs) {
    int j = coeffs.transport.columns();
    if (coeffs.g.active()) j = std::max(j, coeffs.g.columns);
    return j;
}

namespace {

// Smooth cutoff of the nonlinearity above the H1 radius m_cut: 1 inside,
// linear ramp to 0 on [m_cut, 2 m_cut].
double nonlinearity_cutoff(const SpectralField& u, double m_cut) {
    if (m_cut <= 0.0) return 1.0;
    double r = std::sqrt(sobolev_norm_sq(u, 1));
    if (r <= m_cut) return 1.0;
    if (r >= 2.0 * m_cut) return 0.0;
    return 2.0 - r / m_cut;
}

SpectralField noise_action(const SpectralField& u, double t,
                           const std::vector<double>& dW,
                           const CoefficientSet& coeffs) {
    SpectralField acc(u.grid());
    if (!coeffs.transport.empty()) {
        std::vector<SpectralField> tcols = transport_noise_apply(coeffs.transport, t, u);
        for (std::size_t j = 0; j < tcols.size(); ++j) {
            tcols[j] *= dW[j];
            acc += tcols[j];
        }
    }
    if (coeffs.g.active()) {
        std::vector<SpectralField> gcols = coeffs.g.eval(t, u);
        for (std::size_t j = 0; j < gcols.size(); ++j) {
            gcols[j] *= dW[j];
            acc += gcols[j];
        }
    }
    return acc;
}

}  // namespace

SpectralField step(const SpectralField& u, double t, double dt,
                   const std::vector<double>& dW, const CoefficientSet& coeffs,
                   const SolverConfig& config, int step_index) {
    const TorusGrid& g = u.grid();
    if (int(dW.size()) < noise_columns(coeffs))
        throw std::invalid_argument("step: dW shorter than the noise column count");

    TamingProfile profile(config.taming_threshold, config.nu);
    double eta1 = coeffs.eta1(t);
    double eta2 = coeffs.eta2(t);
    double rho = nonlinearity_cutoff(u, config.m_cut);

    SpectralField nonlin = convection(u);
    nonlin += taming_term(u, profile);
    nonlin *= -eta2 * rho;
    if (coeffs.f.active()) {
        SpectralField forcing = leray_project(coeffs.f.eval(t, u));
        forcing *= rho;
        nonlin += forcing;
    }

    SpectralField next = u;
    if (config.scheme == SolverConfig::Scheme::ExplicitTamed) {
        SpectralField visc = stokes(u);
        visc *= dt * config.nu * eta1;
        next += visc;
    }
    nonlin *= dt;
    next += nonlin;
    next += noise_action(u, t, dW, coeffs);

    if (config.scheme == SolverConfig::Scheme::SemiImplicit) {
        double m = dt * config.nu * eta1;
        for (int a = 0; a < 3; ++a)
            for (int idx = 0; idx < g.size(); ++idx)
                next.at(a, idx) /= 1.0 + m * g.k_sq(idx);
    }

    next.dealias();
    if (!next.finite())
        throw std::runtime_error("blow-up at step " + std::to_string(step_index));
    return leray_project(next);
}

namespace {

void record_norms(Trajectory& traj, const SpectralField& u, double t, double dt,
                  bool accumulate) {
    double n0 = sobolev_norm_sq(u, 0);
    double n1 = sobolev_norm_sq(u, 1);
    double n2 = sobolev_norm_sq(u, 2);
    traj.times.push_back(t);
    traj.h0.push_back(std::sqrt(n0));
    traj.h1.push_back(std::sqrt(n1));
    traj.h2.push_back(std::sqrt(n2));
    traj.cum_h2.push_back(traj.diss_h2);
    traj.cum_ug.push_back(traj.diss_ug);
    if (accumulate) {
        traj.diss_h2 += n2 * dt;
        traj.diss_ug += mixed_grad_norm_sq(u) * dt;
    }
}

}  // namespace

Trajectory simulate(const SpectralField& u0, const CoefficientSet& coeffs,
                    const SolverConfig& config, const WienerPath& path) {
    Trajectory traj;
    SpectralField u = leray_project(u0);
    const double dt = path.dt();
    const int J = noise_columns(coeffs);
    std::vector<double> dW(std::max(J, 1), 0.0);

    record_norms(traj, u, 0.0, dt, true);
    if (config.record_stride > 0) {
        traj.snapshot_steps.push_back(0);
        traj.snapshots.push_back(u);
    }

    for (int n = 0; n < path.n_steps(); ++n) {
        double t = n * dt;
        for (int j = 0; j < J; ++j) dW[j] = path.increment(n, j);
        try {
            u = step(u, t, dt, dW, coeffs, config, n);
        } catch (const std::runtime_error&) {
            traj.blown_up = true;
            traj.blowup_step = n;
            return traj;
        }
        bool last = (n + 1 == path.n_steps());
        record_norms(traj, u, (n + 1) * dt, dt, !last);
        if (config.record_stride > 0 &&
            ((n + 1) % config.record_stride == 0 || last)) {
            traj.snapshot_steps.push_back(n + 1);
            traj.snapshots.push_back(u);
        }
    }
    return traj;
}

PairResult simulate_pair(const SpectralField& u0_a, const SpectralField& u0_b,
                         const CoefficientSet& coeffs_a,
                         const CoefficientSet& coeffs_b,
                         const SolverConfig& config, const WienerPath& path) {
    PairResult out;
    SpectralField ua = leray_project(u0_a);
    SpectralField ub = leray_project(u0_b);
    const double dt = path.dt();
    const int J = std::max(noise_columns(coeffs_a), noise_columns(coeffs_b));
    std::vector<double> dW(std::max(J, 1), 0.0);

    auto record = [&](double t, bool accumulate) {
        record_norms(out.a, ua, t, dt, accumulate);
        record_norms(out.b, ub, t, dt, accumulate);
        SpectralField d = ua;
        d -= ub;
        out.dist_h0.push_back(std::sqrt(sobolev_norm_sq(d, 0)));
        out.dist_h1.push_back(std::sqrt(sobolev_norm_sq(d, 1)));
    };
    record(0.0, true);

    for (int n = 0; n < path.n_steps(); ++n) {
        double t = n * dt;
        for (int j = 0; j < J; ++j) dW[j] = path.increment(n, j);
        try {
            ua = step(ua, t, dt, dW, coeffs_a, config, n);
            ub = step(ub, t, dt, dW, coeffs_b, config, n);
        } catch (const std::runtime_error&) {
            out.a.blown_up = out.b.blown_up = true;
            out.a.blowup_step = out.b.blowup_step = n;
            return out;
        }
        record((n + 1) * dt, n + 1 != path.n_steps());
    }
    return out;
}

std::optional<double> tau_r(const Trajectory& traj, double R) {
    if (R <= 0.0) throw std::invalid_argument("tau_r: R must be > 0");
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        if (traj.h1[i] > R) return traj.times[i];
    return std::nullopt;
}

std::optional<double> tau_beta(const PairResult& pair, double beta, int m) {
    if (m != 0 && m != 1) throw std::invalid_argument("tau_beta: m must be 0 or 1");
    const std::vector<double>& d = (m == 0) ? pair.dist_h0 : pair.dist_h1;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > beta) return pair.a.times[i];
    return std::nullopt;
}

MomentEstimate moment_estimator(const std::vector<Trajectory>& ensemble, double p) {
    if (ensemble.empty())
        throw std::invalid_argument("moment_estimator: empty ensemble");
    const int K = int(ensemble.size());
    std::vector<double> sup_vals(K), diss_vals(K);
    for (int k = 0; k < K; ++k) {
        const Trajectory& tr = ensemble[k];
        double sup = 0.0, diss = 0.0;
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            double h1sq = tr.h1[i] * tr.h1[i];
            sup = std::max(sup, std::pow(h1sq, p));
            if (i + 1 < tr.times.size()) {
                double dt = tr.times[i + 1] - tr.times[i];
                double weight = std::pow(h1sq, p - 1.0);
                double h2sq = tr.h2[i] * tr.h2[i];
                diss += weight * h2sq * dt;
            }
        }
        // the mixed-gradient part is tracked only as the p=1 accumulator
        if (p == 1.0) diss += tr.diss_ug;
        sup_vals[k] = sup;
        diss_vals[k] = diss;
    }

    auto mean_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / double(v.size());
    };
    auto jackknife_se = [&](const std::vector<double>& v) {
        if (v.size() < 2) return 0.0;
        double total = 0.0;
        for (double x : v) total += x;
        const double n = double(v.size());
        double mean = total / n;
        double acc = 0.0;
        for (double x : v) {
            double loo = (total - x) / (n - 1.0);
            acc += (loo - mean) * (loo - mean);
        }
        return std::sqrt((n - 1.0) / n * acc);
    };

    MomentEstimate out;
    out.paths = K;
    out.sup_moment = mean_of(sup_vals);
    out.sup_se = jackknife_se(sup_vals);
    out.diss_moment = mean_of(diss_vals);
    out.diss_se = jackknife_se(diss_vals);
    return out;
}

ContractionCurve uniqueness_probe(const SpectralField& u0_a,
                                  const SpectralField& u0_b,
                                  const CoefficientSet& coeffs,
                                  const SolverConfig& config,
                                  const WienerPath& path, double beta,
                                  int n_ladder, int n_paths) {
    if (beta <= 0.0 || beta > 1.0)
        throw std::invalid_argument("uniqueness_probe: need 0 < beta <= 1");
    SpectralField dir = u0_b;
    dir -= u0_a;
    double d0 = std::sqrt(sobolev_norm_sq(dir, 0));
    if (d0 >= beta)
        throw std::invalid_argument("uniqueness_probe: initial distance >= beta");

    ContractionCurve curve;
    curve.beta = beta;
    curve.radius = config.stop_radius;
    double delta = d0;
    for (int r = 0; r < n_ladder; ++r) {
        SpectralField u0_pert = dir;
        if (d0 > 0.0) u0_pert *= delta / d0;
        u0_pert += u0_a;

        std::vector<double> sups(n_paths, 0.0);
        parallel_for(n_paths, [&](int s) {
            WienerPath p(path.seed() + 0x9E3779B97F4A7C15ull * (s + 1), path.dt(),
                         path.n_steps(), path.dims());
            PairResult pair = simulate_pair(u0_a, u0_pert, coeffs, coeffs, config, p);
            auto stop_r = tau_r(pair.a, config.stop_radius);
            auto stop_r2 = tau_r(pair.b, config.stop_radius);
            auto stop_b = tau_beta(pair, beta, 0);
            double horizon = pair.a.final_time();
            if (stop_r) horizon = std::min(horizon, *stop_r);
            if (stop_r2) horizon = std::min(horizon, *stop_r2);
            if (stop_b) horizon = std::min(horizon, *stop_b);
            double sup = 0.0;
            for (std::size_t i = 0; i < pair.a.times.size(); ++i) {
                if (pair.a.times[i] > horizon) break;
                sup = std::max(sup, pair.dist_h0[i] * pair.dist_h0[i]);
            }
            sups[s] = sup;
        });
        double acc = 0.0;
        for (double v : sups) acc += v;
        curve.deltas.push_back(delta);
        curve.sup_dist.push_back(acc / double(n_paths));
        delta *= 0.5;
    }
    return curve;
}

}  // namespace tns
