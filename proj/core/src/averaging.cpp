#include "tamedns/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tamedns/parallel.hpp"
#include "tamedns/quadrature.hpp"

namespace tns {

double FreezeSchedule::block_start(double t) const {
    double n = std::floor(t / d + 1e-12);
    return n * d;
}

std::vector<double> freeze_series(const std::vector<double>& times,
                                  const std::vector<double>& values,
                                  const FreezeSchedule& schedule) {
    if (times.size() != values.size())
        throw std::invalid_argument("freeze_series: times/values size mismatch");
    std::vector<double> out(values.size());
    std::size_t anchor = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double bs = schedule.block_start(times[i]);
        while (anchor + 1 < times.size() && times[anchor + 1] <= bs + 1e-12 &&
               anchor + 1 <= i)
            ++anchor;
        out[i] = values[anchor];
    }
    return out;
}

Trajectory freeze(const Trajectory& traj, const FreezeSchedule& schedule) {
    Trajectory out = traj;
    out.h0 = freeze_series(traj.times, traj.h0, schedule);
    out.h1 = freeze_series(traj.times, traj.h1, schedule);
    out.h2 = freeze_series(traj.times, traj.h2, schedule);
    bool dense = traj.snapshots.size() == traj.times.size();
    if (dense) {
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            double bs = schedule.block_start(traj.times[i]);
            std::size_t j = i;
            while (j > 0 && traj.times[j] > bs + 1e-12) --j;
            out.snapshots[i] = traj.snapshots[j];
        }
    }
    return out;
}

double freeze_error(const Trajectory& traj, const FreezeSchedule& schedule, int m) {
    if (m != 0 && m != 1)
        throw std::invalid_argument("freeze_error: m must be 0 or 1");
    if (traj.snapshots.size() != traj.times.size())
        throw std::invalid_argument(
            "freeze_error: needs per-step snapshots (record_stride = 1)");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < traj.times.size(); ++i) {
        double dt = traj.times[i + 1] - traj.times[i];
        double bs = schedule.block_start(traj.times[i]);
        std::size_t j = i;
        while (j > 0 && traj.times[j] > bs + 1e-12) --j;
        SpectralField d = traj.snapshots[i];
        d -= traj.snapshots[j];
        acc += sobolev_norm_sq(d, m) * dt;
    }
    return acc;
}

namespace {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ull;

}  // namespace

FreezeRateReport freeze_rate_study(const SpectralField& u0,
                                   const CoefficientSet& coeffs,
                                   const SolverConfig& config, double T,
                                   const std::vector<double>& d_ladder,
                                   int n_paths, std::uint64_t seed, int m) {
    SolverConfig cfg = config;
    cfg.record_stride = 1;
    int n_steps = int(std::llround(T / cfg.dt));
    int J = std::max(noise_columns(coeffs), 1);

    std::vector<Trajectory> runs(n_paths);
    parallel_for(n_paths, [&](int s) {
        WienerPath path(seed + kSeedStride * (s + 1), cfg.dt, n_steps, J);
        runs[s] = simulate(u0, coeffs, cfg, path);
    });

    FreezeRateReport rep;
    for (double d : d_ladder) {
        FreezeSchedule sched(d);
        double acc = 0.0;
        int used = 0;
        for (const Trajectory& tr : runs) {
            if (tr.blown_up) continue;
            acc += freeze_error(tr, sched, m);
            ++used;
        }
        rep.points.push_back({d, used ? acc / used : 0.0});
    }
    std::vector<double> xs, ys;
    for (const auto& p : rep.points) {
        xs.push_back(p.d);
        ys.push_back(p.error);
    }
    rep.fitted_exponent = loglog_slope(xs, ys);
    return rep;
}

namespace {

void check_oracle_convergence(const TimeFn& fn, const std::string& label) {
    if (fn.constant()) return;
    auto f = [&fn](double t) { return fn(t); };
    double r1 = empirical_average_eta(f, 0.0, 10.0).rate_bound;
    double r2 = empirical_average_eta(f, 0.0, 40.0).rate_bound;
    if (r2 >= r1)
        throw std::runtime_error("build_averaged: averaging oracle for " + label +
                                 " does not converge (rate " + std::to_string(r1) +
                                 " -> " + std::to_string(r2) + ")");
}

}  // namespace

AveragedSet build_averaged(const CoefficientSet& set, bool verify) {
    AveragedSet out;
    out.set = set;

    if (verify) {
        check_oracle_convergence(set.eta1, "eta1");
        check_oracle_convergence(set.eta2, "eta2");
        check_oracle_convergence(set.f.time, "f");
        if (set.g.time_kind == DiffusionFamily::TimeKind::Sin)
            check_oracle_convergence(set.g.time, "g");
    }

    auto avg_time = [](TimeFn& fn, std::vector<std::string>& tags,
                       const std::string& label) {
        if (fn.constant()) {
            tags.push_back(label + ": unchanged (time-independent)");
        } else {
            fn = TimeFn{fn.mean(), 0.0, 1.0, 0.0};
            tags.push_back(label + ": analytic sine average");
        }
    };
    avg_time(out.set.eta1, out.provenance, "eta1");
    avg_time(out.set.eta2, out.provenance, "eta2");
    avg_time(out.set.f.time, out.provenance, "f");

    switch (out.set.g.time_kind) {
        case DiffusionFamily::TimeKind::Const:
            out.provenance.push_back("g: unchanged (time-independent)");
            break;
        case DiffusionFamily::TimeKind::Sin:
            out.set.g.time_kind = DiffusionFamily::TimeKind::Const;
            out.set.g.time = TimeFn{out.set.g.time.mean(), 0.0, 1.0, 0.0};
            out.provenance.push_back("g: analytic sine average");
            break;
        case DiffusionFamily::TimeKind::Decay:
            out.set.g.time_kind = DiffusionFamily::TimeKind::Const;
            out.set.g.time = TimeFn{out.set.g.time.base, 0.0, 1.0, 0.0};
            out.provenance.push_back("g: long-time limit of the decay envelope");
            break;
    }

    bool k_oscillatory = false;
    for (auto& field : out.set.transport.fields)
        for (auto& mode : field)
            if (mode.c1 != 0.0) {
                mode.c1 = 0.0;
                k_oscillatory = true;
            }
    out.provenance.push_back(k_oscillatory ? "K: analytic sine average"
                                           : "K: unchanged (time-independent)");
    return out;
}

ExperimentReport averaging_sweep(const SweepPlan& plan, const CoefficientSet& set,
                                 const SpectralField& u0_eps,
                                 const SpectralField& u0_star,
                                 const SolverConfig& config, std::uint64_t seed) {
    if (plan.epsilons.empty())
        throw std::invalid_argument("averaging_sweep: empty epsilon ladder");
    if (plan.m == 0) {
        if (set.a4() > 2.0 * set.a3())
            throw std::invalid_argument(
                "averaging_sweep: hypothesis a4 <= 2 a3 violated");
    } else if (plan.m == 1) {
        bool eta_one = set.eta1.constant() && set.eta1.base == 1.0 &&
                       set.eta2.constant() && set.eta2.base == 1.0;
        if (!eta_one || !set.transport.empty())
            throw std::invalid_argument(
                "averaging_sweep: H1 mode needs eta == 1 and no transport noise");
    } else {
        throw std::invalid_argument("averaging_sweep: m must be 0 or 1");
    }

    CoefficientSet avg = build_averaged(set).set;
    int n_steps = int(std::llround(plan.T / config.dt));

    ExperimentReport rep;
    for (std::size_t e = 0; e < plan.epsilons.size(); ++e) {
        double eps = plan.epsilons[e];
        CoefficientSet osc = oscillate(set, eps);
        int J = std::max({noise_columns(osc), noise_columns(avg), 1});
        double d = e < plan.d_explicit.size() ? plan.d_explicit[e]
                                              : std::pow(eps, plan.d_exponent);

        std::vector<double> sample(plan.n_paths, -1.0);  // -1 marks a blown-up path
        parallel_for(plan.n_paths, [&](int s) {
            WienerPath path(seed + kSeedStride * (s + 1), config.dt, n_steps, J);
            PairResult pair =
                simulate_pair(u0_eps, u0_star, osc, avg, config, path);
            if (pair.a.blown_up) return;
            const std::vector<double>& dist =
                plan.m == 0 ? pair.dist_h0 : pair.dist_h1;
            double sup = 0.0;
            for (double v : dist) sup = std::max(sup, v * v);
            sample[s] = sup;
        });
        std::vector<double> errs;
        int excluded = 0;
        for (double v : sample) {
            if (v < 0.0)
                ++excluded;
            else
                errs.push_back(v);
        }

        SweepRow row;
        row.epsilon = eps;
        row.d = d;
        row.n_paths = int(errs.size());
        row.excluded = excluded;
        if (!errs.empty()) {
            double s1 = 0.0;
            for (double v : errs) s1 += v;
            row.err_mean = s1 / double(errs.size());
            if (errs.size() > 1) {
                double acc = 0.0;
                for (double v : errs) acc += (v - row.err_mean) * (v - row.err_mean);
                row.err_stderr =
                    std::sqrt(acc / double(errs.size() - 1) / double(errs.size()));
            }
        }
        rep.rows.push_back(row);
    }

    rep.monotone = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        double slack = 2.0 * (rep.rows[i - 1].err_stderr + rep.rows[i].err_stderr);
        if (rep.rows[i].err_mean > rep.rows[i - 1].err_mean + slack)
            rep.monotone = false;
    }
    std::vector<double> xs, ys;
    for (const auto& r : rep.rows) {
        xs.push_back(r.epsilon);
        ys.push_back(r.err_mean);
    }
    rep.fitted_rate = loglog_slope(xs, ys);
    return rep;
}

std::vector<BlockRow> khasminskii_block_diagnostic(const Trajectory& traj_star,
                                                   const CoefficientSet& set,
                                                   double d, double epsilon) {
    if (!(d > 0.0) || !(epsilon > 0.0))
        throw std::invalid_argument("khasminskii_block_diagnostic: d, epsilon > 0");
    TimeFn eta_eps = set.eta1;
    eta_eps.omega /= epsilon;
    double eta_star = set.eta1.mean();

    std::vector<BlockRow> rows;
    double T = traj_star.final_time();
    int n_blocks = int(std::floor(T / d + 1e-12));
    for (int n = 0; n < n_blocks; ++n) {
        double a = n * d, b = (n + 1) * d;
        double resid = std::fabs(integrate(
            [&](double s) { return eta_eps(s) - eta_star; }, a, b, 1e-10));
        // gradient strength of the averaged trajectory at the block start
        double h1 = 0.0;
        for (std::size_t i = 0; i < traj_star.times.size(); ++i) {
            if (traj_star.times[i] > a + 1e-12) break;
            h1 = traj_star.h1[i];
        }
        BlockRow row;
        row.block = n;
        row.term = resid * h1;
        double omega = std::fabs(set.eta1.omega) > 0.0 ? std::fabs(set.eta1.omega) : 1.0;
        row.envelope = 2.0 * std::fabs(set.eta1.amp) * epsilon / omega * h1;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace tns
