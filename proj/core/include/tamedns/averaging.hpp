#pragma once

#include <string>
#include <vector>

#include "tamedns/coefficients.hpp"
#include "tamedns/integrator.hpp"

namespace tns {

/// Khasminskii block schedule: t is frozen at the left endpoint of its block
/// [nd, (n+1)d).
struct FreezeSchedule {
    double d;

    explicit FreezeSchedule(double block) : d(block) {
        if (!(block > 0.0) || block > 1.0)
            throw std::invalid_argument("FreezeSchedule: need 0 < d <= 1");
    }
    double block_start(double t) const;
};

/// Piecewise-constant surrogate of a sampled scalar series: value on each
/// block is the sample at the last mesh point <= the block start.
std::vector<double> freeze_series(const std::vector<double>& times,
                                  const std::vector<double>& values,
                                  const FreezeSchedule& schedule);

/// Freeze applied to the recorded norms of a trajectory (the staircase the
/// averaging proof works with).
Trajectory freeze(const Trajectory& traj, const FreezeSchedule& schedule);

/// int_0^T ||u(s) - u(block_start(s))||^2_{H^m} ds by left-Riemann quadrature
/// over the snapshot mesh.  Requires record_stride = 1 snapshots.
double freeze_error(const Trajectory& traj, const FreezeSchedule& schedule, int m);

struct FreezeRatePoint {
    double d = 0.0;
    double error = 0.0;  // ensemble mean of freeze_error
};
struct FreezeRateReport {
    std::vector<FreezeRatePoint> points;
    double fitted_exponent = 0.0;  // log-log slope of error vs d
};
/// Ensemble freeze-error study over a d-ladder; paths are derived from seed.
FreezeRateReport freeze_rate_study(const SpectralField& u0,
                                   const CoefficientSet& coeffs,
                                   const SolverConfig& config, double T,
                                   const std::vector<double>& d_ladder,
                                   int n_paths, std::uint64_t seed, int m);

struct AveragedSet {
    CoefficientSet set;
    std::vector<std::string> provenance;  // one tag per averaged member
};

/// Averaged coefficients with analytic time averages; when `verify` the
/// empirical averaging oracle must show decreasing rates over growing
/// windows, else the construction is refused.
AveragedSet build_averaged(const CoefficientSet& set, bool verify = false);

struct SweepPlan {
    std::vector<double> epsilons;  // decreasing ladder
    double d_exponent = 0.5;       // d = epsilon^d_exponent
    std::vector<double> d_explicit;  // overrides the rule when nonempty
    int n_paths = 16;
    double T = 1.0;
    int m = 0;  // norm level: 0 -> H0 theorem, 1 -> H1 theorem
};

struct SweepRow {
    double epsilon = 0.0;
    double d = 0.0;
    int n_paths = 0;
    double err_mean = 0.0;
    double err_stderr = 0.0;
    int excluded = 0;
};
struct ExperimentReport {
    std::vector<SweepRow> rows;
    double fitted_rate = 0.0;  // log-log slope of err vs epsilon
    bool monotone = false;     // nonincreasing within 2 standard errors
};

/// Coupled oscillatory-vs-averaged convergence study: for each epsilon both
/// systems are driven by the same Wiener path and err(epsilon) is the Monte
/// Carlo mean of sup_t ||u^eps - u*||^2_{H^m}.  Refuses when the plan's
/// hypotheses fail (m=0 needs a4 <= 2 a3; m=1 needs eta == 1 and no
/// transport noise).
ExperimentReport averaging_sweep(const SweepPlan& plan, const CoefficientSet& set,
                                 const SpectralField& u0_eps,
                                 const SpectralField& u0_star,
                                 const SolverConfig& config, std::uint64_t seed);

struct BlockRow {
    int block = 0;
    double term = 0.0;      // |int_block (eta1^eps - eta1*) ds| * ||u*(nd)||_{H1}
    double envelope = 0.0;  // R1(d/eps) * d * ||u*(nd)||_{H1} with R1(x) = 1/x
};
/// Per-block comparison of the oscillation residual against its averaging
/// envelope, evaluated along an averaged-system trajectory.
std::vector<BlockRow> khasminskii_block_diagnostic(const Trajectory& traj_star,
                                                   const CoefficientSet& set,
                                                   double d, double epsilon);

}  // namespace tns
