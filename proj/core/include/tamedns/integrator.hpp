#pragma once

#include <optional>
#include <vector>

#include "tamedns/coefficients.hpp"
#include "tamedns/field.hpp"
#include "tamedns/operators.hpp"
#include "tamedns/taming.hpp"
#include "tamedns/wiener.hpp"

namespace tns {

struct SolverConfig {
    enum class Scheme { SemiImplicit, ExplicitTamed };
    Scheme scheme = Scheme::SemiImplicit;
    double dt = 1e-3;
    double nu = 1.0;               // viscosity entering the taming profile
    double taming_threshold = 100.0;
    double m_cut = 0.0;            // >0: smooth cutoff of the nonlinearity above this H1 radius
    double stop_radius = 1e12;     // R of the H1 stopping time
    int record_stride = 1;         // field snapshot cadence; norms are per step
};

struct Trajectory {
    std::vector<double> times;  // t_0..t_n, one entry per step boundary
    std::vector<double> h0, h1, h2;
    std::vector<double> cum_h2, cum_ug;  // running dissipation integrals per row
    double diss_h2 = 0.0;  // int ||u||_{H2}^2 dt (left Riemann)
    double diss_ug = 0.0;  // int || |u| |grad u| ||^2 dt
    std::vector<int> snapshot_steps;
    std::vector<SpectralField> snapshots;
    bool blown_up = false;
    int blowup_step = -1;

    double final_time() const { return times.empty() ? 0.0 : times.back(); }
};

/// One step of the Euler-Maruyama scheme.  dW holds one increment per noise
/// column; columns are the sum of the transport action and the g-family
/// column with matching index.  Throws on a non-finite result, carrying the
/// step index in the message.
SpectralField step(const SpectralField& u, double t, double dt,
                   const std::vector<double>& dW, const CoefficientSet& coeffs,
                   const SolverConfig& config, int step_index = 0);

/// Number of noise columns the coefficient set drives.
int noise_columns(const CoefficientSet& coeffs);

Trajectory simulate(const SpectralField& u0, const CoefficientSet& coeffs,
                    const SolverConfig& config, const WienerPath& path);

/// Two trajectories on the same Wiener path, plus the per-step coupling
/// distances in H0 and H1.  The second run may use different coefficients
/// (the averaging comparison) or a different start (the uniqueness probe).
struct PairResult {
    Trajectory a, b;
    std::vector<double> dist_h0;  // ||u_a - u_b||_{H0} per step boundary
    std::vector<double> dist_h1;
};
PairResult simulate_pair(const SpectralField& u0_a, const SpectralField& u0_b,
                         const CoefficientSet& coeffs_a,
                         const CoefficientSet& coeffs_b,
                         const SolverConfig& config, const WienerPath& path);

/// First mesh time with ||u||_{H1} > R, or nullopt.
std::optional<double> tau_r(const Trajectory& traj, double R);
/// First mesh time with the coupling distance (H^m, m in {0,1}) above beta.
std::optional<double> tau_beta(const PairResult& pair, double beta, int m);

struct MomentEstimate {
    double sup_moment = 0.0;  // mean over paths of sup_t ||u||_{H1}^{2p}
    double sup_se = 0.0;      // jackknife standard error
    double diss_moment = 0.0; // mean of int ||u||^{2p-2} [||u||_{H2}^2 + |||u||grad u|||^2] dt
    double diss_se = 0.0;
    int paths = 0;
};
MomentEstimate moment_estimator(const std::vector<Trajectory>& ensemble, double p);

struct ContractionCurve {
    std::vector<double> deltas;    // initial H0 distances, decreasing
    std::vector<double> sup_dist;  // E sup_{t <= T ^ tau_R ^ tau_beta} ||u_a-u_b||_{H0}^2
    double beta = 0.0;
    double radius = 0.0;
};

/// Runs coupled pairs along a delta-ladder of initial separations between
/// u0_a and u0_b (direction fixed, magnitude halved per rung) over n_paths
/// independent Wiener paths derived from path's seed.
ContractionCurve uniqueness_probe(const SpectralField& u0_a,
                                  const SpectralField& u0_b,
                                  const CoefficientSet& coeffs,
                                  const SolverConfig& config,
                                  const WienerPath& path, double beta,
                                  int n_ladder = 6, int n_paths = 4);

}  // namespace tns
