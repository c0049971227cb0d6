#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tamedns/averaging.hpp"
#include "tamedns/coefficients.hpp"
#include "tamedns/integrator.hpp"

namespace tns {

/// Parameters of one named experiment; unused members keep their defaults.
struct ExperimentSpec {
    std::string name = "simulate";  // simulate | probe-uniqueness | averaging-sweep
                                    // | freeze-rate | average-coeffs
                                    // | validate-assumptions
    double T = 1.0;
    int n_paths = 16;
    std::vector<double> epsilons;   // averaging-sweep ladder
    std::vector<double> d_ladder;   // freeze-rate ladder
    double d_exponent = 0.5;
    int m = 0;                      // norm level for sweep / freeze error
    double beta = 0.5;              // uniqueness probe separation bound
    int n_ladder = 3;
    double delta0 = 1e-2;           // largest initial distance of the probe
    double amplitude = 1.0;         // initial-data H0 norm
    double perturb = 0.0;           // initial-data perturbation (sweep)
};

/// Whole-run description.  Round-trips through JSON; the FNV-1a hash of the
/// canonical serialization identifies a run in every report row.
struct RunConfig {
    int grid_n = 8;
    double taming_threshold = 100.0;
    double nu = 1.0;

    TimeFn eta1{1.0, 0.0, 1.0, 0.0};
    TimeFn eta2{1.0, 0.0, 1.0, 0.0};
    std::string f_kind = "zero";  // zero | linear | osgood
    TimeFn f_time{1.0, 0.0, 1.0, 0.0};
    double f_scale = 0.0;
    double f_fz_delta = 0.25;
    std::string g_kind = "zero";       // zero | diag_low | additive_low
    std::string g_time_kind = "const"; // const | sin | decay
    TimeFn g_time{1.0, 0.0, 1.0, 0.0};
    double g_gamma = 0.0;
    int g_columns = 0;
    double g_mode_cut_sq = 2.0;
    TransportNoiseSpec transport;

    double growth_c = 1.0;
    double growth_m = 1.0;
    std::string modulus = "linear";  // linear | log_osgood
    double mono_c = 1.0;
    double zeta = 0.5;

    std::string scheme = "semi_implicit";  // semi_implicit | explicit_tamed
    double dt = 1e-3;
    double m_cut = 0.0;
    double stop_radius = 1e12;
    int record_stride = 1;

    ExperimentSpec experiment;
    std::uint64_t seed = 1;
    std::string out = "out";

    CoefficientSet coefficients() const;
    SolverConfig solver() const;

    std::string canonical_json() const;
    std::uint64_t hash() const;

    static RunConfig from_json_text(const std::string& text);
    static RunConfig load(const std::string& path);
};

/// FNV-1a 64-bit over a byte string.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace tns
