// Acceptance gate: ten run-level criteria, one pass/fail line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tamedns/averaging.hpp"
#include "tamedns/harness.hpp"
#include "tamedns/integrator.hpp"
#include "tamedns/parallel.hpp"
#include "tamedns/run_config.hpp"
#include "tamedns/taming.hpp"

using namespace tns;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, double seconds) {
    std::printf("criterion %2d [%s] %s (%.1f s)\n", criterion,
                pass ? "PASS" : "FAIL", what.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

template <class Fn>
void timed(int criterion, const std::string& what, Fn&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                   .count();
    report(criterion, pass, what + (detail.empty() ? "" : " | " + detail), s);
}

// 1: structural invariants on 1000 random fields (16^3)
bool criterion1(std::string& detail) {
    TorusGrid g(16);
    TamingProfile profile(0.2, 1.0);
    for (int i = 0; i < 1000; ++i) {
        SpectralField u = random_div_free_field(g, 1000 + i, 1.0 + (i % 4));
        SpectralField v = random_div_free_field(g, 5000 + i, 2.0);
        SpectralField pu = leray_project(u);
        SpectralField ppu = leray_project(pu);
        ppu -= pu;
        if (sobolev_norm_sq(ppu, 0) > 1e-20 * sobolev_norm_sq(pu, 0)) {
            detail = "idempotence broke at field " + std::to_string(i);
            return false;
        }
        double lhs = inner_product(leray_project(u), v, 0);
        double rhs = inner_product(u, leray_project(v), 0);
        if (std::abs(lhs - rhs) > 1e-10 * (1.0 + std::abs(lhs))) {
            detail = "self-adjointness broke at field " + std::to_string(i);
            return false;
        }
        SpectralField conv = convection(u);
        SpectralField tam = taming_term(u, profile);
        SpectralField sto = stokes(u);
        double nrm = std::sqrt(sobolev_norm_sq(u, 0));
        if (conv.divergence_linf() > 1e-10 * (1.0 + nrm) ||
            tam.divergence_linf() > 1e-10 * (1.0 + nrm) ||
            sto.divergence_linf() > 1e-10 * (1.0 + nrm)) {
            detail = "incompressibility broke at field " + std::to_string(i);
            return false;
        }
        double grad = std::sqrt(sobolev_norm_sq(u, 1) - sobolev_norm_sq(u, 0));
        if (std::abs(inner_product(conv, u, 0)) >
            1e-10 * sobolev_norm_sq(u, 0) * grad) {
            detail = "skew-symmetry broke at field " + std::to_string(i);
            return false;
        }
    }
    detail = "1000 fields clean";
    return true;
}

// 2: taming function exactness over three (N, nu) pairs
bool criterion2(std::string& detail) {
    for (auto [N, nu] : {std::pair{1.0, 1.0}, {10.0, 0.5}, {100.0, 2.0}}) {
        TamingProfile p(N, nu);
        double cap = 2.0 / std::min(nu, 1.0);
        const double h = 1e-5;
        for (int i = 0; i < 10000; ++i) {
            double z = (N + 2.0) * i / 9999.0;
            double psi = p.psi(z);
            if (z <= N && psi != 0.0) {
                detail = "psi nonzero below threshold";
                return false;
            }
            if (z >= N + 1.0 && std::abs(psi - (z - N) / nu) > 1e-13 * (1.0 + psi)) {
                detail = "psi off the linear branch";
                return false;
            }
            double d = p.psi_prime(z);
            if (d < 0.0 || d > cap) {
                detail = "derivative bound violated at z=" + std::to_string(z);
                return false;
            }
            if (z > h && std::abs(z - N) > 2 * h && std::abs(z - N - 1.0) > 2 * h) {
                double fd = (p.psi(z + h) - p.psi(z - h)) / (2.0 * h);
                if (std::abs(fd - d) > 1e-8 / std::min(nu, 1.0)) {
                    detail = "finite-difference mismatch at z=" + std::to_string(z);
                    return false;
                }
            }
        }
    }
    detail = "3 x 10^4 samples exact";
    return true;
}

// 3: operator equivalence against the O(n^6) convolution oracle
bool criterion3(std::string& detail) {
    TorusGrid g(8);
    TransportNoiseSpec spec;
    NoiseMode m1;
    m1.k = {1, 0, 0};
    m1.amp_cos = {0.0, 0.05, 0.02};
    m1.amp_sin = {0.0, 0.0, 0.03};
    m1.c1 = 0.5;
    NoiseMode m2;
    m2.k = {0, 1, 1};
    m2.amp_cos = {0.04, 0.0, 0.0};
    spec.fields = {{m1}, {m2}};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        SpectralField u = random_div_free_field(g, 7000 + i, 1.0 + 0.2 * i);
        worst = std::max(worst,
                         oracles::rel_dist(convection(u), oracles::convection_oracle(u)));
        auto cols = transport_noise_apply(spec, 0.3, u);
        for (int j = 0; j < 2; ++j)
            worst = std::max(worst, oracles::rel_dist(
                                        cols[j],
                                        oracles::transport_oracle(spec.fields[j], 0.3, u)));
        if (worst > 1e-10) {
            detail = "relative error " + std::to_string(worst);
            return false;
        }
    }
    detail = "worst relative error " + csv_double(worst);
    return true;
}

// 4: pathwise energy dissipation and taming positivity, 20 runs x 2000 steps
bool criterion4(std::string& detail) {
    TorusGrid g(16);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.taming_threshold = 0.5;
    TamingProfile profile(cfg.taming_threshold, cfg.nu);
    CoefficientSet set;
    std::vector<double> dW(1, 0.0);
    std::vector<std::string> why(20);
    parallel_for(20, [&](int run) {
        SpectralField u = random_div_free_field(g, 2000 + run, 2.0);
        double prev = sobolev_norm_sq(u, 0);
        for (int n = 0; n < 2000; ++n) {
            if (inner_product(taming_term(u, profile), u, 0) < 0.0) {
                why[run] = "taming inner product negative";
                return;
            }
            u = step(u, n * cfg.dt, cfg.dt, dW, set, cfg, n);
            double now = sobolev_norm_sq(u, 0);
            if (now > prev * (1.0 + 1e-14)) {
                why[run] = "energy increased at step " + std::to_string(n);
                return;
            }
            prev = now;
        }
    });
    for (const auto& w : why)
        if (!w.empty()) {
            detail = w;
            return false;
        }
    detail = "20 runs monotone";
    return true;
}

// 5: moment estimate stable under dt halving (coupled paths)
bool criterion5(std::string& detail) {
    TorusGrid g(8);
    CoefficientSet set;
    set.g.kind = DiffusionFamily::Kind::DiagLow;
    set.g.gamma = 0.3;
    set.g.columns = 2;
    SolverConfig coarse_cfg, fine_cfg;
    coarse_cfg.dt = 2e-3;
    fine_cfg.dt = 1e-3;
    coarse_cfg.record_stride = fine_cfg.record_stride = 0;
    const int paths = 32;
    std::vector<Trajectory> coarse(paths), fine(paths);
    parallel_for(paths, [&](int s) {
        SpectralField u0 = random_div_free_field(g, 3000, 1.0);
        WienerPath fp(4000 + s, fine_cfg.dt, 1000, 2);
        fine[s] = simulate(u0, set, fine_cfg, fp);
        coarse[s] = simulate(u0, set, coarse_cfg, fp.coarsen(2));
    });
    double e_coarse = moment_estimator(coarse, 1.0).sup_moment;
    double e_fine = moment_estimator(fine, 1.0).sup_moment;
    double change = std::abs(e_fine - e_coarse) / e_coarse;
    detail = "E sup |u|_{H1}^2: " + csv_double(e_coarse) + " -> " +
             csv_double(e_fine) + ", change " + csv_double(change);
    return change < 0.10;
}

// analytic control function of the log-Osgood modulus, iota = 1e-16
double gamma_log_osgood(double x) {
    const double iota = 1e-16, r0 = 0.36787944117144233;  // 1/e
    auto low = [](double s) { return -std::log(2.0 - std::log(s)); };
    if (x <= r0) return low(x) - low(iota);
    // beyond the kink A(s)+s = 2s + 1/e
    return low(r0) - low(iota) +
           0.5 * (std::log(2.0 * x + r0) - std::log(2.0 * r0 + r0));
}

// 6: Osgood uniqueness contraction with the Gamma-transform bound
bool criterion6(std::string& detail) {
    TorusGrid g(8);
    CoefficientSet set;
    set.f.kind = DriftFamily::Kind::Osgood;
    set.f.scale = -1.0;
    set.f.fz_delta = 0.25;
    set.g.kind = DiffusionFamily::Kind::DiagLow;
    set.g.gamma = 0.1;
    set.g.columns = 2;
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.record_stride = 0;
    const double T = 0.5;
    const int n_steps = 250, paths = 4;
    std::vector<double> deltas{1e-2, 1e-3, 1e-4};
    SpectralField u0 = random_div_free_field(g, 6000, 1.0);
    SpectralField dir = random_div_free_field(g, 6001, 1.0);

    std::vector<double> sup(deltas.size(), 0.0);
    for (std::size_t r = 0; r < deltas.size(); ++r) {
        std::vector<double> per_path(paths, 0.0);
        parallel_for(paths, [&](int s) {
            SpectralField pert = dir;
            pert *= deltas[r];
            pert += u0;
            WienerPath path(6100 + s, cfg.dt, n_steps, 2);
            PairResult pair = simulate_pair(u0, pert, set, set, cfg, path);
            double worst = 0.0;
            for (double v : pair.dist_h0) worst = std::max(worst, v * v);
            per_path[s] = worst;
        });
        for (double v : per_path) sup[r] += v / paths;
    }

    bool decreasing = sup[0] > sup[1] && sup[1] > sup[2];
    // single fitted (c, C) across the ladder
    double c_fit = 0.0;
    for (std::size_t r = 0; r < deltas.size(); ++r)
        c_fit = std::max(c_fit, sup[r] / (deltas[r] * deltas[r]));
    double big_c = 0.0;
    for (std::size_t r = 0; r < deltas.size(); ++r)
        big_c = std::max(big_c, (gamma_log_osgood(sup[r]) -
                                 gamma_log_osgood(c_fit * deltas[r] * deltas[r])) /
                                    T);
    big_c = std::max(big_c, 0.0);
    bool gamma_ok = true;
    for (std::size_t r = 0; r < deltas.size(); ++r)
        if (gamma_log_osgood(sup[r]) >
            gamma_log_osgood(c_fit * deltas[r] * deltas[r]) + big_c * T + 1e-9)
            gamma_ok = false;
    bool sane = c_fit <= 1e6 && big_c <= 1e3;
    detail = "sup = {" + csv_double(sup[0]) + ", " + csv_double(sup[1]) + ", " +
             csv_double(sup[2]) + "}, fitted c = " + csv_double(c_fit) +
             ", C = " + csv_double(big_c);
    return decreasing && gamma_ok && sane;
}

// 7: freeze-error decay rate in the block length
bool criterion7(std::string& detail) {
    TorusGrid g(8);
    CoefficientSet set;
    set.g.kind = DiffusionFamily::Kind::DiagLow;
    set.g.gamma = 0.2;
    set.g.columns = 2;
    SolverConfig cfg;
    cfg.dt = 1.0 / 512.0;  // blocks 2^-2, 2^-4, 2^-6 align with the mesh
    FreezeRateReport rep = freeze_rate_study(
        random_div_free_field(g, 7000, 0.5), set, cfg, 1.0,
        {0.25, 0.0625, 0.015625}, 16, 7100, 1);
    detail = "fitted exponent " + csv_double(rep.fitted_exponent);
    return rep.fitted_exponent >= 0.4;
}

// 8: averaging convergence in H0
bool criterion8(std::string& detail) {
    TorusGrid g(8);
    CoefficientSet set;
    set.eta1 = {1.0, 0.5, 1.0, 0.0};
    set.g.kind = DiffusionFamily::Kind::DiagLow;
    set.g.gamma = 0.05;
    set.g.columns = 2;
    SolverConfig cfg;
    cfg.dt = 5e-3;
    cfg.record_stride = 0;
    SweepPlan plan;
    plan.epsilons = {0.5, 0.1, 0.02};
    plan.n_paths = 16;
    plan.T = 1.0;
    plan.m = 0;
    SpectralField u0 = random_div_free_field(g, 8000, 0.5);
    ExperimentReport rep = averaging_sweep(plan, set, u0, u0, cfg, 8100);
    int excluded = 0, total = 0;
    for (const auto& r : rep.rows) {
        excluded += r.excluded;
        total += r.n_paths + r.excluded;
    }
    bool quartered = rep.rows.back().err_mean <= 0.25 * rep.rows.front().err_mean;
    bool few = excluded * 100 < total;
    detail = "err = {" + csv_double(rep.rows[0].err_mean) + ", " +
             csv_double(rep.rows[1].err_mean) + ", " +
             csv_double(rep.rows[2].err_mean) + "}, excluded " +
             std::to_string(excluded) + "/" + std::to_string(total);
    return rep.monotone && quartered && few;
}

// 9: averaging convergence in H1 under the stricter hypotheses
bool criterion9(std::string& detail) {
    TorusGrid g(8);
    CoefficientSet set;  // eta == 1, no transport noise
    set.f.kind = DriftFamily::Kind::Linear;
    set.f.scale = -0.3;
    set.f.time = {1.0, 1.0, 1.0, 0.0};
    set.g.kind = DiffusionFamily::Kind::DiagLow;
    set.g.gamma = 0.05;
    set.g.columns = 2;
    SolverConfig cfg;
    cfg.dt = 5e-3;
    cfg.record_stride = 0;
    SweepPlan plan;
    plan.epsilons = {0.5, 0.1, 0.02};
    plan.n_paths = 16;
    plan.T = 1.0;
    plan.m = 1;
    SpectralField u0 = random_div_free_field(g, 9000, 0.5);
    ExperimentReport rep = averaging_sweep(plan, set, u0, u0, cfg, 9100);
    bool shrinking = rep.rows.back().err_mean < rep.rows.front().err_mean;
    detail = "H1 err = {" + csv_double(rep.rows[0].err_mean) + ", " +
             csv_double(rep.rows[1].err_mean) + ", " +
             csv_double(rep.rows[2].err_mean) + "}";
    return rep.monotone && shrinking;
}

// 10: byte-identical CSV on re-run
bool criterion10(std::string& detail) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "tamedns_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    RunConfig cfg;
    cfg.grid_n = 8;
    cfg.f_kind = "osgood";
    cfg.f_scale = -0.5;
    cfg.g_kind = "diag_low";
    cfg.g_gamma = 0.1;
    cfg.g_columns = 2;
    cfg.modulus = "log_osgood";
    cfg.dt = 2e-3;
    cfg.experiment.name = "simulate";
    cfg.experiment.T = 0.1;
    cfg.seed = 11;
    cfg.out = (dir / "out").string();
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    if (run(cfg).exit_code != 0) {
        detail = "first run failed";
        return false;
    }
    std::string first = slurp(dir / "out" / "trajectory.csv");
    if (run(cfg).exit_code != 0) {
        detail = "second run failed";
        return false;
    }
    bool same = slurp(dir / "out" / "trajectory.csv") == first;
    fs::remove_all(dir);
    detail = same ? "CSV bytes identical" : "CSV bytes differ";
    return same;
}

}  // namespace

int main() {
    set_thread_budget(4);
    timed(1, "structural invariants (Leray, incompressibility, skew-symmetry)",
          criterion1);
    timed(2, "taming function exactness and derivative bound", criterion2);
    timed(3, "operator equivalence vs O(n^6) convolution oracle", criterion3);
    timed(4, "deterministic energy dissipation and taming positivity", criterion4);
    timed(5, "moment-bound stability under dt halving", criterion5);
    timed(6, "Osgood uniqueness contraction + Gamma-transform bound", criterion6);
    timed(7, "freeze-error decay rate >= 0.4", criterion7);
    timed(8, "averaging convergence in H0", criterion8);
    timed(9, "averaging convergence in H1", criterion9);
    timed(10, "byte-identical CSV reproducibility", criterion10);
    if (g_failures) std::printf("%d criteria FAILED\n", g_failures);
    else std::printf("all 10 criteria passed\n");
    return g_failures;
}
