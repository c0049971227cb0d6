#include "tamedns/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tamedns/averaging.hpp"
#include "tamedns/field.hpp"
#include "tamedns/integrator.hpp"
#include "tamedns/transport_noise.hpp"

namespace tns {

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

namespace fs = std::filesystem;

struct Emitter {
    const RunConfig& cfg;
    std::string hash_hex;
    std::vector<std::string> artifacts;
    std::ostringstream summary;

    explicit Emitter(const RunConfig& c) : cfg(c) {
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      (unsigned long long)cfg.hash());
        hash_hex = buf;
        fs::create_directories(cfg.out);
    }

    std::ofstream open(const std::string& name) {
        fs::path p = fs::path(cfg.out) / name;
        artifacts.push_back(p.string());
        std::ofstream out(p, std::ios::binary);  // binary: fixed newlines everywhere
        if (!out) throw std::runtime_error("cannot write " + p.string());
        return out;
    }

    void manifest(double wall_s) {
        std::ofstream m = open("manifest.txt");
        m << "config_hash=" << hash_hex << "\n"
          << "seed=" << cfg.seed << "\n"
          << "experiment=" << cfg.experiment.name << "\n"
          << "library=tamedns 1.0\n"
          << "wall_time_s=" << wall_s << "\n";
    }
};

std::string csv_u64(std::uint64_t v) { return std::to_string(v); }

int run_simulate(const RunConfig& cfg, Emitter& em) {
    TorusGrid grid(cfg.grid_n);
    CoefficientSet set = cfg.coefficients();
    SolverConfig solver = cfg.solver();
    SpectralField u0 =
        random_div_free_field(grid, cfg.seed, cfg.experiment.amplitude);
    int n_steps = int(std::llround(cfg.experiment.T / solver.dt));
    int J = std::max(noise_columns(set), 1);
    WienerPath path(cfg.seed, solver.dt, n_steps, J);
    Trajectory traj = simulate(u0, set, solver, path);

    std::ofstream csv = em.open("trajectory.csv");
    csv << "config_hash,seed,time,h0,h1,h2,diss_h2,diss_ug\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        csv << em.hash_hex << ',' << csv_u64(cfg.seed) << ','
            << csv_double(traj.times[i]) << ',' << csv_double(traj.h0[i]) << ','
            << csv_double(traj.h1[i]) << ',' << csv_double(traj.h2[i]) << ','
            << csv_double(traj.cum_h2[i]) << ',' << csv_double(traj.cum_ug[i])
            << "\n";

    if (!traj.snapshots.empty()) {
        std::ofstream snap = em.open("final_field.bin");
        write_snapshot(snap, traj.snapshots.back());
    }
    em.summary << "simulate: " << traj.times.size() << " mesh points, final |u|_H0 = "
               << (traj.h0.empty() ? 0.0 : traj.h0.back());
    if (traj.blown_up) {
        em.summary << ", BLOWN UP at step " << traj.blowup_step;
        return 1;
    }
    return 0;
}

int run_probe(const RunConfig& cfg, Emitter& em) {
    TorusGrid grid(cfg.grid_n);
    CoefficientSet set = cfg.coefficients();
    SolverConfig solver = cfg.solver();
    const ExperimentSpec& ex = cfg.experiment;
    SpectralField u0_a = random_div_free_field(grid, cfg.seed, ex.amplitude);
    SpectralField dir = random_div_free_field(grid, cfg.seed + 1, 1.0);
    dir *= ex.delta0;
    SpectralField u0_b = u0_a + dir;
    int n_steps = int(std::llround(ex.T / solver.dt));
    int J = std::max(noise_columns(set), 1);
    WienerPath path(cfg.seed, solver.dt, n_steps, J);

    ContractionCurve curve = uniqueness_probe(u0_a, u0_b, set, solver, path,
                                              ex.beta, ex.n_ladder, ex.n_paths);

    std::ofstream csv = em.open("contraction.csv");
    csv << "config_hash,delta,sup_dist\n";
    for (std::size_t i = 0; i < curve.deltas.size(); ++i)
        csv << em.hash_hex << ',' << csv_double(curve.deltas[i]) << ','
            << csv_double(curve.sup_dist[i]) << "\n";

    bool decreasing = true;
    for (std::size_t i = 1; i < curve.sup_dist.size(); ++i)
        if (curve.sup_dist[i] >= curve.sup_dist[i - 1] && curve.sup_dist[i - 1] > 0.0)
            decreasing = false;
    em.summary << "probe-uniqueness: " << curve.deltas.size()
               << " rungs, top sup = "
               << (curve.sup_dist.empty() ? 0.0 : curve.sup_dist.front())
               << (decreasing ? ", strictly decreasing" : ", NOT decreasing");
    return decreasing ? 0 : 1;
}

int run_sweep(const RunConfig& cfg, Emitter& em) {
    TorusGrid grid(cfg.grid_n);
    CoefficientSet set = cfg.coefficients();
    SolverConfig solver = cfg.solver();
    const ExperimentSpec& ex = cfg.experiment;

    SweepPlan plan;
    plan.epsilons = ex.epsilons.empty()
                        ? std::vector<double>{0.5, 0.1, 0.02}
                        : ex.epsilons;
    plan.d_exponent = ex.d_exponent;
    plan.n_paths = ex.n_paths;
    plan.T = ex.T;
    plan.m = ex.m;

    SpectralField u0_star = random_div_free_field(grid, cfg.seed, ex.amplitude);
    SpectralField u0_eps = u0_star;
    if (ex.perturb > 0.0) {
        SpectralField p = random_div_free_field(grid, cfg.seed + 1, ex.perturb);
        u0_eps += p;
    }

    ExperimentReport rep =
        averaging_sweep(plan, set, u0_eps, u0_star, solver, cfg.seed);

    std::ofstream csv = em.open("sweep.csv");
    csv << "config_hash,epsilon,d,n_paths,err_mean,err_stderr,excluded,fitted_rate\n";
    for (const auto& r : rep.rows)
        csv << em.hash_hex << ',' << csv_double(r.epsilon) << ','
            << csv_double(r.d) << ',' << r.n_paths << ','
            << csv_double(r.err_mean) << ',' << csv_double(r.err_stderr) << ','
            << r.excluded << ',' << csv_double(rep.fitted_rate) << "\n";

    int total = 0, excluded = 0;
    for (const auto& r : rep.rows) {
        total += r.n_paths + r.excluded;
        excluded += r.excluded;
    }
    bool few_exclusions = total == 0 || excluded < std::max(1, total / 100);
    bool quartered = rep.rows.size() < 2 ||
                     rep.rows.back().err_mean <= 0.25 * rep.rows.front().err_mean;
    em.summary << "averaging-sweep: err " << rep.rows.front().err_mean << " -> "
               << rep.rows.back().err_mean
               << (rep.monotone ? ", monotone" : ", NOT monotone")
               << ", excluded " << excluded << "/" << total;
    return (rep.monotone && few_exclusions && quartered) ? 0 : 1;
}

int run_freeze_rate(const RunConfig& cfg, Emitter& em) {
    TorusGrid grid(cfg.grid_n);
    CoefficientSet set = cfg.coefficients();
    SolverConfig solver = cfg.solver();
    const ExperimentSpec& ex = cfg.experiment;
    std::vector<double> ladder =
        ex.d_ladder.empty() ? std::vector<double>{0.25, 0.0625, 0.015625}
                            : ex.d_ladder;
    SpectralField u0 = random_div_free_field(grid, cfg.seed, ex.amplitude);
    FreezeRateReport rep = freeze_rate_study(u0, set, solver, ex.T, ladder,
                                             ex.n_paths, cfg.seed, ex.m);

    std::ofstream csv = em.open("freeze_rate.csv");
    csv << "config_hash,d,error,fitted_exponent\n";
    for (const auto& p : rep.points)
        csv << em.hash_hex << ',' << csv_double(p.d) << ','
            << csv_double(p.error) << ',' << csv_double(rep.fitted_exponent)
            << "\n";

    em.summary << "freeze-rate: fitted exponent " << rep.fitted_exponent;
    return rep.fitted_exponent >= 0.4 ? 0 : 1;
}

int run_average_coeffs(const RunConfig& cfg, Emitter& em) {
    CoefficientSet set = cfg.coefficients();
    AveragedSet avg = build_averaged(set, true);

    std::ofstream csv = em.open("averaged_coeffs.csv");
    csv << "config_hash,member,provenance,value\n";
    const char* members[] = {"eta1", "eta2", "f", "g", "K"};
    double values[] = {avg.set.eta1.base, avg.set.eta2.base, avg.set.f.time.base,
                       avg.set.g.time.base, 0.0};
    for (std::size_t i = 0; i < avg.provenance.size() && i < 5; ++i) {
        std::string tag = avg.provenance[i];
        std::size_t colon = tag.find(": ");
        if (colon != std::string::npos) tag = tag.substr(colon + 2);
        csv << em.hash_hex << ',' << members[i] << ',' << tag << ','
            << csv_double(values[i]) << "\n";
    }
    em.summary << "average-coeffs: " << avg.provenance.size() << " members averaged";
    return 0;
}

int run_validate(const RunConfig& cfg, Emitter& em) {
    std::vector<AssumptionRow> rows = validate_assumptions(cfg);
    std::ofstream csv = em.open("assumptions.csv");
    csv << "config_hash,check,pass,margin,note\n";
    bool all = true;
    for (const auto& r : rows) {
        csv << em.hash_hex << ',' << r.check << ',' << (r.pass ? 1 : 0) << ','
            << csv_double(r.margin) << ',' << r.note << "\n";
        all = all && r.pass;
    }
    em.summary << "validate-assumptions: " << rows.size() << " checks, "
               << (all ? "all pass" : "FAILURES present");
    return all ? 0 : 1;
}

}  // namespace

std::vector<AssumptionRow> validate_assumptions(const RunConfig& cfg) {
    TorusGrid grid(cfg.grid_n);
    CoefficientSet set = cfg.coefficients();
    std::vector<AssumptionRow> rows;

    {
        std::vector<SpectralField> corpus;
        for (int i = 0; i < 6; ++i)
            corpus.push_back(random_div_free_field(grid, cfg.seed + i,
                                                   0.5 * (i % 3 + 1)));
        GrowthReport g = verify_growth(set, corpus);
        rows.push_back({"H1_growth", g.pass(), 1.0 - g.worst_ratio,
                        std::to_string(g.samples) + " samples"});
    }
    {
        AssumptionRow row{"H2_monotonicity", true, 0.0, "f inactive"};
        if (set.f.active()) {
            std::vector<std::pair<SpectralField, SpectralField>> pairs;
            for (int i = 0; i < 6; ++i) {
                SpectralField u =
                    random_div_free_field(grid, cfg.seed + 10 + i, 1.0);
                SpectralField w =
                    random_div_free_field(grid, cfg.seed + 40 + i, 0.3 * set.zeta);
                pairs.emplace_back(u, u + w);
            }
            auto f = [&set](double t, const SpectralField& u) {
                return set.f.eval(t, u);
            };
            MonotonicityReport m = verify_weak_monotonicity(
                f, set.modulus, set.mono_c, set.zeta, pairs);
            row.pass = m.pass();
            row.margin = -m.worst_margin;
            row.note = std::to_string(m.pairs) + " pairs";
        }
        rows.push_back(row);
    }
    {
        ModulusCheck mc = check_modulus(set.modulus);
        double spread = mc.divergence_samples.empty()
                            ? 0.0
                            : mc.divergence_samples.back() -
                                  mc.divergence_samples.front();
        rows.push_back({"Osgood_modulus", mc.pass(), spread, set.modulus.name});
    }
    {
        AssumptionRow row{"H3_noise_bound", true, 0.0, "no transport noise"};
        if (!set.transport.empty()) {
            H3Report h3 =
                validate_h3(set.transport, grid, cfg.nu, 2.0, 0.1 * cfg.nu);
            row.pass = h3.pass;
            row.margin = h3.margin;
            row.note = h3.branch;
        }
        rows.push_back(row);
    }
    auto rate_check = [&rows](const TimeFn& fn, const std::string& label) {
        AssumptionRow row{label, true, 0.0, "constant"};
        if (!fn.constant()) {
            auto f = [&fn](double t) { return fn(t); };
            double r10 = empirical_average_eta(f, 0.0, 10.0).rate_bound;
            double r40 = empirical_average_eta(f, 0.0, 40.0).rate_bound;
            row.pass = r40 <= r10 + 1e-12;
            row.margin = r10 - r40;
            row.note = "rate " + csv_double(r10) + " -> " + csv_double(r40);
        }
        rows.push_back(row);
    };
    rate_check(set.eta1, "H4_eta1_rate");
    rate_check(set.eta2, "H4_eta2_rate");
    rate_check(set.f.time, "H5_f_rate");
    {
        AssumptionRow row{"a4_le_2a3", set.a4() <= 2.0 * set.a3(),
                          2.0 * set.a3() - set.a4(), "eta2 band"};
        rows.push_back(row);
    }
    return rows;
}

RunResult run(const RunConfig& cfg) {
    RunResult result;
    auto start = std::chrono::steady_clock::now();
    try {
        Emitter em(cfg);
        const std::string& name = cfg.experiment.name;
        if (name == "simulate")
            result.exit_code = run_simulate(cfg, em);
        else if (name == "probe-uniqueness")
            result.exit_code = run_probe(cfg, em);
        else if (name == "averaging-sweep")
            result.exit_code = run_sweep(cfg, em);
        else if (name == "freeze-rate")
            result.exit_code = run_freeze_rate(cfg, em);
        else if (name == "average-coeffs")
            result.exit_code = run_average_coeffs(cfg, em);
        else if (name == "validate-assumptions")
            result.exit_code = run_validate(cfg, em);
        else
            throw std::invalid_argument("config: unknown experiment '" + name + "'");

        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        em.manifest(wall);
        {
            std::ofstream s = em.open("summary.txt");
            s << em.summary.str() << "\n";
        }
        result.artifacts = em.artifacts;
        result.summary = em.summary.str();
    } catch (const std::invalid_argument& e) {
        result.exit_code = 2;
        result.summary = e.what();
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.summary = e.what();
    }
    return result;
}

}  // namespace tns
