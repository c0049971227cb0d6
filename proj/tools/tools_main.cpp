#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tamedns/harness.hpp"
#include "tamedns/parallel.hpp"
#include "tamedns/run_config.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 1;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", flags.seed, "master seed override")
        ->each([&flags](const std::string&) { flags.seed_given = true; });
    cmd->add_option("--threads", flags.threads, "worker thread budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", flags.out, "output directory override");
}

int execute(const std::string& experiment, const CommonFlags& flags) {
    tns::RunConfig cfg;
    try {
        cfg = tns::RunConfig::load(flags.config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    cfg.experiment.name = experiment;
    if (flags.seed_given) cfg.seed = flags.seed;
    if (!flags.out.empty()) cfg.out = flags.out;
    tns::set_thread_budget(flags.threads);

    tns::RunResult result = tns::run(cfg);
    if (result.exit_code == 2) {
        std::cerr << "error: " << result.summary << "\n";
    } else {
        std::cout << result.summary << "\n";
        for (const auto& a : result.artifacts) std::cout << "wrote " << a << "\n";
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic tamed Navier-Stokes experiment driver"};
    app.require_subcommand(1);

    const char* names[] = {"simulate",    "probe-uniqueness", "averaging-sweep",
                           "freeze-rate", "average-coeffs",   "validate-assumptions"};
    const char* blurbs[] = {
        "integrate one trajectory and export its norms",
        "coupled-path contraction study over an initial-distance ladder",
        "oscillatory vs averaged system convergence sweep",
        "freeze-error decay rate in the block length",
        "construct the averaged coefficient set",
        "check the coefficient family against every assumption"};

    CommonFlags flags[6];
    for (int i = 0; i < 6; ++i)
        add_common(app.add_subcommand(names[i], blurbs[i]), flags[i]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // bad flags, missing config files etc. are all "invalid input"
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (int i = 0; i < 6; ++i)
        if (app.get_subcommand(names[i])->parsed()) return execute(names[i], flags[i]);
    return 2;
}
