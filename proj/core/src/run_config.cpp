#include "tamedns/run_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tns {

using nlohmann::json;

namespace {

json time_fn_to_json(const TimeFn& f) {
    return json{{"base", f.base}, {"amp", f.amp}, {"omega", f.omega}, {"phase", f.phase}};
}

TimeFn time_fn_from_json(const json& j) {
    TimeFn f;
    f.base = j.value("base", 1.0);
    f.amp = j.value("amp", 0.0);
    f.omega = j.value("omega", 1.0);
    f.phase = j.value("phase", 0.0);
    return f;
}

json transport_to_json(const TransportNoiseSpec& spec) {
    json fields = json::array();
    for (const auto& f : spec.fields) {
        json modes = json::array();
        for (const auto& m : f)
            modes.push_back(json{{"k", m.k},
                                 {"amp_cos", m.amp_cos},
                                 {"amp_sin", m.amp_sin},
                                 {"c0", m.c0},
                                 {"c1", m.c1},
                                 {"omega", m.omega}});
        fields.push_back(modes);
    }
    return fields;
}

TransportNoiseSpec transport_from_json(const json& j) {
    TransportNoiseSpec spec;
    for (const auto& f : j) {
        std::vector<NoiseMode> modes;
        for (const auto& jm : f) {
            NoiseMode m;
            if (jm.contains("k")) m.k = jm.at("k").get<std::array<int, 3>>();
            if (jm.contains("amp_cos"))
                m.amp_cos = jm.at("amp_cos").get<std::array<double, 3>>();
            if (jm.contains("amp_sin"))
                m.amp_sin = jm.at("amp_sin").get<std::array<double, 3>>();
            m.c0 = jm.value("c0", 1.0);
            m.c1 = jm.value("c1", 0.0);
            m.omega = jm.value("omega", 1.0);
            modes.push_back(m);
        }
        spec.fields.push_back(std::move(modes));
    }
    return spec;
}

}  // namespace

CoefficientSet RunConfig::coefficients() const {
    CoefficientSet set;
    set.eta1 = eta1;
    set.eta2 = eta2;

    if (f_kind == "zero")
        set.f.kind = DriftFamily::Kind::Zero;
    else if (f_kind == "linear")
        set.f.kind = DriftFamily::Kind::Linear;
    else if (f_kind == "osgood")
        set.f.kind = DriftFamily::Kind::Osgood;
    else
        throw std::invalid_argument("config: unknown f.kind '" + f_kind + "'");
    set.f.time = f_time;
    set.f.scale = f_scale;
    set.f.fz_delta = f_fz_delta;

    if (g_kind == "zero")
        set.g.kind = DiffusionFamily::Kind::Zero;
    else if (g_kind == "diag_low")
        set.g.kind = DiffusionFamily::Kind::DiagLow;
    else if (g_kind == "additive_low")
        set.g.kind = DiffusionFamily::Kind::AdditiveLow;
    else
        throw std::invalid_argument("config: unknown g.kind '" + g_kind + "'");
    if (g_time_kind == "const")
        set.g.time_kind = DiffusionFamily::TimeKind::Const;
    else if (g_time_kind == "sin")
        set.g.time_kind = DiffusionFamily::TimeKind::Sin;
    else if (g_time_kind == "decay")
        set.g.time_kind = DiffusionFamily::TimeKind::Decay;
    else
        throw std::invalid_argument("config: unknown g.time_kind '" + g_time_kind + "'");
    set.g.time = g_time;
    set.g.gamma = g_gamma;
    set.g.columns = g_columns;
    set.g.mode_cut_sq = g_mode_cut_sq;

    set.transport = transport;
    set.growth_c = growth_c;
    set.growth_m = growth_m;
    if (modulus == "linear")
        set.modulus = ModulusOfContinuity::linear();
    else if (modulus == "log_osgood")
        set.modulus = ModulusOfContinuity::log_osgood();
    else
        throw std::invalid_argument("config: unknown modulus '" + modulus + "'");
    set.mono_c = mono_c;
    set.zeta = zeta;
    return set;
}

SolverConfig RunConfig::solver() const {
    SolverConfig cfg;
    if (scheme == "semi_implicit")
        cfg.scheme = SolverConfig::Scheme::SemiImplicit;
    else if (scheme == "explicit_tamed")
        cfg.scheme = SolverConfig::Scheme::ExplicitTamed;
    else
        throw std::invalid_argument("config: unknown solver.scheme '" + scheme + "'");
    cfg.dt = dt;
    cfg.nu = nu;
    cfg.taming_threshold = taming_threshold;
    cfg.m_cut = m_cut;
    cfg.stop_radius = stop_radius;
    cfg.record_stride = record_stride;
    if (cfg.dt <= 0.0) throw std::invalid_argument("config: solver.dt must be > 0");
    if (cfg.stop_radius <= 0.0)
        throw std::invalid_argument("config: solver.stop_radius must be > 0");
    return cfg;
}

std::string RunConfig::canonical_json() const {
    json j;
    j["grid"] = json{{"n", grid_n}};
    j["taming"] = json{{"threshold", taming_threshold}, {"nu", nu}};
    j["coefficients"] = json{
        {"eta1", time_fn_to_json(eta1)},
        {"eta2", time_fn_to_json(eta2)},
        {"f", json{{"kind", f_kind},
                   {"time", time_fn_to_json(f_time)},
                   {"scale", f_scale},
                   {"fz_delta", f_fz_delta}}},
        {"g", json{{"kind", g_kind},
                   {"time_kind", g_time_kind},
                   {"time", time_fn_to_json(g_time)},
                   {"gamma", g_gamma},
                   {"columns", g_columns},
                   {"mode_cut_sq", g_mode_cut_sq}}},
        {"transport", transport_to_json(transport)},
        {"growth_c", growth_c},
        {"growth_m", growth_m},
        {"modulus", modulus},
        {"mono_c", mono_c},
        {"zeta", zeta}};
    j["solver"] = json{{"scheme", scheme},
                       {"dt", dt},
                       {"m_cut", m_cut},
                       {"stop_radius", stop_radius},
                       {"record_stride", record_stride}};
    j["experiment"] = json{{"name", experiment.name},
                           {"T", experiment.T},
                           {"n_paths", experiment.n_paths},
                           {"epsilons", experiment.epsilons},
                           {"d_ladder", experiment.d_ladder},
                           {"d_exponent", experiment.d_exponent},
                           {"m", experiment.m},
                           {"beta", experiment.beta},
                           {"n_ladder", experiment.n_ladder},
                           {"delta0", experiment.delta0},
                           {"amplitude", experiment.amplitude},
                           {"perturb", experiment.perturb}};
    j["seed"] = seed;
    j["out"] = out;
    return j.dump();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t RunConfig::hash() const { return fnv1a(canonical_json()); }

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    RunConfig cfg;
    if (j.contains("grid")) cfg.grid_n = j["grid"].value("n", 8);
    if (cfg.grid_n < 4 || cfg.grid_n % 2 != 0)
        throw std::invalid_argument("config: grid.n must be even and >= 4");
    if (j.contains("taming")) {
        cfg.taming_threshold = j["taming"].value("threshold", 100.0);
        cfg.nu = j["taming"].value("nu", 1.0);
    }
    if (cfg.nu <= 0.0) throw std::invalid_argument("config: taming.nu must be > 0");
    if (j.contains("coefficients")) {
        const json& c = j["coefficients"];
        if (c.contains("eta1")) cfg.eta1 = time_fn_from_json(c["eta1"]);
        if (c.contains("eta2")) cfg.eta2 = time_fn_from_json(c["eta2"]);
        if (c.contains("f")) {
            cfg.f_kind = c["f"].value("kind", "zero");
            if (c["f"].contains("time")) cfg.f_time = time_fn_from_json(c["f"]["time"]);
            cfg.f_scale = c["f"].value("scale", 0.0);
            cfg.f_fz_delta = c["f"].value("fz_delta", 0.25);
        }
        if (c.contains("g")) {
            cfg.g_kind = c["g"].value("kind", "zero");
            cfg.g_time_kind = c["g"].value("time_kind", "const");
            if (c["g"].contains("time")) cfg.g_time = time_fn_from_json(c["g"]["time"]);
            cfg.g_gamma = c["g"].value("gamma", 0.0);
            cfg.g_columns = c["g"].value("columns", 0);
            cfg.g_mode_cut_sq = c["g"].value("mode_cut_sq", 2.0);
        }
        if (c.contains("transport"))
            cfg.transport = transport_from_json(c["transport"]);
        cfg.growth_c = c.value("growth_c", 1.0);
        cfg.growth_m = c.value("growth_m", 1.0);
        cfg.modulus = c.value("modulus", "linear");
        cfg.mono_c = c.value("mono_c", 1.0);
        cfg.zeta = c.value("zeta", 0.5);
    }
    if (j.contains("solver")) {
        const json& s = j["solver"];
        cfg.scheme = s.value("scheme", "semi_implicit");
        cfg.dt = s.value("dt", 1e-3);
        cfg.m_cut = s.value("m_cut", 0.0);
        cfg.stop_radius = s.value("stop_radius", 1e12);
        cfg.record_stride = s.value("record_stride", 1);
    }
    if (j.contains("experiment")) {
        const json& e = j["experiment"];
        cfg.experiment.name = e.value("name", "simulate");
        cfg.experiment.T = e.value("T", 1.0);
        cfg.experiment.n_paths = e.value("n_paths", 16);
        if (e.contains("epsilons"))
            cfg.experiment.epsilons = e["epsilons"].get<std::vector<double>>();
        if (e.contains("d_ladder"))
            cfg.experiment.d_ladder = e["d_ladder"].get<std::vector<double>>();
        cfg.experiment.d_exponent = e.value("d_exponent", 0.5);
        cfg.experiment.m = e.value("m", 0);
        cfg.experiment.beta = e.value("beta", 0.5);
        cfg.experiment.n_ladder = e.value("n_ladder", 3);
        cfg.experiment.delta0 = e.value("delta0", 1e-2);
        cfg.experiment.amplitude = e.value("amplitude", 1.0);
        cfg.experiment.perturb = e.value("perturb", 0.0);
    }
    cfg.seed = j.value("seed", std::uint64_t(1));
    cfg.out = j.value("out", "out");
    // exercise the derived objects so bad enum strings fail at load time
    (void)cfg.coefficients();
    (void)cfg.solver();
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

}  // namespace tns
