#include "elcc/config.hpp"

#include <cmath>
#include <stdexcept>

#include "elcc/serde.hpp"

namespace elcc {

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& message) {
    throw std::runtime_error("config validation: " + pointer + ": " + message);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::runtime_error(std::string("config parse: ") + e.what());
    }
    RunConfig c;

    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();

    if (j.contains("field")) {
        const auto& f = j.at("field");
        if (f.contains("p")) c.p = f.at("p").get<std::uint32_t>();
        if (f.contains("ell")) c.ell = f.at("ell").get<std::uint32_t>();
    }
    if (j.contains("inner") && j.at("inner").contains("kind"))
        c.inner_kind = j.at("inner").at("kind").get<std::string>();
    if (j.contains("geometry")) {
        const auto& g = j.at("geometry");
        c.inner_kind = "affine";
        if (g.contains("h")) c.h = g.at("h").get<std::uint32_t>();
        if (g.contains("m")) c.m = g.at("m").get<std::uint32_t>();
        if (g.contains("r")) c.r = g.at("r").get<std::uint32_t>();
    }
    if (j.contains("inner") && j.at("inner").contains("d"))
        c.single_parity_d = j.at("inner").at("d").get<std::uint32_t>();

    if (j.contains("graph")) {
        const auto& g = j.at("graph");
        if (g.contains("kind")) c.graph_kind = g.at("kind").get<std::string>();
        if (g.contains("n")) c.n = g.at("n").get<std::uint32_t>();
        if (g.contains("d")) c.d = g.at("d").get<std::uint32_t>();
        if (g.contains("seed")) c.graph_seed = g.at("seed").get<std::uint64_t>();
    }

    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (p.contains("gamma")) c.gamma = p.at("gamma").get<double>();
        if (p.contains("zeta")) c.zeta = p.at("zeta").get<double>();
        if (p.contains("c_override")) c.c_override = p.at("c_override").get<std::uint32_t>();
        if (p.contains("compute_dimension")) c.compute_dimension = p.at("compute_dimension").get<bool>();
        if (p.contains("compute_inner_distance"))
            c.compute_inner_distance = p.at("compute_inner_distance").get<bool>();
    }

    if (j.contains("noise")) {
        const auto& n = j.at("noise");
        if (n.contains("model")) c.noise_model = n.at("model").get<std::string>();
        if (n.contains("rho")) c.rho = n.at("rho").get<double>();
        if (n.contains("pattern_path")) c.pattern_path = n.at("pattern_path").get<std::string>();
    }

    if (j.contains("experiment")) {
        const auto& e = j.at("experiment");
        if (e.contains("success_curve")) {
            const auto& s = e.at("success_curve");
            c.run_success_curve = true;
            c.rho_grid = s.at("rho_grid").get<std::vector<double>>();
            if (s.contains("trials")) c.trials = s.at("trials").get<std::uint64_t>();
        }
        if (e.contains("walk_tail")) {
            const auto& w = e.at("walk_tail");
            c.run_walk_tail = true;
            if (w.contains("gamma")) c.walk_gamma = w.at("gamma").get<double>();
            if (w.contains("length")) c.walk_length = w.at("length").get<std::uint32_t>();
            if (w.contains("trials")) c.walk_trials = w.at("trials").get<std::uint64_t>();
            if (w.contains("rho")) c.walk_rho = w.at("rho").get<double>();
        }
    }
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();

    // Validation with pointer-precise messages.
    if (c.inner_kind != "affine" && c.inner_kind != "single_parity")
        fail("/inner/kind", "must be 'affine' or 'single_parity'");
    if (c.inner_kind == "affine") {
        double expected = std::pow(double(c.p), double(c.ell));
        if (std::fabs(expected - double(c.h)) > 0.5)
            fail("/geometry/h", "must equal p^ell from /field");
        if (c.r >= c.m) fail("/geometry/r", "must satisfy r < m");
    } else if (c.single_parity_d < 2) {
        fail("/inner/d", "single-parity inner code needs d >= 2");
    }
    if (c.graph_kind != "random" && c.graph_kind != "complete" && c.graph_kind != "cycle")
        fail("/graph/kind", "must be 'random', 'complete' or 'cycle'");
    if (c.graph_kind == "random") {
        if (c.d >= c.n) fail("/graph/d", "must satisfy d < n");
        if ((std::uint64_t(c.n) * c.d) % 2 != 0) fail("/graph/n", "n*d must be even");
    }
    if (!(c.gamma > 0.0 && c.gamma < 0.5)) fail("/params/gamma", "must lie in (0, 1/2)");
    if (!(c.zeta > c.gamma)) fail("/params/zeta", "must exceed gamma");
    if (c.rho < 0.0 || c.rho >= 1.0) fail("/noise/rho", "must lie in [0, 1)");
    if (c.noise_model != "random" && c.noise_model != "pattern") fail("/noise/model", "must be 'random' or 'pattern'");
    for (double rho : c.rho_grid)
        if (rho < 0.0 || rho >= 1.0) fail("/experiment/success_curve/rho_grid", "entries must lie in [0, 1)");
    if (c.run_walk_tail && !(c.walk_gamma > 0.0 && c.walk_gamma < 0.5))
        fail("/experiment/walk_tail/gamma", "must lie in (0, 1/2)");
    return c;
}

RunConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

Json config_to_json(const RunConfig& c) {
    Json j;
    j["seed"] = c.seed;
    j["field"] = {{"p", c.p}, {"ell", c.ell}};
    j["inner"] = {{"kind", c.inner_kind}};
    if (c.inner_kind == "affine")
        j["geometry"] = {{"h", c.h}, {"m", c.m}, {"r", c.r}};
    else
        j["inner"]["d"] = c.single_parity_d;
    j["graph"] = {{"kind", c.graph_kind}, {"n", c.n}, {"d", c.d}, {"seed", c.graph_seed}};
    j["params"] = {{"gamma", c.gamma},
                   {"zeta", c.zeta},
                   {"compute_dimension", c.compute_dimension},
                   {"compute_inner_distance", c.compute_inner_distance}};
    if (c.c_override) j["params"]["c_override"] = *c.c_override;
    j["noise"] = {{"model", c.noise_model}, {"rho", c.rho}};
    if (!c.pattern_path.empty()) j["noise"]["pattern_path"] = c.pattern_path;
    Json experiment = Json::object();
    if (c.run_success_curve)
        experiment["success_curve"] = {{"rho_grid", c.rho_grid}, {"trials", c.trials}};
    if (c.run_walk_tail)
        experiment["walk_tail"] = {{"gamma", c.walk_gamma},
                                   {"length", c.walk_length},
                                   {"trials", c.walk_trials},
                                   {"rho", c.walk_rho}};
    if (!experiment.empty()) j["experiment"] = experiment;
    j["threads"] = c.threads;
    return j;
}

}  // namespace elcc
