#include "elcc/runner.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "elcc/util.hpp"

namespace elcc {

namespace fs = std::filesystem;

BuildArtifacts build_from_config(const RunConfig& config) {
    BuildArtifacts a;

    if (config.inner_kind == "affine") {
        a.geometry = AffineGeometry::enumerate_flats(config.h, config.m, config.r);
        a.inner = build_inner_code(a.geometry, config.p);
    } else {
        a.inner = build_single_parity_code(config.p, config.single_parity_d);
    }
    if (config.compute_inner_distance) {
        const double log_size = double(a.inner.code->dimension()) * std::log2(double(a.inner.code->field().order()));
        if (log_size <= 20.0 && a.inner.code->dimension() > 0) {
            auto* mutable_code = const_cast<LinearCode*>(a.inner.code.get());
            mutable_code->min_distance_bruteforce();
        }
    }

    const std::uint32_t d = static_cast<std::uint32_t>(a.inner.code->length());
    if (config.graph_kind == "random") {
        if (config.d != d) throw std::runtime_error("build: /graph/d must equal the inner code length");
        a.graph = std::make_shared<RegularGraph>(RegularGraph::random_regular(config.n, d, config.graph_seed));
    } else if (config.graph_kind == "complete") {
        if (config.n != d + 1) throw std::runtime_error("build: complete graph needs n = d + 1");
        a.graph = std::make_shared<RegularGraph>(RegularGraph::complete(config.n));
    } else {
        if (d != 2) throw std::runtime_error("build: cycle graph needs an inner code of length 2");
        a.graph = std::make_shared<RegularGraph>(RegularGraph::cycle(config.n));
    }
    a.lambda = a.graph->second_eigenvalue();
    a.cover = std::make_shared<DoubleCover>(a.graph);
    a.code = std::make_shared<TannerCode>(TannerCode::build(a.inner, a.cover));
    if (config.compute_dimension) a.code->compute_dimension_and_generator();

    a.planner = plan_from_config(config, a);
    a.inner_hash = json_hash(inner_code_to_json(a.inner));
    a.graph_hash = json_hash(graph_to_json(*a.graph));
    return a;
}

PlannerReport plan_from_config(const RunConfig& config, const BuildArtifacts& artifacts) {
    const auto& scheme = artifacts.code->inner_scheme();
    const auto& padded = artifacts.code->tree_scheme();
    return plan_parameters(config.rho, scheme.query_count(), padded.query_count(),
                           static_cast<std::uint32_t>(artifacts.inner.code->length()), artifacts.lambda,
                           config.gamma, config.zeta, artifacts.graph->vertex_count(), config.c_override);
}

Json planner_to_json(const PlannerReport& r) {
    Json j;
    j["gamma"] = r.params.gamma;
    j["zeta"] = r.params.zeta;
    j["L1"] = r.params.L1;
    j["L2"] = r.params.L2;
    j["C"] = r.params.C;
    j["q0"] = r.q0;
    j["q_padded"] = r.q_padded;
    j["lambda"] = r.lambda;
    j["rho"] = r.rho;
    j["threshold"] = r.threshold;
    j["rho_bound"] = r.rho_bound;
    j["rho_feasible"] = r.rho_feasible;
    j["expansion_feasible"] = r.expansion_feasible;
    j["feasible"] = r.feasible;
    j["epsilon"] = r.epsilon;
    j["predicted_leaf_reads"] = r.predicted_leaf_reads;
    j["warnings"] = r.warnings;
    return j;
}

Json correction_to_json(const CorrectionResult& result, const CorrectionParams& params, bool feasible,
                        std::optional<std::uint32_t> truth) {
    Json j;
    j["position"] = result.position;
    j["symbol"] = result.symbol;
    if (truth)
        j["truth"] = *truth;
    else
        j["truth"] = nullptr;
    j["queries"] = {{"leaf_reads", result.leaf_reads},
                    {"symbol_reads", result.symbol_reads},
                    {"distinct_subtrees", result.distinct_subtrees}};
    Json scores = Json::array();
    for (std::size_t a = 0; a < result.sample_scores.unnormalized.size(); ++a) {
        const std::uint32_t u = result.sample_scores.unnormalized[a];
        scores.push_back({{"symbol", a},
                          {"unnormalized", u},
                          {"normalized", u >= kScoreInfinity ? Json() : Json(result.sample_scores.normalized(
                                                                            static_cast<std::uint32_t>(a)))}});
    }
    j["score_table"] = scores;
    j["ambiguous"] = result.ambiguous;
    j["ambiguous_subtrees"] = result.ambiguous_subtrees;
    j["params"] = {{"gamma", params.gamma},
                   {"zeta", params.zeta},
                   {"L1", params.L1},
                   {"L2", params.L2},
                   {"C", params.C}};
    j["feasible"] = feasible;
    return j;
}

namespace {

Json build_manifest(const RunConfig& config, const BuildArtifacts& a, const std::vector<std::string>& outputs) {
    Json manifest;
    manifest["config"] = config_to_json(config);
    manifest["artifacts"] = {{"inner", a.inner_hash}, {"graph", a.graph_hash}};
    manifest["lambda"] = a.lambda;
    manifest["N"] = a.code->length();
    if (a.code->dimension()) manifest["k"] = *a.code->dimension();
    manifest["planner"] = planner_to_json(a.planner);
    manifest["seed_scheme"] = "substream(seed, tag, index) with tags: success-curve, position-sweep, "
                              "walk-tail, walk-corrupt, corrupt, correct, encode";
    manifest["outputs"] = outputs;
    return manifest;
}

void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

std::vector<std::uint32_t> load_pattern(const std::string& path, std::size_t word_length) {
    const Json j = Json::parse(read_text_file(path));
    std::vector<std::uint32_t> positions = j.at("positions").get<std::vector<std::uint32_t>>();
    for (std::uint32_t pos : positions)
        if (pos >= word_length) throw std::runtime_error("pattern: position out of range");
    return positions;
}

}  // namespace

void cmd_build(const RunConfig& config, const std::string& out_dir) {
    BuildArtifacts a = build_from_config(config);
    fs::create_directories(out_dir);
    const fs::path out(out_dir);

    Json inner_json = inner_code_to_json(a.inner);
    Json graph_json = graph_to_json(*a.graph);

    Json tanner;
    tanner["N"] = a.code->length();
    tanner["inner"] = a.inner_hash;
    tanner["graph"] = a.graph_hash;
    tanner["lambda"] = a.lambda;
    tanner["rate_lower_bound"] = 2.0 * a.inner.code->rate() - 1.0;
    if (auto delta0 = a.inner.code->relative_distance()) {
        tanner["delta0"] = *delta0;
        // Distance of the outer code is never computed; the delta0^2/2
        // distance bound is recorded as metadata only.
        tanner["distance_metadata_bound"] = (*delta0) * (*delta0) / 2.0;
    }
    if (a.code->dimension()) tanner["k"] = *a.code->dimension();
    tanner["warnings"] = a.code->warnings();
    tanner["planner"] = planner_to_json(a.planner);
    if (a.geometry) {
        const DimensionBoundReport bound = dimension_bound_check(*a.geometry, a.inner.code->dimension());
        tanner["inner_dimension_bound"] = {{"bound", bound.bound}, {"computed", bound.computed}, {"ok", bound.ok}};
    }

    write_json_file((out / "inner.json").string(), inner_json);
    write_json_file((out / "graph.json").string(), graph_json);
    write_json_file((out / "tanner.json").string(), tanner);
    write_json_file((out / "manifest.json").string(),
                    build_manifest(config, a, {"inner.json", "graph.json", "tanner.json"}));
}

BuildArtifacts load_artifacts(const std::string& dir) {
    const fs::path in(dir);
    BuildArtifacts a;
    const Json inner_json = Json::parse(read_text_file((in / "inner.json").string()));
    const Json graph_json = Json::parse(read_text_file((in / "graph.json").string()));
    const Json tanner_json = Json::parse(read_text_file((in / "tanner.json").string()));

    a.inner = inner_code_from_json(inner_json);
    a.geometry = a.inner.geometry;
    a.graph = graph_from_json(graph_json);
    a.inner_hash = json_hash(inner_json);
    a.graph_hash = json_hash(graph_json);
    if (tanner_json.at("inner").get<std::string>() != a.inner_hash ||
        tanner_json.at("graph").get<std::string>() != a.graph_hash)
        throw std::runtime_error("load_artifacts: tanner.json references different artifacts (hash mismatch)");
    a.lambda = a.graph->second_eigenvalue();
    a.cover = std::make_shared<DoubleCover>(a.graph);
    a.code = std::make_shared<TannerCode>(TannerCode::build(a.inner, a.cover));
    return a;
}

void cmd_encode(const RunConfig& config, const std::string& artifact_dir, const std::string& mode,
                const std::string& message_path, const std::string& word_out) {
    BuildArtifacts a = load_artifacts(artifact_dir);
    std::vector<std::uint8_t> word;
    if (mode == "zero") {
        word = a.code->zero_codeword();
    } else if (mode == "random") {
        a.code->compute_dimension_and_generator();
        Rng rng = substream(config.seed, "encode", 0);
        word = a.code->random_codeword(rng);
    } else if (mode == "message") {
        a.code->compute_dimension_and_generator();
        const Json j = Json::parse(read_text_file(message_path));
        word = a.code->encode(j.at("message").get<std::vector<std::uint32_t>>());
    } else {
        throw std::runtime_error("encode: mode must be zero, random or message");
    }
    write_codeword_file(word_out, a.code->field(), a.graph_hash, word);
}

namespace {

std::vector<std::uint8_t> load_word_checked(const BuildArtifacts& a, const std::string& path) {
    CodewordFile file = read_codeword_file(path);
    if (file.header.at("graph").get<std::string>() != a.graph_hash)
        throw std::runtime_error("codeword file was produced for a different graph (hash mismatch)");
    if (file.word.size() != a.code->length()) throw std::runtime_error("codeword file length mismatch");
    return file.word;
}

}  // namespace

void cmd_corrupt(const RunConfig& config, const std::string& artifact_dir, const std::string& word_in,
                 const std::string& word_out) {
    BuildArtifacts a = load_artifacts(artifact_dir);
    std::vector<std::uint8_t> word = load_word_checked(a, word_in);

    NoiseModel model;
    model.rho = config.rho;
    if (config.noise_model == "pattern") {
        model.kind = NoiseModel::Kind::kPattern;
        model.pattern = load_pattern(config.pattern_path, word.size());
    }
    Rng rng = substream(config.seed, "corrupt", 0);
    CorruptionOutcome outcome = corrupt(word, model, a.code->field(), rng);
    write_codeword_file(word_out, a.code->field(), a.graph_hash, outcome.word);
    Json set_json;
    set_json["positions"] = outcome.positions;
    set_json["count"] = outcome.positions.size();
    write_json_file(word_out + ".corruption.json", set_json);
}

Json cmd_correct(const RunConfig& config, const std::string& artifact_dir, const std::string& word_path,
                 std::uint32_t position, const std::string& truth_path, const std::string& record_out) {
    BuildArtifacts a = load_artifacts(artifact_dir);
    std::vector<std::uint8_t> word = load_word_checked(a, word_path);
    if (position >= a.code->length()) throw std::runtime_error("correct: position out of range");

    const PlannerReport planner = plan_from_config(config, a);
    Rng rng = substream(config.seed, "correct", position);
    const CorrectionResult result = correct(*a.code, word, position, planner.params, rng);

    std::optional<std::uint32_t> truth;
    if (!truth_path.empty()) {
        std::vector<std::uint8_t> truth_word = load_word_checked(a, truth_path);
        truth = truth_word[position];
    }
    Json record = correction_to_json(result, planner.params, planner.feasible, truth);
    if (!record_out.empty()) write_json_file(record_out, record);
    return record;
}

bool cmd_experiment(const RunConfig& config, const std::string& out_dir) {
    BuildArtifacts a = build_from_config(config);
    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    std::vector<std::string> outputs;
    bool pass = true;

    if (config.run_success_curve) {
        const std::vector<SuccessRow> rows =
            success_curve(*a.code, a.planner.params, config.rho_grid, config.trials, config.seed, config.threads);
        write_text_file((out / "success_curve.csv").string(), success_curve_csv(rows));
        outputs.push_back("success_curve.csv");
        if (!monotone_non_increasing(rows)) pass = false;
        for (const auto& row : rows)
            if (row.rho == 0.0 && row.successes != row.trials) pass = false;
    }

    if (config.run_walk_tail) {
        NoiseModel model{NoiseModel::Kind::kRandomPositions, config.walk_rho, {}};
        Rng corrupt_rng = substream(config.seed, "walk-corrupt", 0);
        CorruptionOutcome outcome = corrupt(a.code->zero_codeword(), model, a.code->field(), corrupt_rng);
        const WalkTailReport report = walk_tail_check(*a.cover, outcome.positions, config.walk_gamma,
                                                      config.walk_length, config.walk_trials, a.lambda,
                                                      config.seed, config.threads);
        write_text_file((out / "walk_tail.csv").string(), walk_tail_csv(report));
        outputs.push_back("walk_tail.csv");
        if (!report.pass) pass = false;
    }

    write_json_file((out / "manifest.json").string(), build_manifest(config, a, outputs));
    return pass;
}

bool cmd_walkstats(const RunConfig& config, const std::string& out_dir) {
    RunConfig only_walk = config;
    only_walk.run_success_curve = false;
    only_walk.run_walk_tail = true;
    return cmd_experiment(only_walk, out_dir);
}

bool cmd_spectrum_check(const RunConfig& config, const std::string& out_dir) {
    std::shared_ptr<const RegularGraph> graph;
    if (config.graph_kind == "random")
        graph = std::make_shared<RegularGraph>(RegularGraph::random_regular(config.n, config.d, config.graph_seed));
    else if (config.graph_kind == "complete")
        graph = std::make_shared<RegularGraph>(RegularGraph::complete(config.n));
    else
        graph = std::make_shared<RegularGraph>(RegularGraph::cycle(config.n));

    const EdgeWalkSpectrumReport report = edge_walk_spectrum_check(*graph);
    fs::create_directories(out_dir);
    Json j;
    j["pass"] = report.pass;
    j["base_spectrum"] = report.base_spectrum;
    j["edge_spectrum"] = report.edge_spectrum;
    j["max_residual"] = report.max_residual;
    j["operator_rank"] = report.operator_rank;
    j["shift_block_rank"] = report.shift_block_rank;
    j["n"] = graph->vertex_count();
    j["d"] = graph->degree();
    write_json_file((fs::path(out_dir) / "spectrum.json").string(), j);
    return report.pass;
}

}  // namespace elcc
