#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>

#include "elcc/config.hpp"
#include "elcc/runner.hpp"
#include "elcc/serde.hpp"

using namespace elcc;

namespace {

const char* kSampleConfig = R"({
  "seed": 99,
  "field": {"p": 2, "ell": 2},
  "geometry": {"h": 4, "m": 2, "r": 1},
  "graph": {"kind": "random", "n": 20, "d": 16, "seed": 3},
  "params": {"gamma": 0.25, "zeta": 2.1972245773362196, "c_override": 1},
  "noise": {"model": "random", "rho": 0.01},
  "experiment": {"success_curve": {"rho_grid": [0, 0.01], "trials": 5}},
  "threads": 1
})";

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("elcc_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int counter;
};
int TempDir::counter = 0;

}  // namespace

TEST_CASE("config parses and validates") {
    const RunConfig c = parse_config(kSampleConfig);
    CHECK(c.seed == 99);
    CHECK(c.h == 4);
    CHECK(c.inner_kind == "affine");
    CHECK(c.run_success_curve);
    CHECK(c.rho_grid == std::vector<double>{0.0, 0.01});
    CHECK(c.c_override.has_value());

    // Resolved echo re-parses to the same config.
    const RunConfig round = parse_config(config_to_json(c).dump());
    CHECK(config_to_json(round) == config_to_json(c));
}

TEST_CASE("config errors carry locations") {
    CHECK_THROWS_WITH_AS(parse_config("{\"geometry\": {\"h\": 5}}"), doctest::Contains("/geometry/h"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config(R"({"graph": {"kind": "torus"}})"), doctest::Contains("/graph/kind"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config(R"({"params": {"gamma": 0.7}})"), doctest::Contains("/params/gamma"),
                         std::runtime_error);
    CHECK_THROWS(parse_config("not json at all"));
}

TEST_CASE("field and graph serialization round trips") {
    auto field = make_field(2, 2);
    const Json fj = field_to_json(*field);
    auto back = field_from_json(fj);
    CHECK(back->order() == 4);
    CHECK(back->modulus() == field->modulus());
    CHECK(fj.at("desc") == "GF(2^2)");

    auto graph = std::make_shared<RegularGraph>(RegularGraph::random_regular(12, 4, 5));
    graph->second_eigenvalue();
    const Json gj = graph_to_json(*graph);
    auto graph_back = graph_from_json(gj);
    CHECK(graph_back->vertex_count() == 12);
    CHECK(graph_back->degree() == 4);
    CHECK(graph_back->cached_lambda().has_value());
    for (std::uint32_t v = 0; v < 12; ++v)
        for (std::uint32_t i = 0; i < 4; ++i) CHECK(graph_back->neighbor(v, i) == graph->neighbor(v, i));
    CHECK(json_hash(gj) == json_hash(graph_to_json(*graph_back)));
}

TEST_CASE("inner code serialization rebuilds identically") {
    auto geometry = AffineGeometry::enumerate_flats(4, 2, 1);
    auto inner = build_inner_code(geometry, 2);
    const Json ij = inner_code_to_json(inner);
    const InnerCode back = inner_code_from_json(ij);
    CHECK(back.code->dimension() == inner.code->dimension());
    CHECK(back.code->parity_rows() == inner.code->parity_rows());
    CHECK(json_hash(inner_code_to_json(back)) == json_hash(ij));

    auto parity = build_single_parity_code(2, 6);
    const InnerCode parity_back = inner_code_from_json(inner_code_to_json(parity));
    CHECK(parity_back.code->length() == 6);
}

TEST_CASE("codeword files round trip and validate") {
    TempDir tmp;
    auto field = make_field(2, 1);
    std::vector<std::uint8_t> word{0, 1, 1, 0, 1};
    const std::string path = (tmp.path / "w.cw").string();
    write_codeword_file(path, *field, "abcd1234abcd1234", word);
    const CodewordFile file = read_codeword_file(path);
    CHECK(file.word == word);
    CHECK(file.header.at("graph") == "abcd1234abcd1234");
    CHECK(file.header.at("N") == 5);
}

TEST_CASE("build, encode, corrupt and correct through the runner") {
    TempDir tmp;
    RunConfig config = parse_config(kSampleConfig);
    const std::string dir = tmp.path.string();
    cmd_build(config, dir);
    CHECK(std::filesystem::exists(tmp.path / "inner.json"));
    CHECK(std::filesystem::exists(tmp.path / "graph.json"));
    CHECK(std::filesystem::exists(tmp.path / "tanner.json"));
    CHECK(std::filesystem::exists(tmp.path / "manifest.json"));

    const Json tanner = Json::parse(read_text_file((tmp.path / "tanner.json").string()));
    CHECK(tanner.at("N") == 320);
    CHECK(tanner.at("planner").at("feasible") == false);  // desk scale

    const BuildArtifacts loaded = load_artifacts(dir);
    CHECK(loaded.code->length() == 320);

    const std::string zero_path = (tmp.path / "zero.cw").string();
    cmd_encode(config, dir, "zero", "", zero_path);
    const std::string bad_path = (tmp.path / "bad.cw").string();
    cmd_corrupt(config, dir, zero_path, bad_path);
    const Json set_json = Json::parse(read_text_file(bad_path + ".corruption.json"));
    CHECK(set_json.at("count") == 3);  // floor(0.01 * 320)

    const Json record = cmd_correct(config, dir, bad_path, 5, zero_path, "");
    CHECK(record.at("truth") == 0);
    CHECK(record.at("symbol") == 0);
    // n=20, d=16: L1 = 4, C override 1 -> L2 = 4, padded arity 4.
    CHECK(record.at("queries").at("leaf_reads") == 65536);

    // Identical seeds give identical records; different seeds may differ.
    const Json again = cmd_correct(config, dir, bad_path, 5, zero_path, "");
    CHECK(record == again);
}

TEST_CASE("experiment runs are byte-identical across reruns") {
    TempDir tmp1;
    TempDir tmp2;
    RunConfig config = parse_config(kSampleConfig);
    config.n = 18;
    const bool pass1 = cmd_experiment(config, tmp1.path.string());
    const bool pass2 = cmd_experiment(config, tmp2.path.string());
    CHECK(pass1 == pass2);
    for (const char* name : {"success_curve.csv", "manifest.json"}) {
        const std::string a = read_text_file((tmp1.path / name).string());
        const std::string b = read_text_file((tmp2.path / name).string());
        CHECK(a == b);
        CHECK_FALSE(a.empty());
    }
}

TEST_CASE("spectrum check subcommand") {
    TempDir tmp;
    RunConfig config;
    config.graph_kind = "complete";
    config.n = 4;
    config.d = 3;
    CHECK(cmd_spectrum_check(config, tmp.path.string()));
    const Json j = Json::parse(read_text_file((tmp.path / "spectrum.json").string()));
    CHECK(j.at("pass") == true);
    CHECK(j.at("n") == 4);
}

TEST_CASE("mixing artifacts is rejected by hash checks") {
    TempDir tmp_a;
    TempDir tmp_b;
    RunConfig config = parse_config(kSampleConfig);
    cmd_build(config, tmp_a.path.string());
    RunConfig other = config;
    other.graph_seed = 777;
    cmd_build(other, tmp_b.path.string());

    const std::string zero_a = (tmp_a.path / "zero.cw").string();
    cmd_encode(config, tmp_a.path.string(), "zero", "", zero_a);
    // Correcting with artifacts from the other build must fail loudly.
    CHECK_THROWS(cmd_correct(other, tmp_b.path.string(), zero_a, 0, "", ""));
}
