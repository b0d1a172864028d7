#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace elcc {

/// Resolved run configuration. One root seed; every randomized stage draws
/// from a named substream of it, so reruns of an identical manifest are
/// byte-for-byte reproducible and thread count never changes results.
struct RunConfig {
    std::uint64_t seed = 1;

    // inner code
    std::string inner_kind = "affine";  // "affine" | "single_parity"
    std::uint32_t p = 2;
    std::uint32_t ell = 2;
    std::uint32_t h = 4;
    std::uint32_t m = 2;
    std::uint32_t r = 1;
    std::uint32_t single_parity_d = 0;

    // graph
    std::string graph_kind = "random";  // "random" | "complete" | "cycle"
    std::uint32_t n = 64;
    std::uint32_t d = 16;
    std::uint64_t graph_seed = 1;

    // correction parameters
    double gamma = 0.25;
    double zeta = 2.1972245773362196;  // 2 ln 3
    std::optional<std::uint32_t> c_override;
    bool compute_dimension = false;
    bool compute_inner_distance = true;

    // noise
    std::string noise_model = "random";  // "random" | "pattern"
    double rho = 0.0;
    std::string pattern_path;

    // experiment suites (enabled by presence in the config file)
    bool run_success_curve = false;
    std::vector<double> rho_grid;
    std::uint64_t trials = 100;
    bool run_walk_tail = false;
    double walk_gamma = 0.25;
    std::uint32_t walk_length = 40;
    std::uint64_t walk_trials = 100000;
    double walk_rho = 0.1;

    unsigned threads = 1;
};

/// Parses and validates a JSON config. Parse errors carry the byte offset;
/// validation errors name the offending JSON pointer.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Fully resolved echo of the configuration (for manifests).
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace elcc
