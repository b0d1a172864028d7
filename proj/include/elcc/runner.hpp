#pragma once

#include <memory>
#include <string>

#include "elcc/config.hpp"
#include "elcc/experiment.hpp"
#include "elcc/serde.hpp"

namespace elcc {

/// Everything one run needs, assembled from a config.
struct BuildArtifacts {
    std::shared_ptr<const AffineGeometry> geometry;  // null for single-parity inner
    InnerCode inner;
    std::shared_ptr<const RegularGraph> graph;
    std::shared_ptr<const DoubleCover> cover;
    std::shared_ptr<TannerCode> code;
    PlannerReport planner;
    double lambda = 0.0;
    std::string inner_hash;
    std::string graph_hash;
};

BuildArtifacts build_from_config(const RunConfig& config);
PlannerReport plan_from_config(const RunConfig& config, const BuildArtifacts& artifacts);

Json planner_to_json(const PlannerReport& report);
Json correction_to_json(const CorrectionResult& result, const CorrectionParams& params, bool feasible,
                        std::optional<std::uint32_t> truth);

/// Subcommand bodies shared by the CLI, the acceptance suite and the python
/// bindings. They throw on validation problems (exit code 1 at the CLI) and
/// return false when an enabled property suite fails (exit code 2).
void cmd_build(const RunConfig& config, const std::string& out_dir);
BuildArtifacts load_artifacts(const std::string& dir);

void cmd_encode(const RunConfig& config, const std::string& artifact_dir, const std::string& mode,
                const std::string& message_path, const std::string& word_out);
void cmd_corrupt(const RunConfig& config, const std::string& artifact_dir, const std::string& word_in,
                 const std::string& word_out);
Json cmd_correct(const RunConfig& config, const std::string& artifact_dir, const std::string& word_path,
                 std::uint32_t position, const std::string& truth_path, const std::string& record_out);
bool cmd_experiment(const RunConfig& config, const std::string& out_dir);
bool cmd_walkstats(const RunConfig& config, const std::string& out_dir);
bool cmd_spectrum_check(const RunConfig& config, const std::string& out_dir);

}  // namespace elcc
