#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elcc/local_corrector.hpp"
#include "elcc/stats.hpp"
#include "elcc/tanner_code.hpp"

namespace elcc {

/// Corruption model: floor(rho*N) distinct positions (random or from a fixed
/// pattern), each replaced by a uniformly random different symbol.
struct NoiseModel {
    enum class Kind { kRandomPositions, kPattern };
    Kind kind = Kind::kRandomPositions;
    double rho = 0.0;
    std::vector<std::uint32_t> pattern;  // used by kPattern
};

struct CorruptionOutcome {
    std::vector<std::uint8_t> word;
    std::vector<std::uint32_t> positions;  // sorted
};

CorruptionOutcome corrupt(const std::vector<std::uint8_t>& word, const NoiseModel& model, const Field& field,
                          Rng& rng);

/// One row of the success curve CSV
/// (rho,successes,trials,mean_queries,wilson_low).
struct SuccessRow {
    double rho = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double mean_queries = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 1.0;
    bool leaf_reads_uniform = true;     // every trial read the same leaf count
    std::uint64_t leaf_reads_value = 0;
    std::uint64_t ambiguous_trials = 0;
};

/// Monte-Carlo success rate of local correction on the corrupted zero
/// codeword at uniformly random positions, one row per grid value. Each trial
/// draws from its own substream of `seed`, so results are independent of
/// scheduling and thread count.
std::vector<SuccessRow> success_curve(const TannerCode& code, const CorrectionParams& params,
                                      const std::vector<double>& rho_grid, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads = 1);

/// Success increases with rho are flagged unless the Wilson intervals
/// overlap: fails iff some higher-rho row has wilson_low above a lower-rho
/// row's wilson_high.
bool monotone_non_increasing(const std::vector<SuccessRow>& rows);

/// Per-position correction outcome over a fixed corrupted word; used for
/// exhaustive sweeps. Truth is the uncorrupted word.
struct SweepOutcome {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    bool leaf_reads_uniform = true;
    std::uint64_t leaf_reads_value = 0;
};
SweepOutcome sweep_positions(const TannerCode& code, const CorrectionParams& params,
                             const std::vector<std::uint8_t>& word, const std::vector<std::uint8_t>& truth,
                             const std::vector<std::uint32_t>& positions, std::uint64_t seed,
                             unsigned threads = 1);

/// Empirical tail of corrupted-edge hits along random walks against the KL
/// bound exp(-L * D(gamma || rho + 2 lambda)). When rho + 2 lambda >= gamma
/// the bound is vacuous (reported as 1) and flagged. Walks start from a
/// uniformly drawn left vertex (a point mass per walk, noted in the report).
struct WalkTailReport {
    double gamma = 0.0;
    std::uint32_t walk_length = 0;
    std::uint64_t trials = 0;
    double rho = 0.0;
    double lambda = 0.0;
    double delta = 0.0;        // rho + 2*lambda
    bool bound_vacuous = false;
    bool rho_above_6lambda = false;  // advisory hypothesis of the tail bound
    double empirical_tail = 0.0;
    double kl_bound = 1.0;
    double std_error = 0.0;
    bool pass = false;  // empirical <= bound + 3 standard errors
};
WalkTailReport walk_tail_check(const DoubleCover& cover, const std::vector<std::uint32_t>& corrupted_edges,
                               double gamma, std::uint32_t walk_length, std::uint64_t trials,
                               double lambda, std::uint64_t seed, unsigned threads = 1);

/// CSV renderings with the fixed headers.
std::string success_curve_csv(const std::vector<SuccessRow>& rows);
std::string walk_tail_csv(const WalkTailReport& report);

}  // namespace elcc
