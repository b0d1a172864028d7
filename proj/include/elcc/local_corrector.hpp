#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elcc/tanner_code.hpp"

namespace elcc {

/// Parameters for one correction run. L1 is the outer tree depth (even, at
/// least log(n)/log(d/4) when planned), L2 = C * L1 the subtree depth used to
/// repair each outer leaf.
struct CorrectionParams {
    double gamma = 0.25;
    double zeta = 2.0;
    std::uint32_t L1 = 2;
    std::uint32_t L2 = 2;
    std::uint32_t C = 1;
};

/// Feasibility report from the parameter planner. The depth choices are
/// always produced; the feasibility flags mirror the error-rate and expansion
/// preconditions evaluated with the measured lambda and are advisory.
struct PlannerReport {
    CorrectionParams params;
    std::uint32_t q0 = 0;       // raw inner query count
    std::uint32_t q_padded = 0; // tree arity after padding
    std::uint32_t d = 0;
    std::uint32_t n = 0;
    double lambda = 0.0;
    double rho = 0.0;
    double threshold = 0.0;       // gamma * (e^zeta * q0)^(-1/gamma)
    double rho_bound = 0.0;       // threshold - 2*lambda
    bool rho_feasible = false;    // rho < rho_bound
    bool expansion_feasible = false;  // threshold > 8*lambda
    bool feasible = false;
    double epsilon = 0.0;             // query exponent using the padded count
    double predicted_leaf_reads = 0.0;
    std::vector<std::string> warnings;
};

PlannerReport plan_parameters(double rho, std::uint32_t q0, std::uint32_t q_padded, std::uint32_t d,
                              double lambda, double gamma, double zeta, std::uint32_t n,
                              std::optional<std::uint32_t> c_override = std::nullopt);

/// Smallest admissible outer depth: log(n)/log(d/4) rounded up to an even
/// integer. Requires d > 4.
std::uint32_t minimum_outer_depth(std::uint32_t n, std::uint32_t d);

/// Complete arity^depth query tree in level order (children of node k are
/// arity*k + 1 + j). Nodes carry cover edge ids; internal nodes remember the
/// inner position they reconstruct and the provenance of their query set.
/// Building a tree documents positions to read but performs no reads.
struct QueryTree {
    std::uint32_t arity = 1;
    std::uint32_t depth = 0;
    std::uint32_t real_count = 0;             // non-pad children per internal node
    std::vector<std::uint32_t> edges;         // all nodes
    std::vector<std::uint32_t> positions;     // internal nodes only
    std::vector<std::uint32_t> provenance;    // internal nodes only

    std::size_t node_count() const { return edges.size(); }
    std::size_t internal_count() const { return positions.size(); }
    std::size_t leaf_count() const { return node_count() - internal_count(); }
    static std::uint64_t nodes_for(std::uint32_t arity, std::uint32_t depth);
    static std::uint64_t leaves_for(std::uint32_t arity, std::uint32_t depth);
};

/// Same shape as the QueryTree that produced it, with symbols filled in.
struct EvaluatedTree {
    std::uint32_t arity = 1;
    std::uint32_t depth = 0;
    std::uint32_t real_count = 0;
    std::vector<std::uint8_t> symbols;
    std::vector<std::uint32_t> positions;
    std::vector<std::uint32_t> provenance;

    std::size_t node_count() const { return symbols.size(); }
    std::size_t internal_count() const { return positions.size(); }
};

/// Builds the query tree rooted at edge e0: the root's active vertex is the
/// left endpoint, the active side alternates with depth, and the children of
/// a node are the scheme's queries at the node's active vertex. Each
/// root-to-leaf node sequence is a random walk on the cover.
QueryTree make_tree(const TannerCode& code, const SmoothReconstruction& scheme, std::uint32_t e0,
                    std::uint32_t depth, Rng& rng);

/// Reads the word at every tree node. Query count = node count.
EvaluatedTree evaluate_tree(const QueryTree& tree, const std::vector<std::uint8_t>& word);

/// Max over root-to-leaf paths of the Hamming distance along the path.
/// Exact as a fraction: max_mismatch out of path_length = depth + 1 nodes.
struct TreeDistance {
    std::uint32_t max_mismatch = 0;
    std::uint32_t path_length = 1;
    double value() const { return double(max_mismatch) / double(path_length); }
};
TreeDistance tree_distance(const EvaluatedTree& a, const EvaluatedTree& b);

/// True iff every internal label equals the reconstruction of its children.
bool locally_consistent(const EvaluatedTree& tau, const SmoothReconstruction& scheme);

inline constexpr std::uint32_t kScoreInfinity = 1u << 20;

/// Per-symbol scores of the min-max DP: unnormalized[a] is the smallest
/// worst-path disagreement (root included) between tau and any locally
/// consistent labeling whose root is a; kScoreInfinity when no such labeling
/// exists. normalized() divides by the path length depth+1.
struct ScoreTable {
    std::vector<std::uint32_t> unnormalized;
    std::uint32_t depth = 0;
    std::uint32_t chosen = 0;
    bool ambiguous = false;
    double normalized(std::uint32_t a) const { return double(unnormalized[a]) / double(depth + 1); }
};

enum class DpMode {
    kAuto,        // sum-threshold when the scheme allows it, else enumeration
    kEnumerate,   // bucket child labelings through the reconstructor
    kSumThreshold // feasibility search over field sums (negated-sum schemes)
};

/// Bottom-up min-max DP over locally consistent labelings (Score computation
/// plus argmin). Ties are broken by the canonical order of a - tau(root),
/// which keeps the choice translation-equivariant; ties set `ambiguous`.
ScoreTable correct_subtree(const EvaluatedTree& tau, const SmoothReconstruction& scheme,
                           DpMode mode = DpMode::kAuto);

/// Independent oracle: enumerates every locally consistent labeling (leaf
/// labelings determine internal labels) and minimizes the worst-path
/// disagreement directly. Guarded to |alphabet|^leaves <= 2^22.
ScoreTable score_bruteforce(const EvaluatedTree& tau, const SmoothReconstruction& scheme);

/// One local correction trial record.
struct CorrectionResult {
    std::uint32_t position = 0;
    std::uint32_t symbol = 0;
    std::uint64_t leaf_reads = 0;      // bookkeeping per outer leaf slot: arity^(L1+L2)
    std::uint64_t symbol_reads = 0;    // symbols actually read (deduplicated subtrees)
    std::uint32_t distinct_subtrees = 0;
    std::uint32_t ambiguous_subtrees = 0;
    bool ambiguous = false;
    ScoreTable sample_scores;          // DP table of the first repaired subtree
};

/// Algorithm: build the outer tree at e0, repair every distinct leaf edge
/// with a depth-L2 evaluated subtree through the DP, then fold the corrected
/// leaves back to the root with the inner reconstructor.
CorrectionResult correct(const TannerCode& code, const std::vector<std::uint8_t>& word, std::uint32_t e0,
                         const CorrectionParams& params, Rng& rng);

}  // namespace elcc
