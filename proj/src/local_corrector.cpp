#include "elcc/local_corrector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace elcc {

std::uint64_t QueryTree::nodes_for(std::uint32_t arity, std::uint32_t depth) {
    if (arity == 1) return depth + 1;
    std::uint64_t total = 0, level = 1;
    for (std::uint32_t l = 0; l <= depth; ++l) {
        total += level;
        level *= arity;
    }
    return total;
}

std::uint64_t QueryTree::leaves_for(std::uint32_t arity, std::uint32_t depth) {
    std::uint64_t leaves = 1;
    for (std::uint32_t l = 0; l < depth; ++l) leaves *= arity;
    return leaves;
}

std::uint32_t minimum_outer_depth(std::uint32_t n, std::uint32_t d) {
    if (d <= 4) throw std::invalid_argument("minimum_outer_depth: requires degree d > 4");
    if (n < 2) throw std::invalid_argument("minimum_outer_depth: requires n >= 2");
    const double x = std::log(double(n)) / std::log(double(d) / 4.0);
    auto depth = static_cast<std::uint32_t>(std::ceil(x - 1e-9));
    if (depth < 1) depth = 1;
    if (depth % 2 != 0) ++depth;
    return depth;
}

PlannerReport plan_parameters(double rho, std::uint32_t q0, std::uint32_t q_padded, std::uint32_t d,
                              double lambda, double gamma, double zeta, std::uint32_t n,
                              std::optional<std::uint32_t> c_override) {
    if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("plan_parameters: gamma must lie in (0, 1/2)");
    if (!(zeta > gamma)) throw std::invalid_argument("plan_parameters: zeta must exceed gamma");
    if (rho < 0.0 || rho >= 1.0) throw std::invalid_argument("plan_parameters: rho must lie in [0, 1)");
    if (q0 < 1 || q_padded < q0) throw std::invalid_argument("plan_parameters: bad query counts");

    PlannerReport report;
    report.q0 = q0;
    report.q_padded = q_padded;
    report.d = d;
    report.n = n;
    report.lambda = lambda;
    report.rho = rho;

    report.params.gamma = gamma;
    report.params.zeta = zeta;
    report.params.L1 = minimum_outer_depth(n, d);
    const double c_formula = (1.0 + std::log(double(q0))) / (zeta - gamma);
    report.params.C = c_override ? *c_override : static_cast<std::uint32_t>(std::ceil(c_formula)) + 1;
    if (report.params.C < 1) report.params.C = 1;
    report.params.L2 = report.params.C * report.params.L1;

    report.threshold = gamma * std::pow(std::exp(zeta) * double(q0), -1.0 / gamma);
    report.rho_bound = report.threshold - 2.0 * lambda;
    report.rho_feasible = rho < report.rho_bound;
    report.expansion_feasible = report.threshold > 8.0 * lambda;
    report.feasible = report.rho_feasible && report.expansion_feasible;
    report.epsilon = (1.0 + (std::log(double(q_padded)) + 1.0) / (zeta - gamma)) * std::log(double(q_padded)) /
                     std::log(double(d) / 4.0);
    report.predicted_leaf_reads = std::pow(double(q_padded), double(report.params.L1 + report.params.L2));

    if (!report.rho_feasible)
        report.warnings.push_back("rho exceeds the admissible error bound for the measured lambda");
    if (!report.expansion_feasible)
        report.warnings.push_back("expansion precondition fails: threshold <= 8*lambda");
    if (c_override && *c_override < static_cast<std::uint32_t>(std::ceil(c_formula)) + 1)
        report.warnings.push_back("C override below the planned depth ratio; failure target not guaranteed");
    return report;
}

namespace {

struct CoverNav {
    const DoubleCover* cover;
    std::uint32_t d;

    std::uint32_t active_vertex(std::uint32_t side, std::uint32_t edge) const {
        return side == 0 ? edge / d : cover->right_vertex(edge);
    }
    std::uint32_t active_position(std::uint32_t side, std::uint32_t edge) const {
        return side == 0 ? edge % d : cover->right_port(edge);
    }
};

void build_tree_into(QueryTree& tree, const TannerCode& code, const SmoothReconstruction& scheme,
                     std::uint32_t e0, std::uint32_t depth, Rng& rng) {
    const DoubleCover& cover = code.cover();
    if (e0 >= cover.edge_count()) throw std::out_of_range("make_tree: edge id out of range");
    const std::uint32_t arity = scheme.query_count();
    const std::uint64_t nodes = QueryTree::nodes_for(arity, depth);
    const std::uint64_t internal = depth == 0 ? 0 : QueryTree::nodes_for(arity, depth - 1);

    tree.arity = arity;
    tree.depth = depth;
    tree.real_count = scheme.real_count();
    tree.edges.resize(nodes);
    tree.positions.resize(internal);
    tree.provenance.resize(internal);
    tree.edges[0] = e0;

    CoverNav nav{&cover, cover.base().degree()};
    std::vector<std::uint32_t> queries(arity);

    std::uint64_t level_start = 0, level_size = 1;
    for (std::uint32_t level = 0; level < depth; ++level) {
        const std::uint32_t side = level & 1;
        for (std::uint64_t k = level_start; k < level_start + level_size; ++k) {
            const std::uint32_t edge = tree.edges[k];
            const std::uint32_t vertex = nav.active_vertex(side, edge);
            const std::uint32_t position = nav.active_position(side, edge);
            tree.positions[k] = position;
            tree.provenance[k] = scheme.sample_into(position, rng, queries.data());
            const std::uint64_t child_base = std::uint64_t(arity) * k + 1;
            for (std::uint32_t j = 0; j < arity; ++j)
                tree.edges[child_base + j] = cover.incident_edge(side, vertex, queries[j]);
        }
        level_start += level_size;
        level_size *= arity;
    }
}

void evaluate_into(EvaluatedTree& tau, const QueryTree& tree, const std::vector<std::uint8_t>& word) {
    tau.arity = tree.arity;
    tau.depth = tree.depth;
    tau.real_count = tree.real_count;
    tau.symbols.resize(tree.node_count());
    const std::uint32_t* edges = tree.edges.data();
    std::uint8_t* symbols = tau.symbols.data();
    for (std::size_t k = 0; k < tree.node_count(); ++k) symbols[k] = word[edges[k]];
    tau.positions = tree.positions;
    tau.provenance = tree.provenance;
}

/// Dense field tables for the DP hot path (alphabet of order <= 64).
struct SymbolOps {
    const Field* field;
    std::uint32_t order;
    bool fast;
    std::uint8_t add_table[64 * 64];
    std::uint8_t neg_table[64];

    explicit SymbolOps(const Field& f) : field(&f), order(f.order()), fast(f.order() <= 64) {
        if (fast) {
            for (std::uint32_t a = 0; a < order; ++a) {
                neg_table[a] = static_cast<std::uint8_t>(f.neg(a));
                for (std::uint32_t b = 0; b < order; ++b)
                    add_table[a * order + b] = static_cast<std::uint8_t>(f.add(a, b));
            }
        }
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        return fast ? add_table[a * order + b] : field->add(a, b);
    }
    std::uint32_t neg(std::uint32_t a) const { return fast ? neg_table[a] : field->neg(a); }
};

bool consistent_negated_sum(const EvaluatedTree& tau, const SymbolOps& ops) {
    const std::size_t internal = tau.internal_count();
    const std::uint32_t arity = tau.arity;
    const std::uint32_t real = tau.real_count;
    const std::uint8_t* sym = tau.symbols.data();
    for (std::size_t k = 0; k < internal; ++k) {
        const std::size_t child = arity * k + 1;
        std::uint32_t acc = 0;
        for (std::uint32_t r = 0; r < real; ++r) acc = ops.add(acc, sym[child + r]);
        if (ops.neg(acc) != sym[k]) return false;
    }
    return true;
}

bool consistent_generic(const EvaluatedTree& tau, const SmoothReconstruction& scheme) {
    const std::size_t internal = tau.internal_count();
    const std::uint32_t arity = tau.arity;
    std::vector<std::uint32_t> values(arity);
    for (std::size_t k = 0; k < internal; ++k) {
        const std::size_t child = arity * k + 1;
        for (std::uint32_t j = 0; j < arity; ++j) values[j] = tau.symbols[child + j];
        if (scheme.reconstruct(values, tau.positions[k], tau.provenance[k]) != tau.symbols[k]) return false;
    }
    return true;
}

void finalize_scores(ScoreTable& table, const EvaluatedTree& tau, const SymbolOps& ops) {
    const std::uint32_t order = ops.order;
    const std::uint32_t root_symbol = tau.symbols[0];
    for (std::uint32_t a = 0; a < order; ++a) {
        if (table.unnormalized[a] >= kScoreInfinity) {
            table.unnormalized[a] = kScoreInfinity;
        } else if (a != root_symbol) {
            table.unnormalized[a] += 1;
        }
    }
    // Argmin; ties resolved by the canonical order of (a - root symbol) so the
    // decision commutes with codeword translation. Ties are flagged.
    std::uint32_t best = kScoreInfinity + 1;
    std::uint32_t chosen = root_symbol;
    for (std::uint32_t idx = 0; idx < order; ++idx) {
        const std::uint32_t a = ops.add(root_symbol, idx);
        if (table.unnormalized[a] < best) {
            best = table.unnormalized[a];
            chosen = a;
        }
    }
    std::uint32_t hits = 0;
    for (std::uint32_t a = 0; a < order; ++a) hits += (table.unnormalized[a] == best);
    table.chosen = chosen;
    table.ambiguous = hits > 1;
}

ScoreTable dp_scores(const EvaluatedTree& tau, const SmoothReconstruction& scheme, DpMode mode,
                     const SymbolOps& ops) {
    const std::uint32_t order = ops.order;
    const std::uint32_t arity = tau.arity;
    const std::uint32_t real = tau.real_count;
    const std::size_t internal = tau.internal_count();
    const std::uint8_t* sym = tau.symbols.data();

    ScoreTable table;
    table.depth = tau.depth;
    table.unnormalized.assign(order, 0);
    if (internal == 0) {
        finalize_scores(table, tau, ops);
        return table;
    }

    bool use_sum = false;
    switch (mode) {
        case DpMode::kAuto:
            use_sum = scheme.is_negated_sum() && ops.fast;
            break;
        case DpMode::kSumThreshold:
            if (!scheme.is_negated_sum() || !ops.fast)
                throw std::invalid_argument("correct_subtree: sum-threshold DP needs a negated-sum scheme, order <= 64");
            use_sum = true;
            break;
        case DpMode::kEnumerate:
            use_sum = false;
            break;
    }

    std::vector<std::uint32_t> best(internal * order, kScoreInfinity);

    // Depth of each internal level, for the threshold cap.
    std::vector<std::uint32_t> level_of(internal);
    {
        std::uint64_t start = 0, size = 1;
        for (std::uint32_t level = 0; start < internal; ++level) {
            const std::uint64_t end = std::min<std::uint64_t>(internal, start + size);
            for (std::uint64_t k = start; k < end; ++k) level_of[k] = level;
            start += size;
            size *= arity;
        }
    }

    // For negated-sum schemes, fully consistent subtrees have a closed-form
    // table: 0 at the observed label and the subtree depth elsewhere (any
    // consistent relabeling with a different root disagrees with the subtree
    // along an entire path, and changing one real child per level meets that
    // bound). The DP then only visits nodes whose subtree is inconsistent.
    std::vector<std::uint8_t> subtree_ok;
    if (use_sum) {
        subtree_ok.assign(internal, 0);
        for (std::size_t k = internal; k-- > 0;) {
            const std::size_t child_base = std::size_t(arity) * k + 1;
            std::uint32_t acc = 0;
            bool ok = true;
            for (std::uint32_t r = 0; r < arity; ++r) {
                const std::size_t child = child_base + r;
                if (r < real) acc = ops.add_table[acc * order + sym[child]];
                if (child < internal && !subtree_ok[child]) ok = false;
            }
            subtree_ok[k] = ok && ops.neg_table[acc] == sym[k];
        }
    }

    std::vector<std::uint32_t> cost(std::size_t(arity) * order);
    std::vector<std::uint32_t> values(arity);

    for (std::size_t k = internal; k-- > 0;) {
        if (use_sum && subtree_ok[k]) continue;
        const std::size_t child_base = std::size_t(arity) * k + 1;
        // Child label costs: best of the child subtree plus the mismatch
        // indicator against the observed child symbol.
        for (std::uint32_t r = 0; r < arity; ++r) {
            const std::size_t child = child_base + r;
            const std::uint8_t observed = sym[child];
            if (child >= internal) {
                for (std::uint32_t b = 0; b < order; ++b) cost[r * order + b] = (observed != b);
            } else if (use_sum && subtree_ok[child]) {
                const std::uint32_t off = tau.depth - level_of[child] + 1;
                for (std::uint32_t b = 0; b < order; ++b) cost[r * order + b] = (observed == b) ? 0 : off;
            } else {
                const std::uint32_t* child_best = &best[child * order];
                for (std::uint32_t b = 0; b < order; ++b) {
                    const std::uint32_t base = child_best[b];
                    cost[r * order + b] = base >= kScoreInfinity ? kScoreInfinity : base + (observed != b);
                }
            }
        }
        std::uint32_t* node_best = &best[k * order];

        if (use_sum) {
            // Threshold feasibility: find the least t for which some labeling
            // with child costs all <= t reaches each target sum. Pad children
            // carry no sum constraint; they only need one affordable label.
            std::uint32_t t_lo = 0;
            for (std::uint32_t r = 0; r < arity; ++r) {
                std::uint32_t mn = kScoreInfinity;
                for (std::uint32_t b = 0; b < order; ++b) mn = std::min(mn, cost[r * order + b]);
                t_lo = std::max(t_lo, mn);
            }
            const std::uint32_t cap = tau.depth - level_of[k];
            std::uint32_t unfilled = order;
            for (std::uint32_t t = t_lo; unfilled > 0 && t <= cap; ++t) {
                std::uint64_t achievable = 1;  // sum set {0}
                for (std::uint32_t r = 0; r < real; ++r) {
                    std::uint64_t allowed = 0;
                    for (std::uint32_t b = 0; b < order; ++b)
                        if (cost[r * order + b] <= t) allowed |= 1ull << b;
                    std::uint64_t next = 0;
                    std::uint64_t acc = achievable;
                    while (acc) {
                        const int s = __builtin_ctzll(acc);
                        acc &= acc - 1;
                        std::uint64_t al = allowed;
                        while (al) {
                            const int b = __builtin_ctzll(al);
                            al &= al - 1;
                            next |= 1ull << ops.add_table[s * order + b];
                        }
                    }
                    achievable = next;
                    if (achievable == 0) break;
                }
                if (achievable == 0) continue;
                for (std::uint32_t a = 0; a < order; ++a) {
                    if (node_best[a] == kScoreInfinity && ((achievable >> ops.neg_table[a]) & 1)) {
                        node_best[a] = t;
                        --unfilled;
                    }
                }
            }
        } else {
            // Generic enumeration of child labelings, bucketed by the
            // reconstructor's output at this node.
            const std::uint32_t position = tau.positions[k];
            const std::uint32_t provenance = tau.provenance[k];
            std::fill(values.begin(), values.end(), 0);
            while (true) {
                std::uint32_t worst = 0;
                for (std::uint32_t r = 0; r < arity; ++r)
                    worst = std::max(worst, cost[r * order + values[r]]);
                if (worst < kScoreInfinity) {
                    const std::uint32_t a = scheme.reconstruct(values, position, provenance);
                    node_best[a] = std::min(node_best[a], worst);
                }
                std::uint32_t r = 0;
                while (r < arity && values[r] + 1 == order) values[r++] = 0;
                if (r == arity) break;
                ++values[r];
            }
        }
    }

    if (use_sum && subtree_ok[0]) {
        for (std::uint32_t a = 0; a < order; ++a)
            table.unnormalized[a] = (a == sym[0]) ? 0 : tau.depth;
    } else {
        for (std::uint32_t a = 0; a < order; ++a) table.unnormalized[a] = best[a];
    }
    finalize_scores(table, tau, ops);
    return table;
}

}  // namespace

QueryTree make_tree(const TannerCode& code, const SmoothReconstruction& scheme, std::uint32_t e0,
                    std::uint32_t depth, Rng& rng) {
    QueryTree tree;
    build_tree_into(tree, code, scheme, e0, depth, rng);
    return tree;
}

EvaluatedTree evaluate_tree(const QueryTree& tree, const std::vector<std::uint8_t>& word) {
    EvaluatedTree tau;
    evaluate_into(tau, tree, word);
    return tau;
}

TreeDistance tree_distance(const EvaluatedTree& a, const EvaluatedTree& b) {
    if (a.arity != b.arity || a.depth != b.depth || a.node_count() != b.node_count())
        throw std::invalid_argument("tree_distance: shape mismatch");
    TreeDistance out;
    out.path_length = a.depth + 1;
    const std::size_t nodes = a.node_count();
    const std::size_t internal = a.internal_count();
    std::vector<std::uint32_t> mismatches(nodes, 0);
    mismatches[0] = a.symbols[0] != b.symbols[0];
    for (std::size_t k = 1; k < nodes; ++k) {
        const std::size_t parent = (k - 1) / a.arity;
        mismatches[k] = mismatches[parent] + (a.symbols[k] != b.symbols[k]);
    }
    if (internal == 0) {
        out.max_mismatch = mismatches[0];
        return out;
    }
    for (std::size_t k = internal; k < nodes; ++k) out.max_mismatch = std::max(out.max_mismatch, mismatches[k]);
    return out;
}

bool locally_consistent(const EvaluatedTree& tau, const SmoothReconstruction& scheme) {
    const SymbolOps ops(scheme.code().field());
    if (scheme.is_negated_sum() && ops.fast) return consistent_negated_sum(tau, ops);
    return consistent_generic(tau, scheme);
}

ScoreTable correct_subtree(const EvaluatedTree& tau, const SmoothReconstruction& scheme, DpMode mode) {
    const SymbolOps ops(scheme.code().field());
    if (ops.order > 256) throw std::invalid_argument("correct_subtree: alphabet order above 256 unsupported");
    if (!ops.fast && mode != DpMode::kEnumerate && scheme.is_negated_sum())
        mode = DpMode::kEnumerate;
    return dp_scores(tau, scheme, mode, ops);
}

ScoreTable score_bruteforce(const EvaluatedTree& tau, const SmoothReconstruction& scheme) {
    const SymbolOps ops(scheme.code().field());
    const std::uint32_t order = ops.order;
    const std::size_t nodes = tau.node_count();
    const std::size_t internal = tau.internal_count();
    const std::size_t leaves = nodes - internal;
    const double enumeration = double(leaves) * std::log2(double(order));
    if (enumeration > 22.0) throw std::invalid_argument("score_bruteforce: |alphabet|^leaves above the 2^22 guard");

    ScoreTable table;
    table.depth = tau.depth;
    table.unnormalized.assign(order, kScoreInfinity);

    std::vector<std::uint8_t> labels(nodes, 0);
    std::vector<std::uint32_t> mismatches(nodes, 0);
    std::vector<std::uint32_t> values(tau.arity);
    std::vector<std::uint8_t> leaf_labels(leaves, 0);

    while (true) {
        for (std::size_t i = 0; i < leaves; ++i) labels[internal + i] = leaf_labels[i];
        // Internal labels are forced bottom-up by local consistency.
        for (std::size_t k = internal; k-- > 0;) {
            const std::size_t child_base = std::size_t(tau.arity) * k + 1;
            for (std::uint32_t j = 0; j < tau.arity; ++j) values[j] = labels[child_base + j];
            labels[k] = static_cast<std::uint8_t>(scheme.reconstruct(values, tau.positions[k], tau.provenance[k]));
        }
        // Worst-path disagreement, root excluded.
        std::uint32_t worst = 0;
        for (std::size_t k = 1; k < nodes; ++k) {
            const std::size_t parent = (k - 1) / tau.arity;
            mismatches[k] = mismatches[parent] + (labels[k] != tau.symbols[k]);
            if (k >= internal) worst = std::max(worst, mismatches[k]);
        }
        mismatches[0] = 0;
        if (internal == 0) worst = 0;
        const std::uint32_t a = labels[0];
        table.unnormalized[a] = std::min(table.unnormalized[a], worst);

        std::size_t i = 0;
        while (i < leaves && leaf_labels[i] + 1u == order) leaf_labels[i++] = 0;
        if (i == leaves) break;
        ++leaf_labels[i];
    }

    finalize_scores(table, tau, ops);
    return table;
}

CorrectionResult correct(const TannerCode& code, const std::vector<std::uint8_t>& word, std::uint32_t e0,
                         const CorrectionParams& params, Rng& rng) {
    if (word.size() != code.length()) throw std::invalid_argument("correct: word length mismatch");
    if (e0 >= code.length()) throw std::out_of_range("correct: position out of range");
    const SmoothReconstruction& scheme = code.tree_scheme();
    const SymbolOps ops(code.field());
    const bool fast_consistency = scheme.is_negated_sum() && ops.fast;

    CorrectionResult result;
    result.position = e0;

    QueryTree outer = make_tree(code, scheme, e0, params.L1, rng);
    const std::size_t outer_internal = outer.internal_count();
    const std::size_t outer_nodes = outer.node_count();

    // Distinct leaf edges in first-appearance order (deterministic).
    std::unordered_map<std::uint32_t, std::uint32_t> index_of;
    std::vector<std::uint32_t> distinct;
    std::vector<std::uint32_t> multiplicity;
    for (std::size_t k = outer_internal; k < outer_nodes; ++k) {
        const std::uint32_t edge = outer.edges[k];
        auto [it, fresh] = index_of.try_emplace(edge, static_cast<std::uint32_t>(distinct.size()));
        if (fresh) {
            distinct.push_back(edge);
            multiplicity.push_back(0);
        }
        ++multiplicity[it->second];
    }
    result.distinct_subtrees = static_cast<std::uint32_t>(distinct.size());

    const std::uint64_t leaves_per_subtree = QueryTree::leaves_for(outer.arity, params.L2);
    std::vector<std::uint8_t> corrected(distinct.size());

    QueryTree subtree;
    EvaluatedTree tau;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        build_tree_into(subtree, code, scheme, distinct[i], params.L2, rng);
        evaluate_into(tau, subtree, word);
        result.symbol_reads += tau.node_count();
        result.leaf_reads += leaves_per_subtree * multiplicity[i];

        bool consistent = fast_consistency ? consistent_negated_sum(tau, ops) : consistent_generic(tau, scheme);
        if (consistent && i != 0) {
            // A fully consistent subtree scores 0 at its observed root and at
            // least 1 everywhere else; the DP would return the same symbol.
            corrected[i] = tau.symbols[0];
            continue;
        }
        ScoreTable scores = dp_scores(tau, scheme, DpMode::kAuto, ops);
        corrected[i] = static_cast<std::uint8_t>(scores.chosen);
        if (scores.ambiguous) {
            ++result.ambiguous_subtrees;
            result.ambiguous = true;
        }
        if (i == 0) result.sample_scores = std::move(scores);
    }

    // Fold corrected leaf values back to the root with the reconstructor.
    std::vector<std::uint32_t> labels(outer_nodes);
    for (std::size_t k = outer_internal; k < outer_nodes; ++k) labels[k] = corrected[index_of[outer.edges[k]]];
    std::vector<std::uint32_t> values(outer.arity);
    for (std::size_t k = outer_internal; k-- > 0;) {
        const std::size_t child_base = std::size_t(outer.arity) * k + 1;
        for (std::uint32_t j = 0; j < outer.arity; ++j) values[j] = labels[child_base + j];
        labels[k] = scheme.reconstruct(values, outer.positions[k], outer.provenance[k]);
    }
    result.symbol = labels[0];
    return result;
}

}  // namespace elcc
