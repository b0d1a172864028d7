#include "elcc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "elcc/util.hpp"

namespace elcc {

CorruptionOutcome corrupt(const std::vector<std::uint8_t>& word, const NoiseModel& model, const Field& field,
                          Rng& rng) {
    if (model.rho < 0.0 || model.rho >= 1.0) throw std::invalid_argument("corrupt: rho must lie in [0,1)");
    CorruptionOutcome out;
    out.word = word;
    const std::size_t n = word.size();

    if (model.kind == NoiseModel::Kind::kPattern) {
        out.positions = model.pattern;
    } else {
        const auto count = static_cast<std::size_t>(std::floor(model.rho * double(n)));
        // Partial Fisher-Yates over the index array: exactly `count` distinct
        // uniformly chosen positions.
        std::vector<std::uint32_t> indices(n);
        for (std::size_t i = 0; i < n; ++i) indices[i] = static_cast<std::uint32_t>(i);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + rng.bounded(static_cast<std::uint32_t>(n - i));
            std::swap(indices[i], indices[j]);
        }
        out.positions.assign(indices.begin(), indices.begin() + count);
    }
    std::sort(out.positions.begin(), out.positions.end());
    out.positions.erase(std::unique(out.positions.begin(), out.positions.end()), out.positions.end());

    const std::uint32_t order = field.order();
    if (order < 2) throw std::invalid_argument("corrupt: field too small");
    for (std::uint32_t pos : out.positions) {
        if (pos >= n) throw std::out_of_range("corrupt: pattern position out of range");
        const std::uint32_t delta = 1 + rng.bounded(order - 1);
        out.word[pos] = static_cast<std::uint8_t>(field.add(out.word[pos], delta));
    }
    return out;
}

namespace {

struct TrialAccumulator {
    std::uint64_t successes = 0;
    std::uint64_t ambiguous = 0;
    long double query_sum = 0.0;
    bool uniform = true;
    std::uint64_t leaf_reads = 0;
    bool first = true;

    void absorb(bool success, const CorrectionResult& res) {
        successes += success;
        ambiguous += res.ambiguous;
        query_sum += static_cast<long double>(res.leaf_reads);
        if (first) {
            leaf_reads = res.leaf_reads;
            first = false;
        } else if (leaf_reads != res.leaf_reads) {
            uniform = false;
        }
    }
};

}  // namespace

std::vector<SuccessRow> success_curve(const TannerCode& code, const CorrectionParams& params,
                                      const std::vector<double>& rho_grid, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads) {
    std::vector<SuccessRow> rows;
    rows.reserve(rho_grid.size());
    const std::vector<std::uint8_t> zero = code.zero_codeword();

    for (std::size_t g = 0; g < rho_grid.size(); ++g) {
        const double rho = rho_grid[g];
        std::vector<std::uint8_t> outcome_success(trials, 0);
        std::vector<std::uint8_t> outcome_ambiguous(trials, 0);
        std::vector<std::uint64_t> outcome_reads(trials, 0);

        parallel_for(trials, threads, [&](std::uint64_t t) {
            Rng rng = substream(seed, "success-curve", g * trials + t);
            NoiseModel model{NoiseModel::Kind::kRandomPositions, rho, {}};
            CorruptionOutcome corrupted = corrupt(zero, model, code.field(), rng);
            const auto e0 = rng.bounded(code.length());
            const CorrectionResult res = correct(code, corrupted.word, e0, params, rng);
            outcome_success[t] = res.symbol == 0;
            outcome_ambiguous[t] = res.ambiguous;
            outcome_reads[t] = res.leaf_reads;
        });

        TrialAccumulator acc;
        for (std::uint64_t t = 0; t < trials; ++t) {
            CorrectionResult stub;
            stub.leaf_reads = outcome_reads[t];
            stub.ambiguous = outcome_ambiguous[t];
            acc.absorb(outcome_success[t] != 0, stub);
        }

        SuccessRow row;
        row.rho = rho;
        row.trials = trials;
        row.successes = acc.successes;
        row.mean_queries = trials == 0 ? 0.0 : double(acc.query_sum / static_cast<long double>(trials));
        const WilsonInterval wilson = wilson95(acc.successes, trials);
        row.wilson_low = wilson.low;
        row.wilson_high = wilson.high;
        row.leaf_reads_uniform = acc.uniform;
        row.leaf_reads_value = acc.leaf_reads;
        row.ambiguous_trials = acc.ambiguous;
        rows.push_back(row);
    }
    return rows;
}

bool monotone_non_increasing(const std::vector<SuccessRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (rows[i].rho >= rows[j].rho) continue;
            if (rows[j].wilson_low > rows[i].wilson_high) return false;
        }
    }
    return true;
}

SweepOutcome sweep_positions(const TannerCode& code, const CorrectionParams& params,
                             const std::vector<std::uint8_t>& word, const std::vector<std::uint8_t>& truth,
                             const std::vector<std::uint32_t>& positions, std::uint64_t seed, unsigned threads) {
    SweepOutcome out;
    out.trials = positions.size();
    std::vector<std::uint8_t> success(positions.size(), 0);
    std::vector<std::uint64_t> reads(positions.size(), 0);
    parallel_for(positions.size(), threads, [&](std::uint64_t i) {
        Rng rng = substream(seed, "position-sweep", i);
        const CorrectionResult res = correct(code, word, positions[i], params, rng);
        success[i] = res.symbol == truth[positions[i]];
        reads[i] = res.leaf_reads;
    });
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out.successes += success[i];
        if (i == 0)
            out.leaf_reads_value = reads[i];
        else if (reads[i] != out.leaf_reads_value)
            out.leaf_reads_uniform = false;
    }
    return out;
}

WalkTailReport walk_tail_check(const DoubleCover& cover, const std::vector<std::uint32_t>& corrupted_edges,
                               double gamma, std::uint32_t walk_length, std::uint64_t trials, double lambda,
                               std::uint64_t seed, unsigned threads) {
    if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("walk_tail_check: gamma must lie in (0, 1/2)");
    if (walk_length == 0 || trials == 0) throw std::invalid_argument("walk_tail_check: empty experiment");

    WalkTailReport report;
    report.gamma = gamma;
    report.walk_length = walk_length;
    report.trials = trials;
    report.lambda = lambda;
    report.rho = double(corrupted_edges.size()) / double(cover.edge_count());
    report.delta = report.rho + 2.0 * lambda;
    report.bound_vacuous = !(report.delta < gamma);
    report.rho_above_6lambda = report.rho > 6.0 * lambda;

    std::vector<std::uint8_t> corrupted(cover.edge_count(), 0);
    for (std::uint32_t e : corrupted_edges) corrupted[e] = 1;

    const double threshold = gamma * double(walk_length) - 1e-9;
    const std::uint32_t n = cover.base().vertex_count();
    std::vector<std::uint8_t> hits(trials, 0);
    parallel_for(trials, threads, [&](std::uint64_t t) {
        Rng rng = substream(seed, "walk-tail", t);
        const std::uint32_t start = rng.bounded(n);
        const WalkResult walk = random_walk(cover, start, walk_length, rng);
        std::uint32_t count = 0;
        for (std::uint32_t e : walk.edges) count += corrupted[e];
        hits[t] = double(count) >= threshold;
    });
    std::uint64_t tail = 0;
    for (std::uint8_t h : hits) tail += h;

    report.empirical_tail = double(tail) / double(trials);
    if (report.delta <= 0.0) {
        // No corruption and an exactly zero lambda: the tail is empty.
        report.kl_bound = report.empirical_tail == 0.0 ? 0.0 : 1.0;
    } else {
        report.kl_bound = std::exp(-double(walk_length) * kl_upper_rate(gamma, report.delta));
    }
    report.std_error = std::sqrt(std::max(0.0, report.empirical_tail * (1.0 - report.empirical_tail)) /
                                 double(trials));
    report.pass = report.empirical_tail <= report.kl_bound + 3.0 * report.std_error;
    return report;
}

std::string success_curve_csv(const std::vector<SuccessRow>& rows) {
    std::ostringstream out;
    out << "rho,successes,trials,mean_queries,wilson_low\n";
    for (const auto& row : rows) {
        out << format_double(row.rho) << "," << row.successes << "," << row.trials << ","
            << format_double(row.mean_queries) << "," << format_double(row.wilson_low) << "\n";
    }
    return out.str();
}

std::string walk_tail_csv(const WalkTailReport& report) {
    std::ostringstream out;
    out << "gamma,L,empirical_tail,kl_bound,pass\n";
    out << format_double(report.gamma) << "," << report.walk_length << ","
        << format_double(report.empirical_tail) << "," << format_double(report.kl_bound) << ","
        << (report.pass ? 1 : 0) << "\n";
    return out.str();
}

}  // namespace elcc
