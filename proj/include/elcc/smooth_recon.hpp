#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "elcc/linear_code.hpp"
#include "elcc/rng.hpp"

namespace elcc {

inline constexpr std::uint32_t kNoProvenance = std::numeric_limits<std::uint32_t>::max();

/// One sampled query set. Real queries come first, pad queries (present only
/// on padded schemes, ignored by the reconstructor) follow. The provenance
/// identifies which structure (e.g. which flat) produced the real queries, so
/// reconstruction can pick the matching parity row deterministically.
struct QuerySet {
    std::vector<std::uint32_t> positions;
    std::uint32_t real_count = 0;
    std::uint32_t provenance = kNoProvenance;
};

/// Randomized query map plus deterministic reconstructor for a linear code:
/// on any uncorrupted codeword c, reconstruct(c restricted to the queries)
/// returns c[i]. Noiseless only; robustness is the outer code's job.
class SmoothReconstruction {
 public:
    virtual ~SmoothReconstruction() = default;

    const LinearCode& code() const { return *code_; }
    std::shared_ptr<const LinearCode> code_ptr() const { return code_; }
    std::size_t word_length() const { return code_->length(); }

    /// Number of queries made per sample (pads included).
    std::uint32_t query_count() const { return query_count_; }
    /// Number of real (non-pad) queries.
    std::uint32_t real_count() const { return real_count_; }
    /// Smoothness parameter s0: size of the per-position support set.
    std::uint32_t smoothness() const { return smoothness_; }
    bool degenerate() const { return degenerate_; }
    const std::string& name() const { return name_; }

    virtual QuerySet sample_queries(std::uint32_t position, Rng& rng) const = 0;

    /// Allocation-free sampler for hot paths: writes exactly query_count()
    /// positions into `out` and returns the provenance.
    virtual std::uint32_t sample_into(std::uint32_t position, Rng& rng, std::uint32_t* out) const;

    /// Reconstructs symbol `position` from query values (aligned with the
    /// sampled order; pads beyond real_count are ignored).
    virtual std::uint32_t reconstruct(std::span<const std::uint32_t> values, std::uint32_t position,
                                      std::uint32_t provenance) const = 0;

    /// True when reconstruction is minus the field sum of the real queries,
    /// independent of position and provenance. Enables the fast DP path.
    virtual bool is_negated_sum() const { return false; }

    /// Expected number of times `target` appears in one sampled query set for
    /// `position` (multiplicity counted). Drives the sampled audit.
    virtual double query_probability(std::uint32_t position, std::uint32_t target) const = 0;

    /// Exhaustive enumeration of the equally likely query sets for a
    /// position, when the scheme supports it (no pads involved).
    virtual bool supports_exhaustive_enumeration() const { return false; }
    virtual std::vector<QuerySet> all_query_sets(std::uint32_t /*position*/) const { return {}; }

 protected:
    SmoothReconstruction(std::shared_ptr<const LinearCode> code, std::uint32_t query_count,
                         std::uint32_t real_count, std::uint32_t smoothness, std::string name)
        : code_(std::move(code)),
          query_count_(query_count),
          real_count_(real_count),
          smoothness_(smoothness),
          name_(std::move(name)) {}

    std::shared_ptr<const LinearCode> code_;
    std::uint32_t query_count_;
    std::uint32_t real_count_;
    std::uint32_t smoothness_;
    bool degenerate_ = false;
    std::string name_;
};

/// Scheme for a single-parity-check code: query every other position, in
/// position order, and return minus their sum scaled by the inverse of the
/// target's parity coefficient.
class ComplementScheme : public SmoothReconstruction {
 public:
    explicit ComplementScheme(std::shared_ptr<const LinearCode> code);

    QuerySet sample_queries(std::uint32_t position, Rng& rng) const override;
    std::uint32_t sample_into(std::uint32_t position, Rng& rng, std::uint32_t* out) const override;
    std::uint32_t reconstruct(std::span<const std::uint32_t> values, std::uint32_t position,
                              std::uint32_t provenance) const override;
    bool is_negated_sum() const override { return all_ones_; }
    double query_probability(std::uint32_t position, std::uint32_t target) const override;
    bool supports_exhaustive_enumeration() const override { return true; }
    std::vector<QuerySet> all_query_sets(std::uint32_t position) const override;

 private:
    bool all_ones_ = true;
};

/// Upgrades an s0-smooth scheme to the padded form with q0 + (d - s0)
/// queries: pad queries are drawn uniformly from all d positions (with
/// replacement), appended after the real queries, and ignored on
/// reconstruction. When s0 == d this is the identity transformation.
std::shared_ptr<const SmoothReconstruction> pad_to_perfect(std::shared_ptr<const SmoothReconstruction> base);

/// Audit result: per-position query counts against expected counts.
struct SmoothnessAudit {
    std::uint32_t position = 0;
    std::vector<std::uint64_t> counts;   // per codeword position
    std::vector<double> expected;        // same indexing
    bool exhaustive = false;
    bool uniform_over_support = false;   // exhaustive mode: all supported counts equal
    double chi_square = 0.0;             // sampled mode
    double p_value = 1.0;                // sampled mode
    std::string to_csv() const;          // header: position,count,expected
};

/// Exhaustive audit: enumerate every query set once and count appearances.
SmoothnessAudit smoothness_audit_exhaustive(const SmoothReconstruction& recon, std::uint32_t position);

/// Sampled audit: draw `trials` query sets, compare counts with the scheme's
/// declared marginals by chi-square.
SmoothnessAudit smoothness_audit_sampled(const SmoothReconstruction& recon, std::uint32_t position,
                                         std::uint64_t trials, Rng& rng);

}  // namespace elcc
