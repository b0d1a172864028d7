#include "elcc/smooth_recon.hpp"

#include <sstream>
#include <stdexcept>

#include "elcc/stats.hpp"

namespace elcc {

std::uint32_t SmoothReconstruction::sample_into(std::uint32_t position, Rng& rng, std::uint32_t* out) const {
    const QuerySet q = sample_queries(position, rng);
    for (std::size_t i = 0; i < q.positions.size(); ++i) out[i] = q.positions[i];
    return q.provenance;
}

ComplementScheme::ComplementScheme(std::shared_ptr<const LinearCode> code)
    : SmoothReconstruction(code, static_cast<std::uint32_t>(code->length() - 1),
                           static_cast<std::uint32_t>(code->length() - 1),
                           static_cast<std::uint32_t>(code->length() - 1), "complement") {
    if (code_->reduced_parity_rows().size() != 1)
        throw std::invalid_argument("ComplementScheme: code must have exactly one independent parity row");
    for (std::uint32_t v : code_->reduced_parity_rows()[0]) {
        if (v == 0) throw std::invalid_argument("ComplementScheme: parity row must have full support");
        if (v != 1) all_ones_ = false;
    }
    degenerate_ = code_->length() < 3;
}

QuerySet ComplementScheme::sample_queries(std::uint32_t position, Rng&) const {
    if (position >= word_length()) throw std::out_of_range("ComplementScheme: position out of range");
    QuerySet q;
    q.positions.reserve(word_length() - 1);
    for (std::uint32_t j = 0; j < word_length(); ++j)
        if (j != position) q.positions.push_back(j);
    q.real_count = static_cast<std::uint32_t>(q.positions.size());
    q.provenance = 0;
    return q;
}

std::uint32_t ComplementScheme::sample_into(std::uint32_t position, Rng&, std::uint32_t* out) const {
    std::uint32_t j = 0;
    for (std::uint32_t pos = 0; pos < word_length(); ++pos)
        if (pos != position) out[j++] = pos;
    return 0;
}

std::uint32_t ComplementScheme::reconstruct(std::span<const std::uint32_t> values, std::uint32_t position,
                                            std::uint32_t) const {
    if (values.size() < real_count_) throw std::invalid_argument("ComplementScheme: arity mismatch");
    const Field& f = code_->field();
    const auto& row = code_->reduced_parity_rows()[0];
    std::uint32_t acc = 0;
    std::uint32_t j = 0;
    for (std::uint32_t pos = 0; pos < word_length(); ++pos) {
        if (pos == position) continue;
        acc = f.add(acc, f.mul(row[pos], values[j++]));
    }
    return f.mul(f.neg(acc), f.inv(row[position]));
}

double ComplementScheme::query_probability(std::uint32_t position, std::uint32_t target) const {
    return target == position ? 0.0 : 1.0;
}

std::vector<QuerySet> ComplementScheme::all_query_sets(std::uint32_t position) const {
    Rng dummy(0);
    return {sample_queries(position, const_cast<Rng&>(dummy))};
}

namespace {

class PaddedScheme : public SmoothReconstruction {
 public:
    explicit PaddedScheme(std::shared_ptr<const SmoothReconstruction> base)
        : SmoothReconstruction(base->code_ptr(),
                               base->query_count() +
                                   static_cast<std::uint32_t>(base->word_length()) - base->smoothness(),
                               base->query_count(), static_cast<std::uint32_t>(base->word_length()),
                               base->name() + "+pad"),
          base_(std::move(base)) {
        degenerate_ = base_->degenerate();
    }

    QuerySet sample_queries(std::uint32_t position, Rng& rng) const override {
        QuerySet q = base_->sample_queries(position, rng);
        const std::uint32_t pads = query_count_ - q.real_count;
        const auto d = static_cast<std::uint32_t>(word_length());
        for (std::uint32_t i = 0; i < pads; ++i) q.positions.push_back(rng.bounded(d));
        return q;
    }

    std::uint32_t sample_into(std::uint32_t position, Rng& rng, std::uint32_t* out) const override {
        const std::uint32_t provenance = base_->sample_into(position, rng, out);
        const auto d = static_cast<std::uint32_t>(word_length());
        for (std::uint32_t i = real_count_; i < query_count_; ++i) out[i] = rng.bounded(d);
        return provenance;
    }

    std::uint32_t reconstruct(std::span<const std::uint32_t> values, std::uint32_t position,
                              std::uint32_t provenance) const override {
        if (values.size() < real_count_) throw std::invalid_argument("PaddedScheme: arity mismatch");
        return base_->reconstruct(values.first(real_count_), position, provenance);
    }

    bool is_negated_sum() const override { return base_->is_negated_sum(); }

    double query_probability(std::uint32_t position, std::uint32_t target) const override {
        const double pads = double(query_count_ - real_count_);
        return base_->query_probability(position, target) + pads / double(word_length());
    }

 private:
    std::shared_ptr<const SmoothReconstruction> base_;
};

}  // namespace

std::shared_ptr<const SmoothReconstruction> pad_to_perfect(std::shared_ptr<const SmoothReconstruction> base) {
    if (base->smoothness() == base->word_length()) return base;
    return std::make_shared<PaddedScheme>(std::move(base));
}

std::string SmoothnessAudit::to_csv() const {
    std::ostringstream out;
    out << "position,count,expected\n";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out << i << "," << counts[i] << "," << expected[i] << "\n";
    }
    return out.str();
}

SmoothnessAudit smoothness_audit_exhaustive(const SmoothReconstruction& recon, std::uint32_t position) {
    if (!recon.supports_exhaustive_enumeration())
        throw std::invalid_argument("smoothness_audit_exhaustive: scheme does not enumerate query sets");
    SmoothnessAudit audit;
    audit.position = position;
    audit.exhaustive = true;
    const std::size_t d = recon.word_length();
    audit.counts.assign(d, 0);
    audit.expected.assign(d, 0.0);
    const auto sets = recon.all_query_sets(position);
    for (const auto& q : sets)
        for (std::uint32_t pos : q.positions) ++audit.counts[pos];
    std::uint64_t total = 0;
    for (std::uint64_t c : audit.counts) total += c;
    // Exhaustive audits target equal coverage of the support (all positions
    // except the target itself).
    for (std::size_t i = 0; i < d; ++i)
        audit.expected[i] = (i == position) ? 0.0 : double(total) / double(d - 1);
    audit.uniform_over_support = true;
    std::uint64_t reference = 0;
    bool have_reference = false;
    for (std::size_t i = 0; i < d; ++i) {
        if (i == position) {
            if (audit.counts[i] != 0) audit.uniform_over_support = false;
            continue;
        }
        if (!have_reference) {
            reference = audit.counts[i];
            have_reference = true;
        } else if (audit.counts[i] != reference) {
            audit.uniform_over_support = false;
        }
    }
    return audit;
}

SmoothnessAudit smoothness_audit_sampled(const SmoothReconstruction& recon, std::uint32_t position,
                                         std::uint64_t trials, Rng& rng) {
    SmoothnessAudit audit;
    audit.position = position;
    const std::size_t d = recon.word_length();
    audit.counts.assign(d, 0);
    audit.expected.assign(d, 0.0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const QuerySet q = recon.sample_queries(position, rng);
        for (std::uint32_t pos : q.positions) ++audit.counts[pos];
    }
    for (std::size_t i = 0; i < d; ++i)
        audit.expected[i] = double(trials) * recon.query_probability(position, static_cast<std::uint32_t>(i));

    double stat = 0.0;
    std::size_t cells = 0;
    bool impossible_hit = false;
    for (std::size_t i = 0; i < d; ++i) {
        if (audit.expected[i] <= 0.0) {
            if (audit.counts[i] != 0) impossible_hit = true;
            continue;
        }
        const double diff = double(audit.counts[i]) - audit.expected[i];
        stat += diff * diff / audit.expected[i];
        ++cells;
    }
    audit.chi_square = stat;
    audit.p_value = impossible_hit ? 0.0
                    : cells > 1    ? chi_square_sf(stat, double(cells - 1))
                                   : 1.0;
    return audit;
}

}  // namespace elcc
