#include "elcc/tanner_code.hpp"

#include <algorithm>
#include <stdexcept>

namespace elcc {

TannerCode TannerCode::build(InnerCode inner, std::shared_ptr<const DoubleCover> cover) {
    if (inner.code->length() != cover->base().degree())
        throw std::invalid_argument("TannerCode: inner code length != cover degree");
    TannerCode code;
    code.inner_ = std::move(inner);
    code.tree_scheme_ = pad_to_perfect(code.inner_.reconstruction);
    code.cover_ = std::move(cover);

    if (code.inner_.code->rate() <= 0.5)
        code.warnings_.push_back("inner rate r0 <= 1/2: the 2r0-1 rate bound is vacuous");
    if (auto lambda = code.cover_->base().cached_lambda()) {
        if (auto delta0 = code.inner_.code->relative_distance()) {
            if (2.0 * *lambda > *delta0)
                code.warnings_.push_back("2*lambda > delta0: distance guarantee does not apply");
        }
    }
    if (code.inner_.reconstruction->degenerate())
        code.warnings_.push_back("inner reconstruction is degenerate (q0 <= 1)");
    return code;
}

std::vector<std::uint32_t> TannerCode::local_view(const std::vector<std::uint8_t>& word, std::uint32_t side,
                                                  std::uint32_t vertex) const {
    if (word.size() != length()) throw std::invalid_argument("TannerCode::local_view: word length mismatch");
    const std::uint32_t d = cover_->base().degree();
    std::vector<std::uint32_t> view(d);
    for (std::uint32_t port = 0; port < d; ++port) view[port] = word[cover_->incident_edge(side, vertex, port)];
    return view;
}

bool TannerCode::is_codeword(const std::vector<std::uint8_t>& word) const {
    const std::uint32_t n = cover_->base().vertex_count();
    for (std::uint32_t side = 0; side < 2; ++side)
        for (std::uint32_t v = 0; v < n; ++v)
            if (!inner_.code->is_codeword(local_view(word, side, v))) return false;
    return true;
}

FieldMatrix TannerCode::global_parity_matrix() const {
    const std::uint32_t n = cover_->base().vertex_count();
    const std::uint32_t d = cover_->base().degree();
    const auto& rows = inner_.code->reduced_parity_rows();
    FieldMatrix global(inner_.code->field_ptr(), 0, length());
    std::vector<std::uint32_t> buffer(length());
    for (std::uint32_t side = 0; side < 2; ++side) {
        for (std::uint32_t v = 0; v < n; ++v) {
            for (const auto& row : rows) {
                std::fill(buffer.begin(), buffer.end(), 0);
                for (std::uint32_t port = 0; port < d; ++port)
                    buffer[cover_->incident_edge(side, v, port)] = row[port];
                global.append_row(buffer);
            }
        }
    }
    return global;
}

void TannerCode::compute_dimension_and_generator() {
    if (dimension_computed_) return;
    if (length() > 4096)
        throw std::invalid_argument("TannerCode: dimension computation guarded at N <= 4096");
    FieldMatrix global = global_parity_matrix();
    NullspaceResult ns = nullspace_systematic(global);
    dimension_ = ns.basis.size();
    systematic_ = ns.free_columns;
    generator_.clear();
    generator_.reserve(ns.basis.size());
    for (const auto& row : ns.basis) {
        std::vector<std::uint8_t> packed(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) packed[i] = static_cast<std::uint8_t>(row[i]);
        generator_.push_back(std::move(packed));
    }
    dimension_computed_ = true;

    const double r0 = inner_.code->rate();
    const double bound = (2.0 * r0 - 1.0) * double(length());
    if (double(dimension_) < bound)
        throw std::logic_error("TannerCode: computed dimension violates the 2r0-1 rate bound");
}

std::vector<std::uint8_t> TannerCode::encode(const std::vector<std::uint32_t>& message) const {
    if (!dimension_computed_) throw std::logic_error("TannerCode::encode: generator not computed");
    if (message.size() != dimension_) throw std::invalid_argument("TannerCode::encode: message length != k");
    const Field& f = field();
    std::vector<std::uint8_t> word(length(), 0);
    for (std::size_t j = 0; j < message.size(); ++j) {
        if (message[j] == 0) continue;
        const auto& basis_row = generator_[j];
        for (std::size_t i = 0; i < word.size(); ++i)
            if (basis_row[i])
                word[i] = static_cast<std::uint8_t>(f.add(word[i], f.mul(message[j], basis_row[i])));
    }
    return word;
}

std::vector<std::uint8_t> TannerCode::random_codeword(Rng& rng) const {
    if (!dimension_computed_)
        throw std::logic_error("TannerCode::random_codeword: generator not computed");
    const Field& f = field();
    std::vector<std::uint8_t> word(length(), 0);
    for (const auto& basis_row : generator_) {
        const std::uint32_t coeff = rng.bounded(f.order());
        if (coeff == 0) continue;
        for (std::size_t i = 0; i < word.size(); ++i)
            if (basis_row[i]) word[i] = static_cast<std::uint8_t>(f.add(word[i], f.mul(coeff, basis_row[i])));
    }
    return word;
}

}  // namespace elcc
