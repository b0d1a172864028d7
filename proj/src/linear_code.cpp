#include "elcc/linear_code.hpp"

#include <cmath>
#include <stdexcept>

namespace elcc {

LinearCode LinearCode::from_parity_checks(std::shared_ptr<const Field> field, std::size_t length,
                                          const std::vector<std::vector<std::uint32_t>>& parity_rows) {
    for (const auto& row : parity_rows)
        if (row.size() != length) throw std::invalid_argument("LinearCode: parity row width != code length");

    LinearCode code;
    code.field_ = field;
    code.length_ = length;
    code.parity_rows_ = parity_rows;

    FieldMatrix parity(field, 0, length);
    for (const auto& row : parity_rows) parity.append_row(row);

    NullspaceResult ns = nullspace_systematic(parity);
    code.dimension_ = length - ns.rank;
    code.systematic_ = ns.free_columns;
    code.generator_ = std::move(ns.basis);

    // Independent parity rows: reduce a copy in natural column order.
    FieldMatrix reduced(field, 0, length);
    for (const auto& row : parity_rows) reduced.append_row(row);
    const std::size_t rank = reduced.rref().size();
    if (rank != ns.rank) throw std::logic_error("LinearCode: rank mismatch between reductions");
    code.reduced_rows_.reserve(rank);
    for (std::size_t r = 0; r < rank; ++r) {
        std::vector<std::uint32_t> row(length);
        for (std::size_t c = 0; c < length; ++c) row[c] = reduced.get(r, c);
        code.reduced_rows_.push_back(std::move(row));
    }

    // parity * generator^T must vanish.
    for (const auto& g : code.generator_) {
        auto syndrome = parity.apply(g);
        for (std::uint32_t s : syndrome)
            if (s != 0) throw std::logic_error("LinearCode: generator row fails parity check");
    }
    return code;
}

std::vector<std::uint32_t> LinearCode::encode(const std::vector<std::uint32_t>& message) const {
    if (message.size() != dimension_) throw std::invalid_argument("LinearCode::encode: message length != k0");
    const Field& f = *field_;
    std::vector<std::uint32_t> word(length_, 0);
    for (std::size_t j = 0; j < dimension_; ++j) {
        const std::uint32_t m = message[j];
        if (m == 0) continue;
        const auto& g = generator_[j];
        for (std::size_t c = 0; c < length_; ++c)
            if (g[c]) word[c] = f.add(word[c], f.mul(m, g[c]));
    }
    return word;
}

bool LinearCode::is_codeword(const std::vector<std::uint32_t>& word) const {
    if (word.size() != length_) throw std::invalid_argument("LinearCode::is_codeword: length mismatch");
    const Field& f = *field_;
    for (const auto& row : reduced_rows_) {
        std::uint32_t acc = 0;
        for (std::size_t c = 0; c < length_; ++c)
            if (row[c] && word[c]) acc = f.add(acc, f.mul(row[c], word[c]));
        if (acc != 0) return false;
    }
    return true;
}

std::size_t LinearCode::min_distance_bruteforce() {
    const std::uint64_t p = field_->order();
    double log_size = dimension_ * std::log2(double(p));
    if (log_size > 20.0) throw std::invalid_argument("LinearCode::min_distance_bruteforce: p^k0 > 2^20");
    if (dimension_ == 0) throw std::invalid_argument("LinearCode::min_distance_bruteforce: degenerate code");

    std::size_t best = length_ + 1;
    std::vector<std::uint32_t> message(dimension_, 0);
    // Odometer over all nonzero messages.
    while (true) {
        std::size_t i = 0;
        while (i < dimension_ && message[i] + 1 == p) message[i++] = 0;
        if (i == dimension_) break;
        ++message[i];
        auto word = encode(message);
        std::size_t weight = 0;
        for (std::uint32_t s : word) weight += (s != 0);
        if (weight < best) best = weight;
    }
    delta0_ = double(best) / double(length_);
    return best;
}

}  // namespace elcc
