#include "elcc/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace elcc {

FieldMatrix::FieldMatrix(std::shared_ptr<const Field> field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
    if (field_->order() > 256) throw std::invalid_argument("FieldMatrix: field order above 256 unsupported");
    if (packed())
        bits_.assign(rows_ * words(), 0);
    else
        bytes_.assign(rows_ * cols_, 0);
}

std::uint32_t FieldMatrix::get(std::size_t r, std::size_t c) const {
    if (packed()) return (bits_[r * words() + c / 64] >> (c % 64)) & 1u;
    return bytes_[r * cols_ + c];
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::uint32_t v) {
    if (packed()) {
        std::uint64_t& w = bits_[r * words() + c / 64];
        const std::uint64_t mask = 1ull << (c % 64);
        w = v ? (w | mask) : (w & ~mask);
    } else {
        bytes_[r * cols_ + c] = static_cast<std::uint8_t>(v);
    }
}

void FieldMatrix::append_row(const std::vector<std::uint32_t>& row) {
    if (row.size() != cols_) throw std::invalid_argument("FieldMatrix::append_row: width mismatch");
    ++rows_;
    if (packed())
        bits_.resize(rows_ * words(), 0);
    else
        bytes_.resize(rows_ * cols_, 0);
    for (std::size_t c = 0; c < cols_; ++c) set(rows_ - 1, c, row[c]);
}

std::vector<std::uint32_t> FieldMatrix::apply(const std::vector<std::uint32_t>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("FieldMatrix::apply: size mismatch");
    std::vector<std::uint32_t> y(rows_, 0);
    const Field& f = *field_;
    if (packed()) {
        // Parity of AND between the packed row and packed x.
        std::vector<std::uint64_t> xp(words(), 0);
        for (std::size_t c = 0; c < cols_; ++c)
            if (x[c]) xp[c / 64] |= 1ull << (c % 64);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t acc = 0;
            const std::uint64_t* row = &bits_[r * words()];
            for (std::size_t w = 0; w < words(); ++w) acc ^= row[w] & xp[w];
            y[r] = static_cast<std::uint32_t>(__builtin_popcountll(acc) & 1);
        }
    } else {
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint32_t acc = 0;
            for (std::size_t c = 0; c < cols_; ++c) acc = f.add(acc, f.mul(get(r, c), x[c]));
            y[r] = acc;
        }
    }
    return y;
}

void FieldMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    if (packed()) {
        for (std::size_t w = 0; w < words(); ++w) std::swap(bits_[a * words() + w], bits_[b * words() + w]);
    } else {
        for (std::size_t c = 0; c < cols_; ++c) std::swap(bytes_[a * cols_ + c], bytes_[b * cols_ + c]);
    }
}

void FieldMatrix::eliminate(std::size_t r, std::size_t src, std::uint32_t factor) {
    if (factor == 0) return;
    const Field& f = *field_;
    if (packed()) {
        std::uint64_t* dst = &bits_[r * words()];
        const std::uint64_t* s = &bits_[src * words()];
        for (std::size_t w = 0; w < words(); ++w) dst[w] ^= s[w];
    } else {
        for (std::size_t c = 0; c < cols_; ++c) {
            const std::uint32_t v = get(src, c);
            if (v) set(r, c, f.sub(get(r, c), f.mul(factor, v)));
        }
    }
}

void FieldMatrix::scale_row(std::size_t r, std::uint32_t factor) {
    if (factor == 1) return;
    const Field& f = *field_;
    for (std::size_t c = 0; c < cols_; ++c) set(r, c, f.mul(get(r, c), factor));
}

std::vector<std::size_t> FieldMatrix::rref(const std::vector<std::size_t>& column_order) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    const Field& f = *field_;
    for (std::size_t col : column_order) {
        if (next_row >= rows_) break;
        std::size_t pivot_row = rows_;
        for (std::size_t r = next_row; r < rows_; ++r) {
            if (get(r, col) != 0) {
                pivot_row = r;
                break;
            }
        }
        if (pivot_row == rows_) continue;
        swap_rows(next_row, pivot_row);
        scale_row(next_row, f.inv(get(next_row, col)));
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r != next_row && get(r, col) != 0) eliminate(r, next_row, get(r, col));
        }
        pivots.push_back(col);
        ++next_row;
    }
    return pivots;
}

std::vector<std::size_t> FieldMatrix::rref() {
    std::vector<std::size_t> order(cols_);
    for (std::size_t c = 0; c < cols_; ++c) order[c] = c;
    return rref(order);
}

std::size_t FieldMatrix::rank() const {
    FieldMatrix copy = *this;
    return copy.rref().size();
}

std::vector<std::vector<std::uint32_t>> FieldMatrix::nullspace_basis() const {
    return nullspace_systematic(*this).basis;
}

NullspaceResult nullspace_systematic(const FieldMatrix& m) {
    FieldMatrix red = m;
    // Pivot on the rightmost columns first so the leftmost columns stay free.
    std::vector<std::size_t> order(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) order[c] = m.cols() - 1 - c;
    std::vector<std::size_t> pivots = red.rref(order);

    NullspaceResult out;
    out.rank = pivots.size();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) out.free_columns.push_back(c);

    const Field& f = m.field();
    // Row index of each pivot column in the reduced matrix.
    std::vector<std::size_t> pivot_row(m.cols(), 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = i;

    for (std::size_t free_col : out.free_columns) {
        std::vector<std::uint32_t> vec(m.cols(), 0);
        vec[free_col] = 1;
        for (std::size_t c : pivots) {
            // pivot entry = -(coefficient of free_col in the pivot row)
            const std::uint32_t coef = red.get(pivot_row[c], free_col);
            if (coef) vec[c] = f.neg(coef);
        }
        out.basis.push_back(std::move(vec));
    }
    return out;
}

}  // namespace elcc
