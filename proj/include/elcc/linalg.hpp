#pragma once

#include <cstdint>
#include <vector>

#include "elcc/finite_field.hpp"

namespace elcc {

/// Dense matrix over a finite field with row-reduction utilities.
/// Rows over GF(2) are packed into 64-bit words; other fields use one byte
/// wide entries (field order <= 256 for matrix work) in a flat array.
/// Entries are encoded field values.
class FieldMatrix {
 public:
    FieldMatrix(std::shared_ptr<const Field> field, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return *field_; }
    std::shared_ptr<const Field> field_ptr() const { return field_; }

    std::uint32_t get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, std::uint32_t v);

    void append_row(const std::vector<std::uint32_t>& row);

    /// y = M x over the field.
    std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& x) const;

    /// Row echelon reduction in a caller-supplied column order.
    /// Returns pivot columns (in elimination order); the matrix is left in
    /// reduced row echelon form with respect to that order.
    std::vector<std::size_t> rref(const std::vector<std::size_t>& column_order);
    std::vector<std::size_t> rref();  // natural order 0..cols-1

    std::size_t rank() const;  // on a copy; the matrix is not modified

    /// Basis of the right nullspace { x : Mx = 0 }, one vector per row of the
    /// result. Pivots are chosen on the rightmost columns first so that the
    /// free (systematic) columns sit as far left as possible.
    std::vector<std::vector<std::uint32_t>> nullspace_basis() const;

 private:
    bool packed() const { return field_->order() == 2; }
    std::size_t words() const { return (cols_ + 63) / 64; }
    void swap_rows(std::size_t a, std::size_t b);
    // row[r] -= factor * row[src] (on column range [from_col, cols))
    void eliminate(std::size_t r, std::size_t src, std::uint32_t factor);
    void scale_row(std::size_t r, std::uint32_t factor);

    std::shared_ptr<const Field> field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint64_t> bits_;   // packed GF(2) storage
    std::vector<std::uint8_t> bytes_;   // generic storage
};

/// Nullspace basis with pivots preferred on the rightmost columns; also
/// reports the free columns (ascending). Shared by code construction.
struct NullspaceResult {
    std::vector<std::vector<std::uint32_t>> basis;  // one codeword per free column
    std::vector<std::size_t> free_columns;          // ascending; basis[i] has 1 at free_columns[i]
    std::size_t rank = 0;
};

NullspaceResult nullspace_systematic(const FieldMatrix& m);

}  // namespace elcc
