#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "elcc/linalg.hpp"

namespace elcc {

/// A linear code over a finite field, built from parity checks.
///
/// Construction row-reduces the parity matrix, derives a systematic generator
/// (messages occupy the leftmost columns that can be made free; the chosen
/// positions are recorded), and checks parity * generator^T == 0. All views
/// use the original coordinate order.
class LinearCode {
 public:
    static LinearCode from_parity_checks(std::shared_ptr<const Field> field, std::size_t length,
                                         const std::vector<std::vector<std::uint32_t>>& parity_rows);

    const Field& field() const { return *field_; }
    std::shared_ptr<const Field> field_ptr() const { return field_; }
    std::size_t length() const { return length_; }          // d
    std::size_t dimension() const { return dimension_; }    // k0
    double rate() const { return double(dimension_) / double(length_); }
    bool degenerate() const { return dimension_ == 0; }

    /// Message positions within the codeword (ascending); encode() writes the
    /// message there verbatim.
    const std::vector<std::size_t>& systematic_positions() const { return systematic_; }

    const std::vector<std::vector<std::uint32_t>>& parity_rows() const { return parity_rows_; }
    /// Independent parity rows (rank many) from the reduction.
    const std::vector<std::vector<std::uint32_t>>& reduced_parity_rows() const { return reduced_rows_; }
    const std::vector<std::vector<std::uint32_t>>& generator_rows() const { return generator_; }

    std::vector<std::uint32_t> encode(const std::vector<std::uint32_t>& message) const;
    bool is_codeword(const std::vector<std::uint32_t>& word) const;

    /// Exact minimum distance by exhaustive enumeration of the p^k0 codewords.
    /// Guarded: requires p^k0 <= 2^20. The result is cached as delta0.
    std::size_t min_distance_bruteforce();
    std::optional<double> relative_distance() const { return delta0_; }
    void set_relative_distance(double v) { delta0_ = v; }

 private:
    std::shared_ptr<const Field> field_;
    std::size_t length_ = 0;
    std::size_t dimension_ = 0;
    std::vector<std::size_t> systematic_;
    std::vector<std::vector<std::uint32_t>> parity_rows_;
    std::vector<std::vector<std::uint32_t>> reduced_rows_;
    std::vector<std::vector<std::uint32_t>> generator_;
    std::optional<double> delta0_;
};

}  // namespace elcc
