#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "elcc/smooth_recon.hpp"

namespace elcc {

/// The r-flats (r-dimensional affine subspaces) of F_h^m, enumerated
/// exhaustively at desk scale. Points are indexed by their coordinate vector
/// read as a base-h integer, coordinate 0 least significant.
///
/// Flats are generated as cosets of linear subspaces; subspaces are
/// enumerated through their unique reduced-row-echelon bases, so every flat
/// appears exactly once with its points sorted.
class AffineGeometry {
 public:
    static std::shared_ptr<const AffineGeometry> enumerate_flats(std::uint32_t h, std::uint32_t m,
                                                                 std::uint32_t r);

    const Field& point_field() const { return *field_; }
    std::shared_ptr<const Field> point_field_ptr() const { return field_; }
    std::uint32_t ambient_dimension() const { return m_; }
    std::uint32_t flat_dimension() const { return r_; }
    std::uint32_t order() const { return field_->order(); }  // h
    std::uint32_t point_count() const { return point_count_; }
    std::size_t flat_count() const { return flats_.size(); }

    const std::vector<std::vector<std::uint32_t>>& flats() const { return flats_; }
    const std::vector<std::vector<std::uint32_t>>& flats_through() const { return flats_through_; }

    std::vector<std::uint32_t> point_coordinates(std::uint32_t index) const;
    std::uint32_t point_index(const std::vector<std::uint32_t>& coords) const;

 private:
    std::shared_ptr<const Field> field_;
    std::uint32_t m_ = 0;
    std::uint32_t r_ = 0;
    std::uint32_t point_count_ = 0;
    std::vector<std::vector<std::uint32_t>> flats_;          // sorted point indices
    std::vector<std::vector<std::uint32_t>> flats_through_;  // point -> flat ids
};

/// Inner code bundle: the flat-incidence code over GF(p) together with its
/// smooth reconstruction (query a random flat through the target point).
struct InnerCode {
    std::shared_ptr<const AffineGeometry> geometry;  // null for non-geometric inner codes
    std::shared_ptr<const LinearCode> code;
    std::shared_ptr<const SmoothReconstruction> reconstruction;
};

/// Builds the code whose parity checks are the flat incidence rows of the
/// geometry, over GF(p); requires p to be the characteristic of GF(h).
/// The reconstruction queries the h^r - 1 other points of a uniformly random
/// flat through the target and returns minus their sum (s0 = d - 1).
InnerCode build_inner_code(std::shared_ptr<const AffineGeometry> geometry, std::uint32_t p);

/// Single-parity-check inner code of length d over GF(p) with the
/// query-everything-else scheme. The standard non-geometric test inner code.
InnerCode build_single_parity_code(std::uint32_t p, std::size_t d);

/// Advisory dimension check: computed k0 against h^m - h^{m(1-beta)}.
struct DimensionBoundReport {
    double bound = 0.0;
    std::size_t computed = 0;
    bool ok = true;
};
DimensionBoundReport dimension_bound_check(const AffineGeometry& geometry, std::size_t computed_k0,
                                           double beta = 0.05);

}  // namespace elcc
