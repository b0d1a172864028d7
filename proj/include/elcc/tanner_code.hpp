#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "elcc/affine_geometry.hpp"
#include "elcc/expander_graph.hpp"
#include "elcc/linear_code.hpp"
#include "elcc/smooth_recon.hpp"

namespace elcc {

/// Expander code on the edges of a double cover: a word of length N = n*d is
/// a codeword iff the local view at every cover vertex (its d incident edge
/// symbols in port order) belongs to the inner code.
///
/// Port order is the rotation-map port index on both sides; the convention is
/// frozen because per-vertex permutations can change the code's parameters.
class TannerCode {
 public:
    static TannerCode build(InnerCode inner, std::shared_ptr<const DoubleCover> cover);

    const DoubleCover& cover() const { return *cover_; }
    std::shared_ptr<const DoubleCover> cover_ptr() const { return cover_; }
    const LinearCode& inner() const { return *inner_.code; }
    const InnerCode& inner_bundle() const { return inner_; }
    const SmoothReconstruction& inner_scheme() const { return *inner_.reconstruction; }
    /// Padded (perfectly smooth) scheme used for query-tree construction.
    const SmoothReconstruction& tree_scheme() const { return *tree_scheme_; }
    std::shared_ptr<const SmoothReconstruction> tree_scheme_ptr() const { return tree_scheme_; }

    const Field& field() const { return inner_.code->field(); }
    std::uint32_t length() const { return cover_->edge_count(); }  // N
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// Symbols incident to a cover vertex, in port order. side 0 = left copy.
    std::vector<std::uint32_t> local_view(const std::vector<std::uint8_t>& word, std::uint32_t side,
                                          std::uint32_t vertex) const;
    bool is_codeword(const std::vector<std::uint8_t>& word) const;

    /// Stacked per-vertex independent inner parity rows routed through the
    /// port order: 2n * (d - k0) rows, N columns.
    FieldMatrix global_parity_matrix() const;

    /// Nullspace dimension and basis of the global parity system. Dense
    /// elimination, guarded at N <= 4096. Asserts k >= (2 r0 - 1) N.
    void compute_dimension_and_generator();
    bool has_generator() const { return dimension_computed_; }
    std::optional<std::size_t> dimension() const { return dimension_computed_ ? std::optional(dimension_) : std::nullopt; }
    const std::vector<std::vector<std::uint8_t>>& generator() const { return generator_; }
    /// Message positions (one per generator row), ascending.
    const std::vector<std::size_t>& systematic_positions() const { return systematic_; }

    /// Systematic encoding against the computed generator.
    std::vector<std::uint8_t> encode(const std::vector<std::uint32_t>& message) const;

    /// Uniformly random codeword from the computed generator basis.
    std::vector<std::uint8_t> random_codeword(Rng& rng) const;
    std::vector<std::uint8_t> zero_codeword() const { return std::vector<std::uint8_t>(length(), 0); }

 private:
    InnerCode inner_;
    std::shared_ptr<const SmoothReconstruction> tree_scheme_;
    std::shared_ptr<const DoubleCover> cover_;
    std::vector<std::string> warnings_;
    bool dimension_computed_ = false;
    std::size_t dimension_ = 0;
    std::vector<std::vector<std::uint8_t>> generator_;
    std::vector<std::size_t> systematic_;
};

}  // namespace elcc
