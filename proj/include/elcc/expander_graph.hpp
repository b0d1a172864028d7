#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "elcc/numeric.hpp"
#include "elcc/rng.hpp"

namespace elcc {

/// d-regular multigraph-free graph given by its rotation map:
/// rotation(v, port) = (neighbor, neighbor's port), a fixed-point-free
/// involution pairing the two half-edge views of every edge. Self-loops are
/// disallowed; the random generator additionally rejects multi-edges.
class RegularGraph {
 public:
    struct HalfEdge {
        std::uint32_t vertex;
        std::uint32_t port;
    };

    RegularGraph(std::uint32_t n, std::uint32_t d, std::vector<HalfEdge> rotation);

    /// Pairing-model sampling of a simple d-regular graph, deterministic per
    /// seed; throws after the retry budget if no simple matching shows up.
    static RegularGraph random_regular(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                                       std::uint32_t max_attempts = 10000);
    static RegularGraph complete(std::uint32_t n);  // K_n (d = n-1)
    static RegularGraph cycle(std::uint32_t n);     // C_n (d = 2)

    std::uint32_t vertex_count() const { return n_; }
    std::uint32_t degree() const { return d_; }

    HalfEdge rotation(std::uint32_t vertex, std::uint32_t port) const { return rotation_[vertex * d_ + port]; }
    std::uint32_t neighbor(std::uint32_t vertex, std::uint32_t port) const {
        return rotation_[vertex * d_ + port].vertex;
    }

    bool connected() const;

    /// lambda = max |eigenvalue| of the normalized adjacency matrix on the
    /// complement of the all-ones vector, via power iteration on the squared
    /// deflated operator. Disconnected graphs report 1. Cached.
    double second_eigenvalue(double tolerance = 1e-8) const;
    std::optional<double> cached_lambda() const { return lambda_; }
    void set_cached_lambda(double v) const { lambda_ = v; }

    /// Normalized adjacency A/d as a dense matrix (small n only).
    DenseMatrix normalized_adjacency() const;

    /// Ramanujan reference value 2*sqrt(d-1)/d for this degree.
    static double ramanujan_bound(std::uint32_t d);

 private:
    std::uint32_t n_ = 0;
    std::uint32_t d_ = 0;
    std::vector<HalfEdge> rotation_;
    mutable std::optional<double> lambda_;
};

/// Bipartite double cover H of a base graph G. Vertices are two copies
/// (side 0 and side 1) of V(G); every base edge {u,v} lifts to the two cover
/// edges (u0,v1) and (v0,u1), so H has N = n*d edges, each a codeword
/// position. Edge ids are (left vertex, left port): id = u*d + port.
class DoubleCover {
 public:
    explicit DoubleCover(std::shared_ptr<const RegularGraph> base);

    const RegularGraph& base() const { return *base_; }
    std::shared_ptr<const RegularGraph> base_ptr() const { return base_; }
    std::uint32_t edge_count() const { return edge_count_; }  // N = n*d
    std::uint32_t vertex_count() const { return 2 * base_->vertex_count(); }

    std::uint32_t left_vertex(std::uint32_t edge) const { return edge / base_->degree(); }
    std::uint32_t left_port(std::uint32_t edge) const { return edge % base_->degree(); }
    std::uint32_t right_vertex(std::uint32_t edge) const { return right_vertex_[edge]; }
    std::uint32_t right_port(std::uint32_t edge) const { return right_port_[edge]; }

    /// Edge incident to a vertex on the given side at the given port.
    std::uint32_t incident_edge(std::uint32_t side, std::uint32_t vertex, std::uint32_t port) const {
        return side == 0 ? vertex * base_->degree() + port : right_incident_[vertex * base_->degree() + port];
    }

    std::uint32_t edge_from_left(std::uint32_t vertex, std::uint32_t port) const {
        return vertex * base_->degree() + port;
    }
    std::uint32_t edge_from_right(std::uint32_t vertex, std::uint32_t port) const {
        return right_incident_[vertex * base_->degree() + port];
    }

 private:
    std::shared_ptr<const RegularGraph> base_;
    std::uint32_t edge_count_ = 0;
    std::vector<std::uint32_t> right_vertex_;
    std::vector<std::uint16_t> right_port_;
    std::vector<std::uint32_t> right_incident_;
};

/// Random walk on the double cover. Starts on side 0; each step picks a
/// uniformly random port of the current vertex and crosses the corresponding
/// edge to the opposite side.
struct WalkResult {
    std::vector<std::uint32_t> vertices;  // length L+1, alternating sides starting at side 0
    std::vector<std::uint32_t> edges;     // length L, traversed edge ids
};
WalkResult random_walk(const DoubleCover& cover, std::uint32_t start_vertex, std::size_t length, Rng& rng);

/// Spectral consistency check of the directed-edge walk operator of the
/// double cover: its nonzero spectrum must be the plus/minus pairs of the
/// base graph's normalized spectrum, everything else zero.
///
/// Verified without a general nonsymmetric eigensolver: the base spectrum
/// comes from a Jacobi decomposition; for every base eigenpair the two known
/// eigenvectors of the edge operator are checked by residual, and an
/// elimination rank bound certifies that no other nonzero eigenvalue exists.
struct EdgeWalkSpectrumReport {
    bool pass = false;
    std::vector<double> base_spectrum;      // eigenvalues of A/d, ascending
    std::vector<double> edge_spectrum;      // certified nonzero spectrum of the edge operator
    double max_residual = 0.0;
    std::size_t operator_rank = 0;          // rank of the full edge operator
    std::size_t shift_block_rank = 0;       // rank of one shift block (<= n required)
};
EdgeWalkSpectrumReport edge_walk_spectrum_check(const RegularGraph& graph, double tolerance = 1e-8);

}  // namespace elcc
