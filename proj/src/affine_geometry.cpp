#include "elcc/affine_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace elcc {

namespace {

struct PrimePower {
    std::uint32_t p;
    std::uint32_t ell;
};

PrimePower factor_prime_power(std::uint32_t h) {
    if (h < 2) throw std::invalid_argument("affine geometry: field order must be >= 2");
    std::uint32_t p = 0;
    for (std::uint32_t q = 2; q <= h; ++q) {
        if (h % q == 0) {
            p = q;
            break;
        }
    }
    std::uint32_t ell = 0;
    std::uint32_t rest = h;
    while (rest % p == 0) {
        rest /= p;
        ++ell;
    }
    if (rest != 1) throw std::invalid_argument("affine geometry: field order must be a prime power");
    return {p, ell};
}

// Enumerate all r-dimensional linear subspaces of F_h^m via their unique
// reduced-row-echelon bases: pick pivot columns j_1 < ... < j_r, then fill
// the free entries (right of each pivot, outside pivot columns).
void enumerate_subspace_bases(const Field& f, std::uint32_t m, std::uint32_t r,
                              const std::function<void(const std::vector<std::vector<std::uint32_t>>&)>& emit) {
    std::vector<std::uint32_t> pivots(r);
    // Iterate over pivot column combinations.
    for (std::uint32_t i = 0; i < r; ++i) pivots[i] = i;
    const std::uint32_t h = f.order();
    while (true) {
        // Free coordinates: (row i, col c) with c > pivots[i] and c not a pivot.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> free_slots;
        std::vector<bool> is_pivot(m, false);
        for (std::uint32_t c : pivots) is_pivot[c] = true;
        for (std::uint32_t i = 0; i < r; ++i)
            for (std::uint32_t c = pivots[i] + 1; c < m; ++c)
                if (!is_pivot[c]) free_slots.emplace_back(i, c);

        std::vector<std::uint32_t> values(free_slots.size(), 0);
        while (true) {
            std::vector<std::vector<std::uint32_t>> basis(r, std::vector<std::uint32_t>(m, 0));
            for (std::uint32_t i = 0; i < r; ++i) basis[i][pivots[i]] = 1;
            for (std::size_t s = 0; s < free_slots.size(); ++s)
                basis[free_slots[s].first][free_slots[s].second] = values[s];
            emit(basis);
            // Odometer over free values.
            std::size_t s = 0;
            while (s < values.size() && values[s] + 1 == h) values[s++] = 0;
            if (s == values.size()) break;
            ++values[s];
        }

        // Next pivot combination.
        std::int64_t i = r - 1;
        while (i >= 0 && pivots[i] == m - r + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (std::uint32_t j = i + 1; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
    }
}

}  // namespace

std::shared_ptr<const AffineGeometry> AffineGeometry::enumerate_flats(std::uint32_t h, std::uint32_t m,
                                                                      std::uint32_t r) {
    if (r >= m) throw std::invalid_argument("AffineGeometry: flat dimension must satisfy r < m");
    if (r < 1) throw std::invalid_argument("AffineGeometry: flat dimension must be >= 1");
    double points = std::pow(double(h), double(m));
    if (points > double(1u << 16)) throw std::invalid_argument("AffineGeometry: h^m exceeds the 2^16 guard");

    const PrimePower pp = factor_prime_power(h);
    auto geometry = std::make_shared<AffineGeometry>();
    geometry->field_ = make_field(pp.p, pp.ell);
    geometry->m_ = m;
    geometry->r_ = r;
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) count *= h;
    geometry->point_count_ = count;

    const Field& f = *geometry->field_;

    // Point arithmetic on packed base-h indices.
    auto add_points = [&](std::uint32_t a, std::uint32_t b) {
        std::uint32_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            out += f.add(a % h, b % h) * mult;
            mult *= h;
            a /= h;
            b /= h;
        }
        return out;
    };
    auto scale_point = [&](std::uint32_t t, std::uint32_t a) {
        std::uint32_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            out += f.mul(t, a % h) * mult;
            mult *= h;
            a /= h;
        }
        return out;
    };

    enumerate_subspace_bases(f, m, r, [&](const std::vector<std::vector<std::uint32_t>>& basis) {
        // All h^r points of the subspace: combinations of basis rows.
        std::vector<std::uint32_t> basis_points(r);
        for (std::uint32_t i = 0; i < r; ++i) {
            std::uint32_t pt = 0, mult = 1;
            for (std::uint32_t c = 0; c < m; ++c) {
                pt += basis[i][c] * mult;
                mult *= h;
            }
            basis_points[i] = pt;
        }
        std::vector<std::uint32_t> subspace;
        std::vector<std::uint32_t> coeffs(r, 0);
        while (true) {
            std::uint32_t pt = 0;
            for (std::uint32_t i = 0; i < r; ++i)
                if (coeffs[i]) pt = add_points(pt, scale_point(coeffs[i], basis_points[i]));
            subspace.push_back(pt);
            std::size_t i = 0;
            while (i < r && coeffs[i] + 1 == h) coeffs[i++] = 0;
            if (i == r) break;
            ++coeffs[i];
        }

        // Cosets of the subspace partition the point set: one flat each.
        std::vector<bool> seen(geometry->point_count_, false);
        for (std::uint32_t base = 0; base < geometry->point_count_; ++base) {
            if (seen[base]) continue;
            std::vector<std::uint32_t> flat;
            flat.reserve(subspace.size());
            for (std::uint32_t s : subspace) {
                const std::uint32_t pt = add_points(base, s);
                seen[pt] = true;
                flat.push_back(pt);
            }
            std::sort(flat.begin(), flat.end());
            geometry->flats_.push_back(std::move(flat));
        }
    });

    geometry->flats_through_.assign(geometry->point_count_, {});
    for (std::size_t fl = 0; fl < geometry->flats_.size(); ++fl)
        for (std::uint32_t pt : geometry->flats_[fl])
            geometry->flats_through_[pt].push_back(static_cast<std::uint32_t>(fl));
    return geometry;
}

std::vector<std::uint32_t> AffineGeometry::point_coordinates(std::uint32_t index) const {
    std::vector<std::uint32_t> coords(m_);
    const std::uint32_t h = order();
    for (std::uint32_t i = 0; i < m_; ++i) {
        coords[i] = index % h;
        index /= h;
    }
    return coords;
}

std::uint32_t AffineGeometry::point_index(const std::vector<std::uint32_t>& coords) const {
    if (coords.size() != m_) throw std::invalid_argument("AffineGeometry::point_index: wrong arity");
    std::uint32_t out = 0;
    const std::uint32_t h = order();
    for (std::size_t i = coords.size(); i-- > 0;) out = out * h + coords[i];
    return out;
}

namespace {

/// Queries the other points of a uniformly random flat through the target.
/// Query order within a flat is the point enumeration order, so evaluated
/// trees are reproducible from a seed.
class FlatScheme : public SmoothReconstruction {
 public:
    FlatScheme(std::shared_ptr<const AffineGeometry> geometry, std::shared_ptr<const LinearCode> code)
        : SmoothReconstruction(
              code, static_cast<std::uint32_t>(geometry->flats()[0].size() - 1),
              static_cast<std::uint32_t>(geometry->flats()[0].size() - 1),
              static_cast<std::uint32_t>(code->length() - 1), "flat"),
          geometry_(std::move(geometry)) {
        degenerate_ = query_count_ <= 1;
    }

    QuerySet sample_queries(std::uint32_t position, Rng& rng) const override {
        const auto& through = geometry_->flats_through()[position];
        const std::uint32_t flat_id = through[rng.bounded(static_cast<std::uint32_t>(through.size()))];
        return query_set_for(position, flat_id);
    }

    std::uint32_t sample_into(std::uint32_t position, Rng& rng, std::uint32_t* out) const override {
        const auto& through = geometry_->flats_through()[position];
        const std::uint32_t flat_id = through[rng.bounded(static_cast<std::uint32_t>(through.size()))];
        const auto& flat = geometry_->flats()[flat_id];
        std::uint32_t j = 0;
        for (std::uint32_t pt : flat)
            if (pt != position) out[j++] = pt;
        return flat_id;
    }

    std::uint32_t reconstruct(std::span<const std::uint32_t> values, std::uint32_t, std::uint32_t) const override {
        if (values.size() < real_count_) throw std::invalid_argument("FlatScheme: arity mismatch");
        const Field& f = code_->field();
        std::uint32_t acc = 0;
        for (std::uint32_t i = 0; i < real_count_; ++i) acc = f.add(acc, values[i]);
        return f.neg(acc);
    }

    bool is_negated_sum() const override { return true; }

    double query_probability(std::uint32_t position, std::uint32_t target) const override {
        if (target == position) return 0.0;
        const auto& through = geometry_->flats_through()[position];
        std::size_t containing = 0;
        for (std::uint32_t fl : through) {
            const auto& flat = geometry_->flats()[fl];
            if (std::binary_search(flat.begin(), flat.end(), target)) ++containing;
        }
        return double(containing) / double(through.size());
    }

    bool supports_exhaustive_enumeration() const override { return true; }

    std::vector<QuerySet> all_query_sets(std::uint32_t position) const override {
        std::vector<QuerySet> out;
        for (std::uint32_t fl : geometry_->flats_through()[position]) out.push_back(query_set_for(position, fl));
        return out;
    }

 private:
    QuerySet query_set_for(std::uint32_t position, std::uint32_t flat_id) const {
        QuerySet q;
        q.provenance = flat_id;
        const auto& flat = geometry_->flats()[flat_id];
        q.positions.reserve(flat.size() - 1);
        for (std::uint32_t pt : flat)
            if (pt != position) q.positions.push_back(pt);
        q.real_count = static_cast<std::uint32_t>(q.positions.size());
        return q;
    }

    std::shared_ptr<const AffineGeometry> geometry_;
};

}  // namespace

InnerCode build_inner_code(std::shared_ptr<const AffineGeometry> geometry, std::uint32_t p) {
    if (geometry->point_field().characteristic() != p)
        throw std::invalid_argument("build_inner_code: symbol characteristic does not divide the field order");
    auto symbol_field = make_field(p, 1);
    const std::size_t d = geometry->point_count();
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(geometry->flat_count());
    for (const auto& flat : geometry->flats()) {
        std::vector<std::uint32_t> row(d, 0);
        for (std::uint32_t pt : flat) row[pt] = 1;
        rows.push_back(std::move(row));
    }
    auto code = std::make_shared<LinearCode>(LinearCode::from_parity_checks(symbol_field, d, rows));
    auto recon = std::make_shared<FlatScheme>(geometry, code);
    return InnerCode{geometry, code, recon};
}

InnerCode build_single_parity_code(std::uint32_t p, std::size_t d) {
    auto symbol_field = make_field(p, 1);
    std::vector<std::vector<std::uint32_t>> rows{std::vector<std::uint32_t>(d, 1)};
    auto code = std::make_shared<LinearCode>(LinearCode::from_parity_checks(symbol_field, d, rows));
    auto recon = std::make_shared<ComplementScheme>(code);
    return InnerCode{nullptr, code, recon};
}

DimensionBoundReport dimension_bound_check(const AffineGeometry& geometry, std::size_t computed_k0, double beta) {
    DimensionBoundReport report;
    const double h = geometry.order();
    const double m = geometry.ambient_dimension();
    report.bound = std::pow(h, m) - std::pow(h, m * (1.0 - beta));
    report.computed = computed_k0;
    report.ok = double(computed_k0) + 1e-9 >= report.bound;
    return report;
}

}  // namespace elcc
