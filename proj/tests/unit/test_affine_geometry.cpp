#include <doctest.h>

#include <cmath>
#include <set>

#include "elcc/affine_geometry.hpp"

using namespace elcc;

TEST_CASE("flat counts at small parameters") {
    auto g22 = AffineGeometry::enumerate_flats(2, 2, 1);
    CHECK(g22->flat_count() == 6);  // every pair of F_2^2 points is a line
    for (const auto& flat : g22->flats()) CHECK(flat.size() == 2);

    auto g42 = AffineGeometry::enumerate_flats(4, 2, 1);
    CHECK(g42->flat_count() == 20);
    for (const auto& flat : g42->flats()) CHECK(flat.size() == 4);
    for (std::uint32_t pt = 0; pt < 16; ++pt) CHECK(g42->flats_through()[pt].size() == 5);

    auto g32 = AffineGeometry::enumerate_flats(3, 2, 1);
    CHECK(g32->flat_count() == 12);
    for (const auto& flat : g32->flats()) CHECK(flat.size() == 3);
}

TEST_CASE("every point pair lies in exactly one line") {
    auto g = AffineGeometry::enumerate_flats(4, 2, 1);
    for (std::uint32_t a = 0; a < 16; ++a) {
        for (std::uint32_t b = a + 1; b < 16; ++b) {
            int containing = 0;
            for (const auto& flat : g->flats()) {
                bool has_a = std::binary_search(flat.begin(), flat.end(), a);
                bool has_b = std::binary_search(flat.begin(), flat.end(), b);
                containing += has_a && has_b;
            }
            CHECK(containing == 1);
        }
    }
}

TEST_CASE("double counting identity for lines") {
    for (std::uint32_t h : {2u, 3u, 4u}) {
        auto g = AffineGeometry::enumerate_flats(h, 2, 1);
        std::uint64_t pairs = 0;
        for (const auto& flat : g->flats()) pairs += std::uint64_t(flat.size()) * (flat.size() - 1);
        const std::uint64_t points = g->point_count();
        CHECK(pairs == points * (points - 1));
    }
}

TEST_CASE("lines through a point partition the rest") {
    auto g = AffineGeometry::enumerate_flats(8, 2, 1);
    CHECK(g->flats_through()[0].size() == 9);  // (h^m - 1)/(h - 1)
    for (std::uint32_t x = 0; x < g->point_count(); ++x) {
        std::set<std::uint32_t> seen;
        for (std::uint32_t fl : g->flats_through()[x]) {
            for (std::uint32_t pt : g->flats()[fl]) {
                if (pt == x) continue;
                CHECK(seen.insert(pt).second);  // no point twice
            }
        }
        CHECK(seen.size() == g->point_count() - 1);
    }
}

TEST_CASE("planes of F_2^3") {
    auto g = AffineGeometry::enumerate_flats(2, 3, 2);
    // 7 linear planes times 2 cosets each.
    CHECK(g->flat_count() == 14);
    for (const auto& flat : g->flats()) CHECK(flat.size() == 4);
}

TEST_CASE("guards") {
    CHECK_THROWS(AffineGeometry::enumerate_flats(4, 4, 4));   // r >= m
    CHECK_THROWS(AffineGeometry::enumerate_flats(6, 2, 1));   // not a prime power
    CHECK_THROWS(AffineGeometry::enumerate_flats(2, 20, 1));  // h^m over the guard
}

TEST_CASE("point coordinate round trip") {
    auto g = AffineGeometry::enumerate_flats(3, 2, 1);
    for (std::uint32_t idx = 0; idx < g->point_count(); ++idx)
        CHECK(g->point_index(g->point_coordinates(idx)) == idx);
    CHECK(g->point_coordinates(5) == std::vector<std::uint32_t>{2, 1});
}

TEST_CASE("inner code parameters") {
    auto g42 = AffineGeometry::enumerate_flats(4, 2, 1);
    auto inner = build_inner_code(g42, 2);
    CHECK(inner.code->length() == 16);
    CHECK(inner.reconstruction->query_count() == 3);
    CHECK(inner.reconstruction->smoothness() == 15);
    CHECK_FALSE(inner.reconstruction->degenerate());

    auto g82 = AffineGeometry::enumerate_flats(8, 2, 1);
    auto inner8 = build_inner_code(g82, 2);
    CHECK(inner8.code->length() == 64);
    CHECK(inner8.reconstruction->query_count() == 7);

    // Lines over GF(2) have two points: one query, flagged degenerate.
    auto g23 = AffineGeometry::enumerate_flats(2, 3, 1);
    auto inner2 = build_inner_code(g23, 2);
    CHECK(inner2.code->length() == 8);
    CHECK(inner2.reconstruction->query_count() == 1);
    CHECK(inner2.reconstruction->degenerate());
}

TEST_CASE("characteristic mismatch is rejected") {
    auto g = AffineGeometry::enumerate_flats(4, 2, 1);
    CHECK_THROWS(build_inner_code(g, 3));
}

TEST_CASE("incidence rows annihilate generator rows") {
    auto g = AffineGeometry::enumerate_flats(3, 2, 1);
    auto inner = build_inner_code(g, 3);
    const Field& f = inner.code->field();
    for (const auto& gen : inner.code->generator_rows()) {
        for (const auto& flat : g->flats()) {
            std::uint32_t acc = 0;
            for (std::uint32_t pt : flat) acc = f.add(acc, gen[pt]);
            CHECK(acc == 0);
        }
    }
}

TEST_CASE("dimension bound check") {
    auto g = AffineGeometry::enumerate_flats(4, 2, 1);
    auto inner = build_inner_code(g, 2);

    // beta = 0 collapses the bound to zero: always satisfied.
    CHECK(dimension_bound_check(*g, inner.code->dimension(), 0.0).ok);

    const auto report = dimension_bound_check(*g, inner.code->dimension(), 0.05);
    CHECK(report.bound == doctest::Approx(16.0 - std::pow(4.0, 2.0 * 0.95)));
    CHECK(report.ok == (double(inner.code->dimension()) >= report.bound - 1e-9));

    // Full-dimension codes satisfy any sane bound.
    CHECK(dimension_bound_check(*g, 16, 0.05).ok);
}
