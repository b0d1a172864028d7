#include <doctest.h>

#include "elcc/finite_field.hpp"

using namespace elcc;

namespace {

// Reference irreducibility scan used as an independent check of the field's
// modulus choice: re-enumerate candidates the slow way.
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t ell) {
    std::uint32_t order = 1;
    for (std::uint32_t i = 0; i < ell; ++i) order *= p;
    for (std::uint32_t v = 0; v < order; ++v) {
        std::vector<std::uint32_t> coeffs(ell + 1, 0);
        std::uint32_t x = v;
        for (std::uint32_t i = 0; i < ell; ++i) {
            coeffs[i] = x % p;
            x /= p;
        }
        coeffs[ell] = 1;
        if (Field::is_irreducible(p, coeffs)) return coeffs;
    }
    return {};
}

}  // namespace

TEST_CASE("prime fields use the modulus x") {
    auto f = make_field(2, 1);
    CHECK(f->order() == 2);
    CHECK(f->modulus() == std::vector<std::uint32_t>{0, 1});
    CHECK(f->description() == "GF(2)");

    auto f3 = make_field(3, 1);
    CHECK(f3->order() == 3);
    CHECK(f3->description() == "GF(3)");
}

TEST_CASE("GF(4) picks x^2+x+1 via the exhaustive scan") {
    auto f = make_field(2, 2);
    CHECK(f->order() == 4);
    CHECK(f->modulus() == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(f->modulus() == least_irreducible(2, 2));
    CHECK(f->description() == "GF(2^2)");
}

TEST_CASE("GF(8) modulus is the least irreducible cubic") {
    auto f = make_field(2, 3);
    // x^3 + x + 1 beats x^3 + x^2 + 1 in the high-degree-first order.
    CHECK(f->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(f->modulus() == least_irreducible(2, 3));
}

TEST_CASE("non-prime characteristic is rejected") {
    CHECK_THROWS(make_field(4, 1));
    CHECK_THROWS(make_field(1, 1));
    CHECK_THROWS(make_field(2, 0));
}

TEST_CASE("arithmetic examples") {
    auto f2 = make_field(2, 1);
    CHECK(f2->add(1, 1) == 0);

    auto f4 = make_field(2, 2);
    // omega = x has encoding 2; omega^2 = omega + 1 -> encoding 3.
    CHECK(f4->mul(2, 2) == 3);
    CHECK(f4->mul_poly(2, 2) == 3);

    auto f3 = make_field(3, 1);
    CHECK(f3->inv(2) == 2);
    CHECK(f3->neg(1) == 2);
    CHECK(f3->sub(0, 2) == 1);
}

TEST_CASE("table multiplication agrees with polynomial multiplication") {
    for (auto [p, ell] : {std::pair<int, int>{2, 1}, {2, 2}, {2, 3}, {2, 6}, {3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
        auto f = make_field(p, ell);
        for (std::uint32_t a = 0; a < f->order(); ++a)
            for (std::uint32_t b = 0; b < f->order(); ++b) CHECK(f->mul(a, b) == f->mul_poly(a, b));
    }
}

TEST_CASE("field axioms at small orders") {
    for (auto [p, ell] : {std::pair<int, int>{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {7, 1},
                          {11, 1}, {13, 1}, {2, 5}, {2, 6}, {5, 2}, {3, 3}, {7, 2}}) {
        auto f = make_field(p, ell);
        const std::uint32_t h = f->order();
        REQUIRE(h <= 64);
        // Commutativity everywhere; inverses for every nonzero element.
        for (std::uint32_t a = 0; a < h; ++a) {
            for (std::uint32_t b = 0; b < h; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
            }
            CHECK(f->add(a, f->neg(a)) == 0);
            if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
        }
        if (h <= 16) {
            for (std::uint32_t a = 0; a < h; ++a)
                for (std::uint32_t b = 0; b < h; ++b)
                    for (std::uint32_t c = 0; c < h; ++c) {
                        CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                        CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    }
        }
        if (h <= 9) {
            for (std::uint32_t a = 0; a < h; ++a)
                for (std::uint32_t b = 0; b < h; ++b)
                    for (std::uint32_t c = 0; c < h; ++c)
                        CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
        }
    }
}

TEST_CASE("enumerate is a deterministic bijection starting at zero") {
    for (auto [p, ell] : {std::pair<int, int>{2, 1}, {2, 2}, {3, 2}}) {
        auto f = make_field(p, ell);
        auto first = f->enumerate();
        auto second = f->enumerate();
        REQUIRE(first.size() == f->order());
        CHECK(first[0].value == 0);
        std::vector<bool> seen(f->order(), false);
        for (std::size_t i = 0; i < first.size(); ++i) {
            CHECK(first[i].value == second[i].value);
            CHECK_FALSE(seen[first[i].value]);
            seen[first[i].value] = true;
        }
    }
}

TEST_CASE("cross-field operations are hard errors") {
    auto f2 = make_field(2, 1);
    auto f3 = make_field(3, 1);
    const FieldElement a = f2->element(1);
    const FieldElement b = f3->element(1);
    CHECK_THROWS(f2->add(a, b));
    CHECK_THROWS(f3->mul(a, b));
    CHECK_THROWS(f2->inv(f2->element(0)));
}

TEST_CASE("element coefficient encoding") {
    auto f = make_field(3, 2);
    CHECK(f->coefficients(5) == std::vector<std::uint32_t>{2, 1});  // 5 = 2 + 1*3
    CHECK(f->element(5).value == 5);
    CHECK_THROWS(f->element(9));
}
