#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace elcc {

class Field;

/// A field element tagged with its owning field. Mixing elements of two
/// different Field instances is a hard error, never a coercion.
struct FieldElement {
    const Field* owner = nullptr;
    std::uint32_t value = 0;  // canonical encoding: sum of coeff[i] * p^i

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.owner == b.owner && a.value == b.value;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
};

/// Exact arithmetic over GF(p^ell), p prime, with full element enumeration.
///
/// The modulus is the lexicographically least monic irreducible polynomial of
/// degree ell over GF(p) (coefficients compared from the highest degree down),
/// so construction is reproducible across runs and platforms. Elements are
/// encoded as integers in [0, p^ell) via their coefficient vectors in base p.
///
/// Multiplication and inversion go through log/antilog tables over a fixed
/// primitive element; correctness is defined by polynomial arithmetic modulo
/// the modulus, exposed as mul_poly() for verification.
class Field {
 public:
    Field(std::uint32_t p, std::uint32_t ell);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return ell_; }
    std::uint32_t order() const { return order_; }

    /// Modulus coefficients c[0..ell], low degree first, c[ell] == 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    /// "GF(p)" or "GF(p^ell)".
    std::string description() const;

    // Raw arithmetic on encoded values in [0, order).
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;  // throws on a == 0

    /// Reference multiplication: polynomial product reduced mod the modulus.
    /// The table-based mul() must agree with this everywhere.
    std::uint32_t mul_poly(std::uint32_t a, std::uint32_t b) const;

    /// All elements in canonical order (zero first). Deterministic.
    std::vector<FieldElement> enumerate() const;

    FieldElement element(std::uint32_t value) const;

    // Tagged-element arithmetic with owner checks.
    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement inv(FieldElement a) const;

    /// Coefficient vector of an encoded element, length ell, entries in [0, p).
    std::vector<std::uint32_t> coefficients(std::uint32_t value) const;

    static bool is_prime(std::uint32_t p);

    /// True if the monic polynomial with the given coefficients (low degree
    /// first, including the leading 1) is irreducible over GF(p). Trial
    /// division against every monic polynomial of degree 1..deg/2.
    static bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& coeffs);

 private:
    void check_owner(FieldElement a) const;
    void build_tables();

    std::uint32_t p_ = 0;
    std::uint32_t ell_ = 0;
    std::uint32_t order_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::uint32_t generator_ = 0;
    std::vector<std::uint32_t> log_;   // log_[a] for a != 0
    std::vector<std::uint32_t> exp_;   // exp_[k] = g^k, doubled for overflow-free add
};

/// Builds GF(p^ell) with the deterministic modulus choice. Shared ownership
/// so codes, geometries and schemes can hold the field without lifetime fuss.
std::shared_ptr<const Field> make_field(std::uint32_t p, std::uint32_t ell);

}  // namespace elcc
