#include "elcc/finite_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace elcc {

namespace {

// Dense polynomial helpers over GF(p). Coefficients low degree first.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b, b monic.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        if (lead != 0) {
            for (std::size_t i = 0; i <= db; ++i) {
                std::uint64_t v = a[shift + i] + std::uint64_t(p) * p - std::uint64_t(lead) * b[i] % p;
                a[shift + i] = static_cast<std::uint32_t>(v % p);
            }
        }
        a.pop_back();
        trim(a);
        if (a.size() <= db) break;
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
        }
    }
    return out;
}

Poly decode(std::uint32_t value, std::uint32_t p, std::uint32_t ell) {
    Poly c(ell, 0);
    for (std::uint32_t i = 0; i < ell; ++i) {
        c[i] = value % p;
        value /= p;
    }
    return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

}  // namespace

bool Field::is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t q = 2; std::uint64_t(q) * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

bool Field::is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& coeffs) {
    const std::size_t deg = coeffs.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    // Try all monic divisors of degree 1..deg/2.
    for (std::size_t dd = 1; dd <= deg / 2; ++dd) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < dd; ++i) count *= p;
        for (std::uint64_t k = 0; k < count; ++k) {
            Poly div = decode(static_cast<std::uint32_t>(k), p, static_cast<std::uint32_t>(dd));
            div.push_back(1);
            Poly rem = poly_mod(coeffs, div, p);
            if (rem.empty()) return false;
        }
    }
    return true;
}

Field::Field(std::uint32_t p, std::uint32_t ell) : p_(p), ell_(ell) {
    if (!is_prime(p)) throw std::invalid_argument("Field: characteristic must be prime, got " + std::to_string(p));
    if (ell < 1) throw std::invalid_argument("Field: extension degree must be >= 1");
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < ell; ++i) {
        order *= p;
        if (order > (1u << 16)) throw std::invalid_argument("Field: order above 2^16 is unsupported");
    }
    order_ = static_cast<std::uint32_t>(order);

    // Lexicographically least monic irreducible: scan candidate low-order
    // coefficient vectors in increasing base-p value, highest degree most
    // significant, so e.g. x^3+x+1 is preferred over x^3+x^2+1.
    bool found = false;
    for (std::uint32_t v = 0; v < order_; ++v) {
        Poly cand = decode(v, p, ell);
        cand.push_back(1);
        if (is_irreducible(p, cand)) {
            modulus_ = cand;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("Field: no irreducible modulus found");
    build_tables();
}

std::string Field::description() const {
    if (ell_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(" + std::to_string(p_) + "^" + std::to_string(ell_) + ")";
}

std::uint32_t Field::mul_poly(std::uint32_t a, std::uint32_t b) const {
    if (a >= order_ || b >= order_) throw std::out_of_range("Field::mul_poly: value out of range");
    Poly prod = poly_mul(decode(a, p_, ell_), decode(b, p_, ell_), p_);
    Poly rem = poly_mod(prod, modulus_, p_);
    return encode(rem, p_);
}

void Field::build_tables() {
    // Find a generator of the multiplicative group by checking element order
    // against the prime factors of order-1.
    const std::uint32_t m = order_ - 1;
    std::vector<std::uint32_t> factors;
    std::uint32_t rest = m;
    for (std::uint32_t q = 2; std::uint64_t(q) * q <= rest; ++q) {
        if (rest % q == 0) {
            factors.push_back(q);
            while (rest % q == 0) rest /= q;
        }
    }
    if (rest > 1) factors.push_back(rest);

    auto pow_poly = [&](std::uint32_t base, std::uint32_t e) {
        std::uint32_t acc = 1;
        std::uint32_t b = base;
        while (e) {
            if (e & 1) acc = mul_poly(acc, b);
            b = mul_poly(b, b);
            e >>= 1;
        }
        return acc;
    };

    generator_ = 0;
    for (std::uint32_t g = 1; g < order_; ++g) {
        bool ok = true;
        for (std::uint32_t q : factors) {
            if (pow_poly(g, m / q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            generator_ = g;
            break;
        }
    }
    if (m > 0 && generator_ == 0) throw std::logic_error("Field: no primitive element found");

    log_.assign(order_, 0);
    exp_.assign(2 * m + 2, 1);
    std::uint32_t acc = 1;
    for (std::uint32_t k = 0; k < m; ++k) {
        exp_[k] = acc;
        log_[acc] = k;
        acc = mul_poly(acc, generator_);
    }
    if (acc != 1) throw std::logic_error("Field: generator order mismatch");
    for (std::uint32_t k = m; k < 2 * m + 2; ++k) exp_[k] = exp_[k - m];
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
    if (a >= order_ || b >= order_) throw std::out_of_range("Field::add: value out of range");
    if (ell_ == 1) {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    std::uint32_t out = 0;
    std::uint32_t mult = 1;
    while (a || b) {
        std::uint32_t da = a % p_, db = b % p_;
        std::uint32_t s = da + db;
        if (s >= p_) s -= p_;
        out += s * mult;
        mult *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

std::uint32_t Field::neg(std::uint32_t a) const {
    if (a >= order_) throw std::out_of_range("Field::neg: value out of range");
    if (p_ == 2) return a;
    if (ell_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint32_t out = 0;
    std::uint32_t mult = 1;
    while (a) {
        std::uint32_t da = a % p_;
        out += (da == 0 ? 0 : p_ - da) * mult;
        mult *= p_;
        a /= p_;
    }
    return out;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
    if (a >= order_ || b >= order_) throw std::out_of_range("Field::mul: value out of range");
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a >= order_) throw std::out_of_range("Field::inv: value out of range");
    if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
    const std::uint32_t m = order_ - 1;
    return exp_[(m - log_[a]) % m];
}

std::vector<FieldElement> Field::enumerate() const {
    std::vector<FieldElement> out;
    out.reserve(order_);
    for (std::uint32_t v = 0; v < order_; ++v) out.push_back(FieldElement{this, v});
    return out;
}

FieldElement Field::element(std::uint32_t value) const {
    if (value >= order_) throw std::out_of_range("Field::element: value out of range");
    return FieldElement{this, value};
}

void Field::check_owner(FieldElement a) const {
    if (a.owner != this) throw std::invalid_argument("Field: element belongs to a different field");
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
    check_owner(a);
    check_owner(b);
    return FieldElement{this, add(a.value, b.value)};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
    check_owner(a);
    check_owner(b);
    return FieldElement{this, mul(a.value, b.value)};
}

FieldElement Field::neg(FieldElement a) const {
    check_owner(a);
    return FieldElement{this, neg(a.value)};
}

FieldElement Field::inv(FieldElement a) const {
    check_owner(a);
    return FieldElement{this, inv(a.value)};
}

std::vector<std::uint32_t> Field::coefficients(std::uint32_t value) const {
    if (value >= order_) throw std::out_of_range("Field::coefficients: value out of range");
    return decode(value, p_, ell_);
}

std::shared_ptr<const Field> make_field(std::uint32_t p, std::uint32_t ell) {
    return std::make_shared<const Field>(p, ell);
}

}  // namespace elcc
