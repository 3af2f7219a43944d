#include "ratmaps/gf.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace ratmaps {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Polynomial helpers over F_p used only while searching for the modulus.
// Vectors are coefficient lists, low degree first, not necessarily trimmed.

using FpPoly = std::vector<std::uint32_t>;

int fp_deg(const FpPoly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

// Remainder of f modulo monic g, in place.
void fp_mod(FpPoly& f, const FpPoly& g, std::uint32_t p) {
    const int dg = fp_deg(g);
    for (int i = fp_deg(f); i >= dg; i = fp_deg(f)) {
        const std::uint64_t c = f[i];
        if (c != 0) {
            for (int j = 0; j < dg; ++j) {
                std::uint64_t t = f[i - dg + j] + (p - 1ull) * c % p * g[j] % p;
                f[i - dg + j] = static_cast<std::uint32_t>(t % p);
            }
        }
        f[i] = 0;
    }
}

bool fp_divides(const FpPoly& g, const FpPoly& f, std::uint32_t p) {
    FpPoly r = f;
    fp_mod(r, g, p);
    return fp_deg(r) < 0;
}

// Irreducibility over F_p by trial division: no monic factor of degree
// 1..deg/2 divides f. Candidate moduli are tiny (p^e <= 2^20), so the
// sqrt-size search space is at most ~1024 polynomials per degree.
bool fp_irreducible(const FpPoly& f, std::uint32_t p) {
    const int d = fp_deg(f);
    if (d < 1) return false;
    for (int k = 1; 2 * k <= d; ++k) {
        FpPoly g(static_cast<std::size_t>(k) + 1, 0);
        g[static_cast<std::size_t>(k)] = 1;
        std::uint64_t count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t v = idx;
            for (int i = 0; i < k; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            if (fp_divides(g, f, p)) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree e over F_p,
// comparing coefficient vectors low degree first. For e = 1 this is z.
FpPoly smallest_irreducible(std::uint32_t p, std::uint32_t e) {
    FpPoly f(static_cast<std::size_t>(e) + 1, 0);
    f[e] = 1;
    if (e == 1) return f;  // z is irreducible; all-zero low part is smallest
    // Odometer over (c_0, ..., c_{e-1}) with c_0 the most significant
    // position, so candidates appear in increasing lexicographic order.
    std::vector<std::uint32_t> c(e, 0);
    for (;;) {
        for (std::uint32_t i = 0; i < e; ++i) f[i] = c[i];
        if (fp_irreducible(f, p)) return f;
        int i = static_cast<int>(e) - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == p - 1) {
            c[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
    }
    throw std::logic_error("no irreducible polynomial found (unreachable)");
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t e) : p_(p), e_(e) {
    q_ = 1;
    for (std::uint32_t i = 0; i < e; ++i) q_ *= p;
    spec_.p = p;
    spec_.e = e;
    spec_.q = q_;
    spec_.modulus = smallest_irreducible(p, e);
    if (q_ <= 64) {
        table_ = std::make_unique<Tables>();
        table_->add.resize(q_ * q_);
        table_->sub.resize(q_ * q_);
        table_->mul.resize(q_ * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b) {
                table_->add[a * q_ + b] = add_slow(a, b);
                table_->sub[a * q_ + b] = sub_slow(a, b);
                table_->mul[a * q_ + b] = mul_slow(a, b);
            }
    }
}

FieldCtx make_field(std::uint32_t p, std::uint32_t e, std::uint64_t bound) {
    if (!is_prime(p))
        throw std::invalid_argument("make_field: p = " + std::to_string(p) +
                                    " is not prime");
    if (e < 1) throw std::invalid_argument("make_field: extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > bound)
            throw std::invalid_argument("make_field: p^e exceeds the size bound " +
                                        std::to_string(bound));
    }
    return FieldCtx(new Field(p, e));
}

FieldElem Field::elem(std::uint32_t rep) const {
    if (rep >= q_) throw std::invalid_argument("Field::elem: index out of range");
    return {rep, this};
}

std::vector<std::uint32_t> Field::coords(FieldElem a) const {
    check_elem(a);
    std::vector<std::uint32_t> c(e_);
    std::uint32_t v = a.rep;
    for (std::uint32_t i = 0; i < e_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return c;
}

FieldElem Field::from_coords(const std::vector<std::uint32_t>& coords) const {
    if (coords.size() != e_)
        throw std::invalid_argument("Field::from_coords: expected exactly e coordinates");
    std::uint32_t rep = 0;
    for (std::uint32_t i = e_; i-- > 0;) {
        if (coords[i] >= p_)
            throw std::invalid_argument("Field::from_coords: coordinate out of [0, p)");
        rep = rep * p_ + coords[i];
    }
    return {rep, this};
}

void Field::check_elem(FieldElem a) const {
    if (a.field == nullptr || a.field->spec() != spec_)
        throw std::invalid_argument("field element used with a mismatched field context");
    if (a.rep >= q_) throw std::invalid_argument("field element representation out of range");
}

std::uint32_t Field::add_slow(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t rep = 0, mult = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        rep += s * mult;
        mult *= p_;
        a /= p_;
        b /= p_;
    }
    return rep;
}

std::uint32_t Field::sub_slow(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t rep = 0, mult = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t x = a % p_, y = b % p_;
        rep += (x >= y ? x - y : x + p_ - y) * mult;
        mult *= p_;
        a /= p_;
        b /= p_;
    }
    return rep;
}

std::uint32_t Field::mul_slow(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
    // Schoolbook product in the power basis, then reduction by the monic
    // modulus, top degree down.
    std::array<std::uint32_t, 64> x{}, y{}, acc{};
    for (std::uint32_t i = 0; i < e_; ++i) {
        x[i] = a % p_;
        a /= p_;
        y[i] = b % p_;
        b /= p_;
    }
    for (std::uint32_t i = 0; i < e_; ++i) {
        if (x[i] == 0) continue;
        for (std::uint32_t j = 0; j < e_; ++j)
            acc[i + j] = static_cast<std::uint32_t>(
                (acc[i + j] + std::uint64_t(x[i]) * y[j]) % p_);
    }
    const auto& mod = spec_.modulus;
    for (std::uint32_t i = 2 * e_ - 2; i >= e_; --i) {
        const std::uint64_t c = acc[i];
        if (c != 0) {
            for (std::uint32_t j = 0; j < e_; ++j) {
                std::uint64_t t = acc[i - e_ + j] + (p_ - 1ull) * c % p_ * mod[j] % p_;
                acc[i - e_ + j] = static_cast<std::uint32_t>(t % p_);
            }
            acc[i] = 0;
        }
    }
    std::uint32_t rep = 0;
    for (std::uint32_t i = e_; i-- > 0;) rep = rep * p_ + acc[i];
    return rep;
}

std::uint32_t Field::pow_rep(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t result = 1, base = a;
    while (k > 0) {
        if (k & 1) result = mul_rep(result, base);
        base = mul_rep(base, base);
        k >>= 1;
    }
    return result;
}

std::uint32_t Field::inv_rep(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("inversion of zero field element");
    return pow_rep(a, q_ - 2);
}

std::uint32_t Field::pth_root_rep(std::uint32_t a) const {
    std::uint64_t k = 1;
    for (std::uint32_t i = 0; i + 1 < e_; ++i) k *= p_;
    return pow_rep(a, k);
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
    check_elem(a);
    check_elem(b);
    return {add_rep(a.rep, b.rep), this};
}

FieldElem Field::sub(FieldElem a, FieldElem b) const {
    check_elem(a);
    check_elem(b);
    return {sub_rep(a.rep, b.rep), this};
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
    check_elem(a);
    check_elem(b);
    return {mul_rep(a.rep, b.rep), this};
}

FieldElem Field::neg(FieldElem a) const {
    check_elem(a);
    return {neg_rep(a.rep), this};
}

FieldElem Field::inv(FieldElem a) const {
    check_elem(a);
    return {inv_rep(a.rep), this};
}

FieldElem Field::pow(FieldElem a, std::uint64_t k) const {
    check_elem(a);
    return {pow_rep(a.rep, k), this};
}

FieldElem Field::pth_root(FieldElem a) const {
    check_elem(a);
    return {pth_root_rep(a.rep), this};
}

bool same_field(FieldElem a, FieldElem b) {
    return a.field != nullptr && b.field != nullptr &&
           a.field->spec() == b.field->spec();
}

namespace {
const Field& common_field(FieldElem a, FieldElem b) {
    if (!same_field(a, b))
        throw std::invalid_argument("arithmetic between elements of different fields");
    return *a.field;
}
}  // namespace

FieldElem operator+(FieldElem a, FieldElem b) { return common_field(a, b).add(a, b); }
FieldElem operator-(FieldElem a, FieldElem b) { return common_field(a, b).sub(a, b); }
FieldElem operator*(FieldElem a, FieldElem b) { return common_field(a, b).mul(a, b); }
FieldElem operator-(FieldElem a) { return a.field->neg(a); }

}  // namespace ratmaps
