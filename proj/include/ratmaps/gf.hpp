#ifndef RATMAPS_GF_HPP
#define RATMAPS_GF_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace ratmaps {

class Field;

/// Shared handle to an immutable field context. A Field never changes after
/// construction, so handles may be copied freely across threads. Polynomials
/// and elements keep raw pointers into the Field; the handle (or another
/// owner) must outlive them.
using FieldCtx = std::shared_ptr<const Field>;

/// Describing data of F_{p^e}: the prime, the extension degree, q = p^e and
/// the monic irreducible modulus over F_p (coefficients low degree first,
/// length e+1, leading coefficient 1).
struct FieldSpec {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::uint64_t q = 0;
    std::vector<std::uint32_t> modulus;

    bool operator==(const FieldSpec&) const = default;
};

/// An element of a specific field, stored as its canonical index in [0, q):
/// the power-basis coordinates (c_0, ..., c_{e-1}) packed as
/// c_0 + c_1 p + ... + c_{e-1} p^{e-1}. For prime fields this is just the
/// residue. Carrying the owning field lets mixed-context arithmetic fail
/// loudly instead of corrupting data.
struct FieldElem {
    std::uint32_t rep = 0;
    const Field* field = nullptr;

    bool operator==(const FieldElem&) const = default;
};

/// Arithmetic context for F_{p^e}. The modulus is the lexicographically
/// smallest monic irreducible of degree e over F_p (coefficients compared
/// low degree first), so construction is a pure function of (p, e) and runs
/// are byte-identical. Elements are manipulated either through FieldElem or,
/// in enumeration-heavy code, directly as packed indices via the *_rep
/// methods.
class Field {
  public:
    static constexpr std::uint64_t kDefaultSizeBound = 1u << 20;

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint64_t q() const { return q_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(q_); }
    const FieldSpec& spec() const { return spec_; }

    FieldElem elem(std::uint32_t rep) const;
    FieldElem zero() const { return {0u, this}; }
    FieldElem one() const { return {1u, this}; }

    /// Power-basis coordinates of an element, e residues in [0, p).
    std::vector<std::uint32_t> coords(FieldElem a) const;
    FieldElem from_coords(const std::vector<std::uint32_t>& coords) const;

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem inv(FieldElem a) const;
    FieldElem pow(FieldElem a, std::uint64_t k) const;
    /// The unique b with b^p = a, i.e. a^{p^{e-1}} (F_q is perfect).
    FieldElem pth_root(FieldElem a) const;

    // Packed-index arithmetic. No context checks; reps must come from this
    // field. These are the hot-path entry points for the enumeration core.
    std::uint32_t add_rep(std::uint32_t a, std::uint32_t b) const {
        return table_ ? table_->add[a * q_ + b] : add_slow(a, b);
    }
    std::uint32_t sub_rep(std::uint32_t a, std::uint32_t b) const {
        return table_ ? table_->sub[a * q_ + b] : sub_slow(a, b);
    }
    std::uint32_t mul_rep(std::uint32_t a, std::uint32_t b) const {
        return table_ ? table_->mul[a * q_ + b] : mul_slow(a, b);
    }
    std::uint32_t neg_rep(std::uint32_t a) const { return sub_rep(0, a); }
    std::uint32_t inv_rep(std::uint32_t a) const;
    std::uint32_t pow_rep(std::uint32_t a, std::uint64_t k) const;
    std::uint32_t pth_root_rep(std::uint32_t a) const;

    ~Field() = default;
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

  private:
    friend FieldCtx make_field(std::uint32_t, std::uint32_t, std::uint64_t);
    Field(std::uint32_t p, std::uint32_t e);

    std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub_slow(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
    void check_elem(FieldElem a) const;

    std::uint32_t p_, e_;
    std::uint64_t q_;
    FieldSpec spec_;

    // Full operation tables for tiny fields (q <= 64). Derived from the
    // generic coordinate arithmetic at construction; they only change the
    // cost of an operation, never its result.
    struct Tables {
        std::vector<std::uint32_t> add, sub, mul;
    };
    std::unique_ptr<Tables> table_;
};

/// Builds F_{p^e} with the deterministic modulus. Throws std::invalid_argument
/// for non-prime p, e < 1, or p^e > bound.
FieldCtx make_field(std::uint32_t p, std::uint32_t e,
                    std::uint64_t bound = Field::kDefaultSizeBound);

/// True if two elements live in the same field (same (p, e); the modulus is
/// then determined). Distinct Field instances with equal specs are
/// interchangeable because construction is deterministic.
bool same_field(FieldElem a, FieldElem b);

FieldElem operator+(FieldElem a, FieldElem b);
FieldElem operator-(FieldElem a, FieldElem b);
FieldElem operator*(FieldElem a, FieldElem b);
FieldElem operator-(FieldElem a);

bool is_prime(std::uint64_t n);

}  // namespace ratmaps

#endif
