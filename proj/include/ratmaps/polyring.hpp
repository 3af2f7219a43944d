#ifndef RATMAPS_POLYRING_HPP
#define RATMAPS_POLYRING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ratmaps/gf.hpp"

namespace ratmaps {

/// Dense univariate polynomial over a fixed field. Coefficients are packed
/// element indices, low degree first, with no trailing zeros; the zero
/// polynomial is the empty vector. The field must outlive the polynomial.
class Poly {
  public:
    Poly() = default;
    explicit Poly(const Field& f) : field_(&f) {}
    /// Builds from raw coefficient reps (low degree first); trims trailing
    /// zeros.
    Poly(const Field& f, std::vector<std::uint32_t> coeffs);

    static Poly zero(const Field& f) { return Poly(f); }
    static Poly one(const Field& f) { return Poly(f, {1}); }
    static Poly monomial(const Field& f, std::uint32_t coeff, int degree);
    /// z - c
    static Poly linear_root(const Field& f, std::uint32_t c);

    const Field& field() const;
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    std::uint32_t leading() const;
    std::uint32_t coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0;
    }

    std::uint32_t eval(std::uint32_t x) const;
    Poly derivative() const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    std::string str() const;

  private:
    friend Poly operator+(const Poly&, const Poly&);
    friend Poly operator-(const Poly&, const Poly&);
    friend Poly operator*(const Poly&, const Poly&);

    void trim();

    const Field* field_ = nullptr;
    std::vector<std::uint32_t> c_;
};

Poly operator+(const Poly& f, const Poly& g);
Poly operator-(const Poly& f, const Poly& g);
Poly operator*(const Poly& f, const Poly& g);

/// Quotient and remainder with f = quo * g + rem, deg rem < deg g.
/// Throws std::domain_error when g is zero.
std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g);

/// Exact division; throws std::invalid_argument if the remainder is nonzero.
Poly divexact(const Poly& f, const Poly& g);

bool divides(const Poly& g, const Poly& f);

Poly pow(const Poly& f, unsigned k);

/// Scales to leading coefficient 1. The zero polynomial is rejected.
Poly monic(const Poly& f);

/// Monic greatest common divisor; gcd(f, 0) = monic(f). Both inputs zero is
/// an error.
Poly gcd_monic(const Poly& f, const Poly& g);

/// f = prod s_j^j with each s_j monic, squarefree, of degree >= 1 and
/// pairwise coprime. Only nontrivial parts are stored, in increasing j.
struct SquarefreeDecomp {
    std::vector<std::pair<Poly, unsigned>> parts;
};

/// Squarefree decomposition of a monic nonconstant polynomial, correct in
/// characteristic p: Yun iteration on the separable part, and whenever the
/// derivative vanishes identically the input is rewritten as g(z^p) via
/// coefficient-wise p-th roots and the recursion multiplies multiplicities
/// by p.
SquarefreeDecomp squarefree_decomposition(const Poly& f);

/// Monic squarefree product of the parts of multiplicity >= t: the locus of
/// roots of f of multiplicity at least t. Returns 1 when no part qualifies
/// (in particular for constant f). Requires monic f and t >= 1.
Poly multiplicity_filter(const Poly& f, int t);

/// f(a + b z), expanded. Used for the affine reparametrizations in strata.
Poly compose_affine(const Poly& f, std::uint32_t a, std::uint32_t b);

}  // namespace ratmaps

#endif
