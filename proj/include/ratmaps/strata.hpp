#ifndef RATMAPS_STRATA_HPP
#define RATMAPS_STRATA_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ratmaps/bigint.hpp"
#include "ratmaps/gf.hpp"
#include "ratmaps/polyring.hpp"

namespace ratmaps {

/// m-tuple of monic degree-d polynomials over one field: a candidate point
/// of Poly_n^{d,m}. Degree-0 tuples (every entry the constant 1) are valid;
/// they arise as recursion bases and extraction outputs.
struct PolyTuple {
    std::vector<Poly> polys;
    int d = 0;
    int m = 0;

    PolyTuple() = default;
    explicit PolyTuple(std::vector<Poly> entries);

    const Field& field() const { return polys.at(0).field(); }
    bool operator==(const PolyTuple& o) const { return polys == o.polys; }
};

struct StratumParams {
    int d = 0;
    int n = 1;
    int m = 1;
    int k = 0;
};

/// The unique maximal monic h with h^n dividing every entry: each irreducible
/// pi enters h with exponent floor(min_i mult_pi(f_i) / n). Computed as
/// prod_{r>=1} S_{rn} with S_t the gcd over i of multiplicity_filter(f_i, t),
/// so no factorization or root-finding in extension fields is ever needed,
/// and the answer is correct over the algebraic closure.
Poly common_power_factor(const PolyTuple& t, int n);

/// Same operation on a bare list of monic polynomials (degrees may differ;
/// for n = 1 this is exactly the monic gcd).
Poly common_power_factor(const std::vector<Poly>& polys, int n);

/// Squarefree structure of a tuple, decomposed once, for callers that need
/// the common power factor at several multiplicity bounds.
struct TupleStructure {
    explicit TupleStructure(const PolyTuple& t);
    explicit TupleStructure(const std::vector<Poly>& polys);
    Poly common_power_factor(int n) const;

    const Field* field = nullptr;
    int d = 0;  // largest entry degree
    std::vector<SquarefreeDecomp> decomps;
};

/// Membership in Poly_n^{d,m}: no common root of multiplicity >= n in the
/// algebraic closure.
bool is_poly_point(const PolyTuple& t, int n);

/// deg common_power_factor(t, n); the tuple lies in R_{n,k} iff this is >= k.
int stratum_index(const PolyTuple& t, int n);

/// Splits t as (g, h) with h the common n-fold factor, g_i = f_i / h^n; g is
/// a Poly_n point of degree d - n*deg(h). One side of the stratification
/// bijection.
std::pair<PolyTuple, Poly> extract(const PolyTuple& t, int n);

/// Inverse of extract: entries g_i * h^n. Requires g to be a Poly_n point
/// (otherwise the map would not be injective) and h monic.
PolyTuple compose(const PolyTuple& g, const Poly& h, int n);

/// A point of PConf_{m-1}(A^1) x Rat*: m-1 pairwise distinct marks in
/// A^1(F_q) and a tuple representing a based rational map (no common root at
/// all, i.e. a Poly_1 point).
struct MarkedRat {
    std::vector<FieldElem> marks;
    PolyTuple rat;

    MarkedRat(std::vector<FieldElem> marks_, PolyTuple rat_);
};

/// Canonical form of a marked rational map under the affine group of the
/// line: the first two marks are moved to 0 and 1.
struct PsiNormalForm {
    std::vector<FieldElem> conf;  // m-3 points, distinct, none equal to 0 or 1
    PolyTuple rat;

    bool operator==(const PsiNormalForm& o) const { return conf == o.conf && rat == o.rat; }
};

/// Applies the unique affine map beta with beta(z_1) = 0, beta(z_2) = 1 to
/// the marks and replaces the map by its reparametrization along beta^{-1}
/// (entries recomposed and rescaled back to monic). Constant on orbits of
/// the affine group acting by (alpha, (marks, phi)) -> (alpha(marks),
/// phi o alpha^{-1}).
PsiNormalForm psi_normalize(const MarkedRat& mr);

/// The affine-group action itself (a(z) = az + b, a != 0); exposed so the
/// orbit-invariance of psi_normalize can be exercised directly.
MarkedRat apply_affine(const MarkedRat& mr, FieldElem a, FieldElem b);

struct EnumOptions {
    std::uint64_t cap = 10'000'000;  // enumeration budget in tuples
    unsigned workers = 0;            // 0 = hardware concurrency
};

/// Thrown when an exact enumeration would exceed the configured budget.
/// Carries the number of tuples the enumeration would have required.
class budget_error : public std::runtime_error {
  public:
    budget_error(const std::string& what, BigInt required);
    const BigInt& required() const { return required_; }

  private:
    BigInt required_;
};

/// Exact |Poly_n^{d,m}(F_q)| by full enumeration of all q^{dm} coefficient
/// vectors (lexicographic, lowest coefficient fastest) and the membership
/// predicate. Throws budget_error when q^{dm} exceeds the cap.
std::uint64_t count_poly_bruteforce(int d, int n, int m, const Field& field,
                                    const EnumOptions& opts = {});

/// Exact |R_{n,k}^{d,m}(F_q)|: tuples with stratum_index >= k.
std::uint64_t count_stratum_bruteforce(const StratumParams& p, const Field& field,
                                       const EnumOptions& opts = {});

/// Exact |PConf_r(A^1 - excluded)(F_q)| by enumeration of ordered r-tuples.
std::uint64_t count_pconf_bruteforce(int r, const std::vector<std::uint32_t>& excluded,
                                     const Field& field, const EnumOptions& opts = {});

/// One full sweep over all q^{dm} tuples recording, for every multiplicity
/// bound n in [1, d], the histogram of stratum indices:
/// counts[n-1][k] = #{t : stratum_index(t, n) = k}. This batches the
/// brute-force verification grids: membership counts for every n fall out of
/// a single enumeration instead of one pass per n. The per-tuple test is the
/// same squarefree/gcd machinery as stratum_index, never a formula.
struct StratumCensus {
    int d = 0;
    int m = 0;
    std::uint64_t total = 0;
    std::vector<std::vector<std::uint64_t>> counts;  // [n-1][k], k <= floor(d/n)

    std::uint64_t poly_count(int n) const;     // stratum index exactly 0
    std::uint64_t stratum_count(int n, int k) const;  // stratum index >= k
};

StratumCensus stratum_census(int d, int m, const Field& field, const EnumOptions& opts = {});

/// Visits every monic degree-d polynomial, respectively every m-tuple of
/// them, in the canonical enumeration order (lowest coefficient fastest).
/// The tuple variant throws budget_error when q^{dm} exceeds the cap.
void for_each_monic(int d, const Field& field, const std::function<void(const Poly&)>& fn);
void for_each_tuple(int d, int m, const Field& field, std::uint64_t cap,
                    const std::function<void(const PolyTuple&)>& fn);

}  // namespace ratmaps

#endif
