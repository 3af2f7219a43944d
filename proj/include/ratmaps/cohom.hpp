#ifndef RATMAPS_COHOM_HPP
#define RATMAPS_COHOM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ratmaps/motive.hpp"

namespace ratmaps {

/// Betti ranks of a smooth variety: ordinary and compactly supported
/// cohomology, related by Poincare duality through the complex dimension.
/// Degenerate parameter corners where the closed formulas leave the honest
/// cohomological range are carried verbatim and flagged in `notes`.
struct BettiTable {
    std::map<int, std::int64_t> ordinary;
    std::map<int, std::int64_t> compact;
    int dim = 0;
    std::vector<std::string> notes;

    std::int64_t ordinary_rank(int i) const;
    std::int64_t compact_rank(int i) const;
    std::int64_t total_compact_rank() const;
};

/// Frobenius weight data of compactly supported etale cohomology: for each
/// degree, a multiset of Tate twists. Frobenius acts on the twist-j summand
/// by q^{-j}; twists are stored with the sign they carry in the statements,
/// so -j is a nonnegative exponent for every table produced here.
struct WeightTable {
    std::map<int, std::map<int, std::int64_t>> entries;  // degree -> twist -> mult
    int dim = 0;
    std::vector<std::string> notes;

    void add(int degree, int twist, std::int64_t mult);
    std::int64_t rank(int degree) const;  // total multiplicity in one degree
};

/// Betti table of Poly_n^{d,m}: ordinary rank 1 in degrees 0 and 2nm-3,
/// compact rank 1 in degrees 2(d-n)m+3 and 2dm, complex dimension dm.
/// For nm = 1 the degree 2nm-3 = -1 is impossible and is dropped from the
/// ordinary table (the compact table keeps both formula degrees so that it
/// stays the rank projection of weights_poly); the case is flagged.
/// Requires d >= n >= 1, m >= 1.
BettiTable betti_poly(int n, int d, int m);

/// Weight table of Poly_n^{d,m}: Q_l((n-d)m-1) in degree 2(d-n)m+3 and
/// Q_l(-dm) in degree 2dm. For n > d the space is affine dm-space and the
/// table is the single entry at degree 2dm.
WeightTable weights_poly(int n, int d, int m);

/// nu(a) = sum over order-preserving injections
/// sigma: {1..2(m-3)-a} -> {0..m-4} of prod_j (sigma(j)+2); equivalently the
/// elementary symmetric polynomial e_{2(m-3)-a}(2, ..., m-2). Zero when the
/// domain is larger than the codomain, one on the empty domain.
std::int64_t nu(int m, int a);

/// The same number evaluated by direct enumeration of the injections; an
/// independent route kept for cross-checking.
std::int64_t nu_by_injections(int m, int a);

/// Weight table of PConf_{m-3}(A^1 - {0,1}): compact degree a carries twist
/// (m-3)-a with multiplicity nu(m, a) for m-3 <= a <= 2(m-3). The ordinary
/// Poincare polynomial is prod_{j=2}^{m-2} (1 + j t).
WeightTable weights_pconf(int m);

BettiTable betti_pconf(int m);

/// Weight table of M*_{0,m}(P^n, d) by the Kunneth route: the graded
/// convolution of weights_pconf(m) with weights_poly(1, d, n+1) (degrees and
/// twists add, multiplicities multiply).
WeightTable weights_m0m_star(int m, int n, int d);

/// The same table assembled verbatim from the two closed-form summand
/// families (twists m-3+d(n+1)-i and m-1+d(n+1)-i on their stated ranges,
/// multiplicities through nu). Kept as a separate surface so the two routes
/// can be diffed; they are known to disagree in corners, see diff_tables.
WeightTable weights_m0m_star_literal(int m, int n, int d);

/// Rank projection of weights_m0m_star plus Poincare duality.
BettiTable betti_m0m_star(int m, int n, int d);

/// One disagreement between two weight tables at a (degree, twist) slot.
struct WeightDiff {
    int degree = 0;
    int twist = 0;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

/// All slots where the tables differ, sorted by degree then twist. Empty
/// means the tables are identical.
std::vector<WeightDiff> diff_tables(const WeightTable& lhs, const WeightTable& rhs);

/// The alternating sum sum_i (-1)^i sum_{(j,mult) at i} mult * L^{-j} as a
/// class in Z[L]. Throws std::domain_error on a positive twist, which cannot
/// be expressed as a polynomial in L.
MotiveClass trace_class(const WeightTable& w);

/// Grothendieck-Lefschetz consistency: trace_class(w) == c, an exact
/// polynomial identity (hence equality of point counts at every q).
bool verify_trace(const WeightTable& w, const MotiveClass& c);

/// ordinary[i] == compact[2 dim - i] over the cohomological range
/// 0 <= i <= 2 dim.
bool poincare_duality_holds(const BettiTable& b);

/// Per-degree total weight multiplicity equals the compact Betti rank.
bool ranks_match(const WeightTable& w, const BettiTable& b);

/// Every twist j satisfies 0 <= -j <= dim.
bool weights_in_range(const WeightTable& w);

}  // namespace ratmaps

#endif
