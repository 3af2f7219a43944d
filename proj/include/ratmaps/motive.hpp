#ifndef RATMAPS_MOTIVE_HPP
#define RATMAPS_MOTIVE_HPP

#include <map>
#include <string>

#include "ratmaps/bigint.hpp"

namespace ratmaps {

/// Integer polynomial in the affine-line class L. Every class this library
/// manipulates lands in Z[L], so a univariate polynomial is an honest
/// representation; specialization at an integer q is then the evaluation
/// homomorphism sending [X] to its F_q point count.
class MotiveClass {
  public:
    MotiveClass() = default;
    /// Constant class.
    MotiveClass(long v);
    explicit MotiveClass(const BigInt& v);

    /// c * L^k
    static MotiveClass term(const BigInt& c, unsigned k);
    static MotiveClass lefschetz(unsigned k = 1) { return term(1, k); }

    const std::map<unsigned, BigInt>& coeffs() const { return c_; }
    BigInt coeff(unsigned k) const;
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.rbegin()->first); }

    MotiveClass& operator+=(const MotiveClass& o);
    MotiveClass& operator-=(const MotiveClass& o);
    MotiveClass operator+(const MotiveClass& o) const;
    MotiveClass operator-(const MotiveClass& o) const;
    MotiveClass operator*(const MotiveClass& o) const;
    MotiveClass operator-() const;
    bool operator==(const MotiveClass& o) const { return c_ == o.c_; }

    /// Evaluation at an integer q >= 2; the point-count homomorphism.
    BigInt specialize(const BigInt& q) const;

    /// Display form like "L^6 - L^3".
    std::string str() const;

  private:
    void set(unsigned k, BigInt v);
    std::map<unsigned, BigInt> c_;  // exponent -> nonzero coefficient
};

/// [P^n] = 1 + L + ... + L^n.
MotiveClass projective_space(int n);

/// [Poly_n^{d,m}] in closed form: L^{dm} when n > d, L^{dm} - L when n = d,
/// L^{dm} - L^{(d-n)m+1} when d > n. Requires n, m >= 1 and d >= 0.
MotiveClass class_poly(int n, int d, int m);

/// [Poly_n^{d,m}] evaluated through the stratification recursion
/// L^{dm} - sum_{k>=1, d-kn>=0} [Poly_n^{d-kn,m}] L^k, with the affine base
/// cases supplying the small-degree terms. Agrees with class_poly.
MotiveClass class_poly_recursive(int n, int d, int m);

/// [Rat*_{d,n}] = [Poly_1^{d,n+1}] = L^{d(n+1)} - L^{(d-1)(n+1)+1}.
MotiveClass class_rat(int d, int n);

/// [PConf_r(X)] = prod_{i=0}^{r-1} ([X] - i) for any class x = [X].
MotiveClass class_pconf(const MotiveClass& x, int r);

/// [M*_{0,m}(P^n, d)] = prod_{i=2}^{m-2} (L - i) * [Rat*_{d,n}], m >= 3.
MotiveClass class_m0m_star(int m, int n, int d);

/// [M_{0,m}(P^n, d)] = [M*_{0,m}(P^n, d)] * [P^n], m >= 3.
MotiveClass class_m0m(int m, int n, int d);

/// [R_{n,k}^{d,m}] = sum_{j=k}^{floor(d/n)} [Poly_n^{d-jn,m}] L^j; the whole
/// affine space at k = 0 and zero past floor(d/n).
MotiveClass class_r_stratum(int n, int d, int m, int k);

BigInt specialize(const MotiveClass& c, const BigInt& q);

}  // namespace ratmaps

#endif
