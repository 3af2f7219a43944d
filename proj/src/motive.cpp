#include "ratmaps/motive.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ratmaps {

MotiveClass::MotiveClass(long v) {
    if (v != 0) c_[0] = v;
}

MotiveClass::MotiveClass(const BigInt& v) {
    if (v != 0) c_[0] = v;
}

MotiveClass MotiveClass::term(const BigInt& c, unsigned k) {
    MotiveClass r;
    if (c != 0) r.c_[k] = c;
    return r;
}

BigInt MotiveClass::coeff(unsigned k) const {
    auto it = c_.find(k);
    return it == c_.end() ? BigInt(0) : it->second;
}

void MotiveClass::set(unsigned k, BigInt v) {
    if (v == 0)
        c_.erase(k);
    else
        c_[k] = std::move(v);
}

MotiveClass& MotiveClass::operator+=(const MotiveClass& o) {
    for (const auto& [k, v] : o.c_) set(k, coeff(k) + v);
    return *this;
}

MotiveClass& MotiveClass::operator-=(const MotiveClass& o) {
    for (const auto& [k, v] : o.c_) set(k, coeff(k) - v);
    return *this;
}

MotiveClass MotiveClass::operator+(const MotiveClass& o) const {
    MotiveClass r = *this;
    r += o;
    return r;
}

MotiveClass MotiveClass::operator-(const MotiveClass& o) const {
    MotiveClass r = *this;
    r -= o;
    return r;
}

MotiveClass MotiveClass::operator*(const MotiveClass& o) const {
    MotiveClass r;
    for (const auto& [i, a] : c_)
        for (const auto& [j, b] : o.c_) r.set(i + j, r.coeff(i + j) + a * b);
    return r;
}

MotiveClass MotiveClass::operator-() const {
    MotiveClass r;
    for (const auto& [k, v] : c_) r.c_[k] = -v;
    return r;
}

BigInt MotiveClass::specialize(const BigInt& q) const {
    // Horner over the sparse exponent list, highest first.
    BigInt acc = 0;
    int prev = -1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (prev >= 0)
            for (int i = 0; i < prev - static_cast<int>(it->first); ++i) acc *= q;
        acc += it->second;
        prev = static_cast<int>(it->first);
    }
    if (prev > 0)
        for (int i = 0; i < prev; ++i) acc *= q;
    return acc;
}

std::string MotiveClass::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        BigInt v = it->second;
        if (first) {
            if (v < 0) {
                os << "-";
                v = -v;
            }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        first = false;
        const unsigned k = it->first;
        if (k == 0 || v != 1) os << v;
        if (k > 0) {
            if (v != 1) os << "*";
            os << "L";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

MotiveClass projective_space(int n) {
    if (n < 0) throw std::invalid_argument("projective_space: n must be >= 0");
    MotiveClass r;
    for (int i = 0; i <= n; ++i) r += MotiveClass::lefschetz(static_cast<unsigned>(i));
    return r;
}

namespace {
void check_poly_params(int n, int d, int m) {
    if (n < 1) throw std::invalid_argument("class_poly: n must be >= 1");
    if (m < 1) throw std::invalid_argument("class_poly: m must be >= 1");
    if (d < 0) throw std::invalid_argument("class_poly: d must be >= 0");
}
}  // namespace

MotiveClass class_poly(int n, int d, int m) {
    check_poly_params(n, d, m);
    const unsigned dm = static_cast<unsigned>(d) * static_cast<unsigned>(m);
    if (n > d) return MotiveClass::lefschetz(dm);
    if (n == d) return MotiveClass::lefschetz(dm) - MotiveClass::lefschetz(1);
    const unsigned low = static_cast<unsigned>(d - n) * static_cast<unsigned>(m) + 1;
    return MotiveClass::lefschetz(dm) - MotiveClass::lefschetz(low);
}

MotiveClass class_poly_recursive(int n, int d, int m) {
    check_poly_params(n, d, m);
    // Memoized on the degree; only d varies through the recursion. Without
    // this the call tree is exponential in d/n.
    std::vector<std::optional<MotiveClass>> memo(static_cast<std::size_t>(d) + 1);
    auto rec = [&](auto&& self, int dd) -> const MotiveClass& {
        auto& slot = memo[static_cast<std::size_t>(dd)];
        if (slot) return *slot;
        const unsigned ddm = static_cast<unsigned>(dd) * static_cast<unsigned>(m);
        if (n > dd)
            slot = MotiveClass::lefschetz(ddm);
        else if (n == dd)
            slot = MotiveClass::lefschetz(ddm) - MotiveClass::lefschetz(1);
        else {
            MotiveClass acc = MotiveClass::lefschetz(ddm);
            for (int k = 1; dd - k * n >= 0; ++k)
                acc -= self(self, dd - k * n) * MotiveClass::lefschetz(static_cast<unsigned>(k));
            slot = std::move(acc);
        }
        return *slot;
    };
    return rec(rec, d);
}

MotiveClass class_rat(int d, int n) {
    if (d < 1 || n < 1) throw std::invalid_argument("class_rat: d, n must be >= 1");
    return class_poly(1, d, n + 1);
}

MotiveClass class_pconf(const MotiveClass& x, int r) {
    if (r < 0) throw std::invalid_argument("class_pconf: r must be >= 0");
    MotiveClass acc(1);
    for (int i = 0; i < r; ++i) acc = acc * (x - MotiveClass(i));
    return acc;
}

MotiveClass class_m0m_star(int m, int n, int d) {
    if (m < 3) throw std::invalid_argument("class_m0m_star: m must be >= 3");
    if (d < 1 || n < 1) throw std::invalid_argument("class_m0m_star: d, n must be >= 1");
    return class_pconf(MotiveClass::lefschetz(1) - MotiveClass(2), m - 3) * class_rat(d, n);
}

MotiveClass class_m0m(int m, int n, int d) {
    if (m < 3) throw std::invalid_argument("class_m0m: m must be >= 3");
    if (d < 1 || n < 1) throw std::invalid_argument("class_m0m: d, n must be >= 1");
    return class_m0m_star(m, n, d) * projective_space(n);
}

MotiveClass class_r_stratum(int n, int d, int m, int k) {
    check_poly_params(n, d, m);
    if (k < 0) throw std::invalid_argument("class_r_stratum: k must be >= 0");
    MotiveClass acc;
    for (int j = k; j * n <= d; ++j)
        acc += class_poly(n, d - j * n, m) * MotiveClass::lefschetz(static_cast<unsigned>(j));
    return acc;
}

BigInt specialize(const MotiveClass& c, const BigInt& q) { return c.specialize(q); }

}  // namespace ratmaps
