#include "ratmaps/polyring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ratmaps {

Poly::Poly(const Field& f, std::vector<std::uint32_t> coeffs)
    : field_(&f), c_(std::move(coeffs)) {
    for (std::uint32_t c : c_)
        if (c >= f.q()) throw std::invalid_argument("Poly: coefficient out of range");
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Field& Poly::field() const {
    if (field_ == nullptr) throw std::logic_error("Poly: no field attached");
    return *field_;
}

Poly Poly::monomial(const Field& f, std::uint32_t coeff, int degree) {
    if (degree < 0) throw std::invalid_argument("Poly::monomial: negative degree");
    std::vector<std::uint32_t> c(static_cast<std::size_t>(degree) + 1, 0);
    c.back() = coeff;
    return Poly(f, std::move(c));
}

Poly Poly::linear_root(const Field& f, std::uint32_t c) {
    return Poly(f, {f.neg_rep(c), 1});
}

std::uint32_t Poly::leading() const {
    if (c_.empty()) throw std::domain_error("Poly::leading: zero polynomial");
    return c_.back();
}

std::uint32_t Poly::eval(std::uint32_t x) const {
    const Field& f = field();
    std::uint32_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = f.add_rep(f.mul_rep(acc, x), c_[i]);
    return acc;
}

Poly Poly::derivative() const {
    const Field& f = field();
    if (c_.size() <= 1) return Poly(f);
    std::vector<std::uint32_t> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        // i * c_i; the scalar i mod p is its own packed representation since
        // the prime subfield sits at indices 0..p-1.
        d[i - 1] = f.mul_rep(c_[i], static_cast<std::uint32_t>(i % f.p()));
    }
    Poly r(f);
    r.c_ = std::move(d);
    r.trim();
    return r;
}

namespace {
const Field& common_field(const Poly& f, const Poly& g) {
    const Field& a = f.field();
    const Field& b = g.field();
    if (&a != &b && a.spec() != b.spec())
        throw std::invalid_argument("polynomial arithmetic across different fields");
    return a;
}
}  // namespace

Poly operator+(const Poly& f, const Poly& g) {
    const Field& k = common_field(f, g);
    Poly r(k);
    r.c_.resize(std::max(f.c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = k.add_rep(i < f.c_.size() ? f.c_[i] : 0, i < g.c_.size() ? g.c_[i] : 0);
    r.trim();
    return r;
}

Poly operator-(const Poly& f, const Poly& g) {
    const Field& k = common_field(f, g);
    Poly r(k);
    r.c_.resize(std::max(f.c_.size(), g.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = k.sub_rep(i < f.c_.size() ? f.c_[i] : 0, i < g.c_.size() ? g.c_[i] : 0);
    r.trim();
    return r;
}

Poly operator*(const Poly& f, const Poly& g) {
    const Field& k = common_field(f, g);
    Poly r(k);
    if (f.is_zero() || g.is_zero()) return r;
    r.c_.assign(f.c_.size() + g.c_.size() - 1, 0);
    for (std::size_t i = 0; i < f.c_.size(); ++i) {
        if (f.c_[i] == 0) continue;
        for (std::size_t j = 0; j < g.c_.size(); ++j)
            r.c_[i + j] = k.add_rep(r.c_[i + j], k.mul_rep(f.c_[i], g.c_[j]));
    }
    r.trim();
    return r;
}

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
    const Field& k = common_field(f, g);
    if (g.is_zero()) throw std::domain_error("divrem: division by the zero polynomial");
    if (f.degree() < g.degree()) return {Poly(k), f};
    std::vector<std::uint32_t> rem = f.coeffs();
    const int dg = g.degree();
    std::vector<std::uint32_t> quo(static_cast<std::size_t>(f.degree() - dg) + 1, 0);
    const std::uint32_t lead_inv = k.inv_rep(g.leading());
    for (int i = f.degree(); i >= dg; --i) {
        const std::uint32_t c = k.mul_rep(rem[static_cast<std::size_t>(i)], lead_inv);
        if (c != 0) {
            quo[static_cast<std::size_t>(i - dg)] = c;
            for (int j = 0; j <= dg; ++j) {
                auto idx = static_cast<std::size_t>(i - dg + j);
                rem[idx] = k.sub_rep(rem[idx], k.mul_rep(c, g.coeff(j)));
            }
        }
    }
    rem.resize(static_cast<std::size_t>(dg > 0 ? dg : 0));
    return {Poly(k, std::move(quo)), Poly(k, std::move(rem))};
}

Poly divexact(const Poly& f, const Poly& g) {
    auto [q, r] = divrem(f, g);
    if (!r.is_zero()) throw std::invalid_argument("divexact: division is not exact");
    return q;
}

bool divides(const Poly& g, const Poly& f) { return divrem(f, g).second.is_zero(); }

Poly pow(const Poly& f, unsigned k) {
    Poly result = Poly::one(f.field());
    Poly base = f;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

Poly monic(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("monic: zero polynomial");
    if (f.is_monic()) return f;
    const Field& k = f.field();
    const std::uint32_t s = k.inv_rep(f.leading());
    std::vector<std::uint32_t> c = f.coeffs();
    for (auto& x : c) x = k.mul_rep(x, s);
    return Poly(k, std::move(c));
}

Poly gcd_monic(const Poly& f, const Poly& g) {
    common_field(f, g);
    if (f.is_zero() && g.is_zero())
        throw std::invalid_argument("gcd_monic: both inputs are zero");
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

namespace {

// g with g(z)^p = f(z); requires every nonzero coefficient of f to sit at an
// exponent divisible by p. Coefficient-wise p-th roots make this exact
// because F_q is perfect.
Poly pth_root_poly(const Poly& f) {
    const Field& k = f.field();
    const std::uint32_t p = k.p();
    std::vector<std::uint32_t> out(static_cast<std::size_t>(f.degree() / static_cast<int>(p)) + 1, 0);
    for (int i = 0; i <= f.degree(); ++i) {
        const std::uint32_t c = f.coeff(i);
        if (c == 0) continue;
        if (i % static_cast<int>(p) != 0)
            throw std::logic_error("pth_root_poly: input is not a p-th power");
        out[static_cast<std::size_t>(i) / p] = k.pth_root_rep(c);
    }
    return Poly(k, std::move(out));
}

void decompose_into(const Poly& f, unsigned mult, std::vector<std::pair<Poly, unsigned>>& out) {
    const Field& k = f.field();
    const std::uint32_t p = k.p();
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        // f = g(z)^p; every multiplicity picks up a factor of p.
        decompose_into(pth_root_poly(f), mult * p, out);
        return;
    }
    // Yun: c = prod_{p∤j} s_j^{j-1} * prod_{p|j} s_j^j, w = prod_{p∤j} s_j.
    Poly c = gcd_monic(f, fp);
    Poly w = divexact(monic(f), c);
    unsigned j = 1;
    while (w.degree() > 0) {
        Poly y = gcd_monic(w, c);
        Poly z = divexact(w, y);
        if (z.degree() > 0) out.emplace_back(z, j * mult);
        w = std::move(y);
        c = divexact(c, w);
        ++j;
    }
    // Residual c = prod_{p|j} s_j^j, a perfect p-th power.
    if (c.degree() > 0) decompose_into(pth_root_poly(c), mult * p, out);
}

}  // namespace

SquarefreeDecomp squarefree_decomposition(const Poly& f) {
    if (!f.is_monic()) throw std::invalid_argument("squarefree_decomposition: input must be monic");
    if (f.degree() < 1)
        throw std::invalid_argument("squarefree_decomposition: input must be nonconstant");
    SquarefreeDecomp d;
    decompose_into(f, 1, d.parts);
    // Merge parts sharing a multiplicity (the p-power recursion can emit the
    // same j twice); coprimality makes the product still squarefree.
    std::sort(d.parts.begin(), d.parts.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<Poly, unsigned>> merged;
    for (auto& part : d.parts) {
        if (!merged.empty() && merged.back().second == part.second)
            merged.back().first = merged.back().first * part.first;
        else
            merged.push_back(std::move(part));
    }
    d.parts = std::move(merged);
    return d;
}

Poly multiplicity_filter(const Poly& f, int t) {
    if (t < 1) throw std::invalid_argument("multiplicity_filter: t must be >= 1");
    if (!f.is_monic()) throw std::invalid_argument("multiplicity_filter: input must be monic");
    const Field& k = f.field();
    if (f.degree() < 1) return Poly::one(k);
    Poly result = Poly::one(k);
    for (const auto& [s, j] : squarefree_decomposition(f).parts)
        if (static_cast<int>(j) >= t) result = result * s;
    return result;
}

Poly compose_affine(const Poly& f, std::uint32_t a, std::uint32_t b) {
    const Field& k = f.field();
    Poly arg(k, {a, b});
    Poly acc(k);
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * arg + Poly(k, {f.coeff(i)});
    }
    return acc;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const std::uint32_t c = coeff(i);
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i > 0) {
            if (c != 1) os << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace ratmaps
