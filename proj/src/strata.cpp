#include "ratmaps/strata.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <thread>
#include <unordered_map>

namespace ratmaps {

PolyTuple::PolyTuple(std::vector<Poly> entries) : polys(std::move(entries)) {
    if (polys.empty()) throw std::invalid_argument("PolyTuple: m must be >= 1");
    d = polys[0].degree();
    m = static_cast<int>(polys.size());
    if (d < 0) throw std::invalid_argument("PolyTuple: entries must be nonzero");
    const Field& f = polys[0].field();
    for (const Poly& p : polys) {
        if (&p.field() != &f && p.field().spec() != f.spec())
            throw std::invalid_argument("PolyTuple: entries over different fields");
        if (p.degree() != d)
            throw std::invalid_argument("PolyTuple: entries must share one degree");
        if (!p.is_monic()) throw std::invalid_argument("PolyTuple: entries must be monic");
    }
}

TupleStructure::TupleStructure(const PolyTuple& t) : TupleStructure(t.polys) {}

TupleStructure::TupleStructure(const std::vector<Poly>& polys) {
    if (polys.empty()) throw std::invalid_argument("TupleStructure: empty tuple");
    field = &polys[0].field();
    for (const Poly& p : polys) {
        if (!p.is_monic()) throw std::invalid_argument("TupleStructure: entries must be monic");
        d = std::max(d, p.degree());
    }
    if (d == 0) return;
    decomps.reserve(polys.size());
    for (const Poly& p : polys)
        if (p.degree() >= 1)
            decomps.push_back(squarefree_decomposition(p));
        else
            decomps.push_back({});  // constant 1: every filter is trivial
}

Poly TupleStructure::common_power_factor(int n) const {
    if (n < 1) throw std::invalid_argument("common_power_factor: n must be >= 1");
    const Field& f = *field;
    if (d == 0) return Poly::one(f);
    auto filter_at = [&](const SquarefreeDecomp& dec, int threshold) {
        Poly acc = Poly::one(f);
        for (const auto& [s, j] : dec.parts)
            if (static_cast<int>(j) >= threshold) acc = acc * s;
        return acc;
    };
    Poly h = Poly::one(f);
    for (int threshold = n; threshold <= d; threshold += n) {
        // S_t = gcd_i multiplicity_filter(f_i, t); the S_t shrink as t grows,
        // so stop at the first trivial one.
        Poly s = filter_at(decomps[0], threshold);
        for (std::size_t i = 1; i < decomps.size() && s.degree() > 0; ++i)
            s = gcd_monic(s, filter_at(decomps[i], threshold));
        if (s.degree() == 0) break;
        h = h * s;
    }
    return h;
}

Poly common_power_factor(const PolyTuple& t, int n) {
    return TupleStructure(t).common_power_factor(n);
}

Poly common_power_factor(const std::vector<Poly>& polys, int n) {
    return TupleStructure(polys).common_power_factor(n);
}

bool is_poly_point(const PolyTuple& t, int n) { return stratum_index(t, n) == 0; }

int stratum_index(const PolyTuple& t, int n) { return common_power_factor(t, n).degree(); }

std::pair<PolyTuple, Poly> extract(const PolyTuple& t, int n) {
    Poly h = common_power_factor(t, n);
    if (h.degree() == 0) return {t, h};
    Poly hn = pow(h, static_cast<unsigned>(n));
    std::vector<Poly> g;
    g.reserve(t.polys.size());
    for (const Poly& p : t.polys) g.push_back(divexact(p, hn));
    return {PolyTuple(std::move(g)), h};
}

PolyTuple compose(const PolyTuple& g, const Poly& h, int n) {
    if (n < 1) throw std::invalid_argument("compose: n must be >= 1");
    if (!h.is_monic()) throw std::invalid_argument("compose: h must be monic");
    if (!is_poly_point(g, n))
        throw std::invalid_argument("compose: g must be a Poly_n point (bijectivity)");
    Poly hn = pow(h, static_cast<unsigned>(n));
    std::vector<Poly> out;
    out.reserve(g.polys.size());
    for (const Poly& p : g.polys) out.push_back(p * hn);
    return PolyTuple(std::move(out));
}

MarkedRat::MarkedRat(std::vector<FieldElem> marks_, PolyTuple rat_)
    : marks(std::move(marks_)), rat(std::move(rat_)) {
    const Field& f = rat.field();
    for (const FieldElem& z : marks)
        if (z.field == nullptr || z.field->spec() != f.spec())
            throw std::invalid_argument("MarkedRat: marks must live in the tuple's field");
    for (std::size_t i = 0; i < marks.size(); ++i)
        for (std::size_t j = i + 1; j < marks.size(); ++j)
            if (marks[i].rep == marks[j].rep)
                throw std::invalid_argument("MarkedRat: marks must be pairwise distinct");
    if (!is_poly_point(rat, 1))
        throw std::invalid_argument("MarkedRat: tuple has a common root");
}

PsiNormalForm psi_normalize(const MarkedRat& mr) {
    if (mr.marks.size() < 2)
        throw std::invalid_argument("psi_normalize: needs m >= 3 (at least two marks)");
    const Field& f = mr.rat.field();
    const std::uint32_t z1 = mr.marks[0].rep;
    const std::uint32_t s = f.sub_rep(mr.marks[1].rep, z1);
    const std::uint32_t sinv = f.inv_rep(s);
    PsiNormalForm out;
    out.conf.reserve(mr.marks.size() - 2);
    for (std::size_t i = 2; i < mr.marks.size(); ++i)
        out.conf.push_back({f.mul_rep(f.sub_rep(mr.marks[i].rep, z1), sinv), &f});
    // phi o beta^{-1}: substitute beta^{-1}(w) = z1 + s w, then rescale the
    // leading coefficient s^d away.
    std::vector<Poly> entries;
    entries.reserve(mr.rat.polys.size());
    for (const Poly& p : mr.rat.polys) entries.push_back(monic(compose_affine(p, z1, s)));
    out.rat = PolyTuple(std::move(entries));
    return out;
}

MarkedRat apply_affine(const MarkedRat& mr, FieldElem a, FieldElem b) {
    const Field& f = mr.rat.field();
    if (a.field == nullptr || a.field->spec() != f.spec() || b.field == nullptr ||
        b.field->spec() != f.spec())
        throw std::invalid_argument("apply_affine: coefficients from the wrong field");
    if (a.rep == 0) throw std::invalid_argument("apply_affine: a must be invertible");
    std::vector<FieldElem> marks;
    marks.reserve(mr.marks.size());
    for (const FieldElem& z : mr.marks)
        marks.push_back({f.add_rep(f.mul_rep(a.rep, z.rep), b.rep), &f});
    // phi o alpha^{-1} with alpha^{-1}(z) = a^{-1} z - a^{-1} b.
    const std::uint32_t ainv = f.inv_rep(a.rep);
    const std::uint32_t c0 = f.neg_rep(f.mul_rep(ainv, b.rep));
    std::vector<Poly> entries;
    entries.reserve(mr.rat.polys.size());
    for (const Poly& p : mr.rat.polys) entries.push_back(monic(compose_affine(p, c0, ainv)));
    return MarkedRat(std::move(marks), PolyTuple(std::move(entries)));
}

budget_error::budget_error(const std::string& what, BigInt required)
    : std::runtime_error(what), required_(std::move(required)) {}

namespace {

BigInt bigpow(std::uint64_t base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Checks the enumeration budget and returns the tuple count as a machine
// integer (safe: it is bounded by the cap).
std::uint64_t checked_size(std::uint64_t base, int exp, std::uint64_t cap,
                           const char* where) {
    BigInt required = bigpow(base, exp);
    if (required > cap)
        throw budget_error(std::string(where) + ": enumeration of " + required.str() +
                               " tuples exceeds the budget of " + std::to_string(cap),
                           required);
    return required.convert_to<std::uint64_t>();
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Sums fn(lo, hi) over a partition of [0, n) across the workers. Plain
// integer addition keeps the result independent of the partitioning.
template <typename Fn>
std::uint64_t parallel_sum(std::uint64_t n, unsigned workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || n < 4096) return fn(0, n);
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t chunk = n / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = (w + 1 == workers) ? n : lo + chunk;
        threads.emplace_back([&, w, lo, hi] { partial[w] = fn(lo, hi); });
    }
    for (auto& t : threads) t.join();
    std::uint64_t total = 0;
    for (std::uint64_t v : partial) total += v;
    return total;
}

// Odometer over the dm non-leading coefficients of an m-tuple of monic
// degree-d polynomials, lowest coefficient fastest.
class TupleCursor {
  public:
    TupleCursor(const Field& f, int d, int m, std::uint64_t start)
        : f_(&f), d_(d), m_(m), digits_(static_cast<std::size_t>(d) * m, 0) {
        const std::uint64_t q = f.q();
        for (auto& dig : digits_) {
            dig = static_cast<std::uint32_t>(start % q);
            start /= q;
        }
    }

    PolyTuple current() const {
        std::vector<Poly> polys;
        polys.reserve(static_cast<std::size_t>(m_));
        for (int j = 0; j < m_; ++j) {
            std::vector<std::uint32_t> c(static_cast<std::size_t>(d_) + 1);
            for (int i = 0; i < d_; ++i)
                c[static_cast<std::size_t>(i)] = digits_[static_cast<std::size_t>(j * d_ + i)];
            c[static_cast<std::size_t>(d_)] = 1;
            polys.emplace_back(*f_, std::move(c));
        }
        return PolyTuple(std::move(polys));
    }

    void advance() {
        const std::uint32_t top = static_cast<std::uint32_t>(f_->q()) - 1;
        for (auto& dig : digits_) {
            if (dig == top) {
                dig = 0;
            } else {
                ++dig;
                return;
            }
        }
    }

  private:
    const Field* f_;
    int d_, m_;
    std::vector<std::uint32_t> digits_;
};

}  // namespace

void for_each_monic(int d, const Field& field, const std::function<void(const Poly&)>& fn) {
    if (d < 0) throw std::invalid_argument("for_each_monic: d must be >= 0");
    TupleCursor cur(field, d, 1, 0);
    BigInt total = bigpow(field.q(), d);
    for (BigInt i = 0; i < total; ++i) {
        fn(cur.current().polys[0]);
        cur.advance();
    }
}

void for_each_tuple(int d, int m, const Field& field, std::uint64_t cap,
                    const std::function<void(const PolyTuple&)>& fn) {
    if (d < 0 || m < 1) throw std::invalid_argument("for_each_tuple: need d >= 0, m >= 1");
    const std::uint64_t n = checked_size(field.q(), d * m, cap, "for_each_tuple");
    TupleCursor cur(field, d, m, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        fn(cur.current());
        cur.advance();
    }
}

std::uint64_t count_poly_bruteforce(int d, int n, int m, const Field& field,
                                    const EnumOptions& opts) {
    if (d < 0 || n < 1 || m < 1)
        throw std::invalid_argument("count_poly_bruteforce: need d >= 0, n >= 1, m >= 1");
    const std::uint64_t total = checked_size(field.q(), d * m, opts.cap, "count_poly_bruteforce");
    return parallel_sum(total, opts.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        TupleCursor cur(field, d, m, lo);
        std::uint64_t count = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            if (is_poly_point(cur.current(), n)) ++count;
            cur.advance();
        }
        return count;
    });
}

std::uint64_t count_stratum_bruteforce(const StratumParams& p, const Field& field,
                                       const EnumOptions& opts) {
    if (p.d < 0 || p.n < 1 || p.m < 1 || p.k < 0)
        throw std::invalid_argument("count_stratum_bruteforce: invalid parameters");
    const std::uint64_t total =
        checked_size(field.q(), p.d * p.m, opts.cap, "count_stratum_bruteforce");
    return parallel_sum(total, opts.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        TupleCursor cur(field, p.d, p.m, lo);
        std::uint64_t count = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            if (stratum_index(cur.current(), p.n) >= p.k) ++count;
            cur.advance();
        }
        return count;
    });
}

std::uint64_t count_pconf_bruteforce(int r, const std::vector<std::uint32_t>& excluded,
                                     const Field& field, const EnumOptions& opts) {
    if (r < 0) throw std::invalid_argument("count_pconf_bruteforce: r must be >= 0");
    std::vector<std::uint32_t> ex = excluded;
    std::sort(ex.begin(), ex.end());
    ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
    for (std::uint32_t v : ex)
        if (v >= field.q())
            throw std::invalid_argument("count_pconf_bruteforce: excluded point not in F_q");
    std::vector<std::uint32_t> allowed;
    for (std::uint32_t v = 0; v < field.q(); ++v)
        if (!std::binary_search(ex.begin(), ex.end(), v)) allowed.push_back(v);
    const std::uint64_t total =
        checked_size(allowed.size(), r, opts.cap, "count_pconf_bruteforce");
    if (r == 0) return 1;
    const std::uint64_t base = allowed.size();
    return parallel_sum(total, opts.workers, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint32_t> idx(static_cast<std::size_t>(r));
        std::uint64_t count = 0;
        for (std::uint64_t code = lo; code < hi; ++code) {
            std::uint64_t v = code;
            for (int i = 0; i < r; ++i) {
                idx[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v % base);
                v /= base;
            }
            bool distinct = true;
            for (int i = 0; i < r && distinct; ++i)
                for (int j = i + 1; j < r; ++j)
                    if (idx[static_cast<std::size_t>(i)] == idx[static_cast<std::size_t>(j)]) {
                        distinct = false;
                        break;
                    }
            if (distinct) ++count;
        }
        return count;
    });
}

std::uint64_t StratumCensus::poly_count(int n) const {
    if (n < 1) throw std::invalid_argument("StratumCensus::poly_count: n must be >= 1");
    if (n > d) return total;  // no common root of multiplicity > d is possible
    return counts[static_cast<std::size_t>(n - 1)][0];
}

std::uint64_t StratumCensus::stratum_count(int n, int k) const {
    if (n < 1) throw std::invalid_argument("StratumCensus::stratum_count: n must be >= 1");
    if (k <= 0) return total;
    if (n > d) return 0;
    const auto& row = counts[static_cast<std::size_t>(n - 1)];
    std::uint64_t acc = 0;
    for (std::size_t i = static_cast<std::size_t>(k); i < row.size(); ++i) acc += row[i];
    return acc;
}

// ---------------------------------------------------------------------------
// Census engine. One sweep over all q^{dm} tuples computing the stratum
// index for every multiplicity bound at once. Two allocation-free squarefree
// kernels (a generic fixed-capacity one and a bit-packed GF(2) one) handle
// the m = 1 sweep; for m >= 2 the per-polynomial structure is precomputed
// into tables and the per-tuple work reduces to root-mask intersections and
// memoized gcds of interned nonlinear radical parts.
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxDeg = 63;

struct KPoly {
    std::array<std::uint32_t, kMaxDeg + 1> c;
    int deg = -1;
};

void ktrim(KPoly& a) {
    while (a.deg >= 0 && a.c[static_cast<std::size_t>(a.deg)] == 0) --a.deg;
}

// a := a mod b; b nonzero.
void krem(const Field& f, KPoly& a, const KPoly& b) {
    const int db = b.deg;
    const std::uint32_t linv = f.inv_rep(b.c[static_cast<std::size_t>(db)]);
    while (a.deg >= db) {
        const std::uint32_t lead = a.c[static_cast<std::size_t>(a.deg)];
        const std::uint32_t q = f.mul_rep(lead, linv);
        const int shift = a.deg - db;
        for (int j = 0; j < db; ++j) {
            auto idx = static_cast<std::size_t>(shift + j);
            a.c[idx] = f.sub_rep(a.c[idx], f.mul_rep(q, b.c[static_cast<std::size_t>(j)]));
        }
        a.c[static_cast<std::size_t>(a.deg)] = 0;
        --a.deg;
        ktrim(a);
    }
}

void kmonic(const Field& f, KPoly& a) {
    const std::uint32_t lead = a.c[static_cast<std::size_t>(a.deg)];
    if (lead == 1) return;
    const std::uint32_t s = f.inv_rep(lead);
    for (int i = 0; i <= a.deg; ++i)
        a.c[static_cast<std::size_t>(i)] = f.mul_rep(a.c[static_cast<std::size_t>(i)], s);
}

// Monic gcd; a, b not both zero.
KPoly kgcd(const Field& f, KPoly a, KPoly b) {
    while (b.deg >= 0) {
        krem(f, a, b);
        std::swap(a, b);
    }
    kmonic(f, a);
    return a;
}

// out := a / b, exact.
void kdivexact(const Field& f, const KPoly& a, const KPoly& b, KPoly& out) {
    KPoly rem = a;
    const int db = b.deg;
    out.deg = a.deg - db;
    for (int i = 0; i <= out.deg; ++i) out.c[static_cast<std::size_t>(i)] = 0;
    const std::uint32_t linv = f.inv_rep(b.c[static_cast<std::size_t>(db)]);
    while (rem.deg >= db) {
        const std::uint32_t q = f.mul_rep(rem.c[static_cast<std::size_t>(rem.deg)], linv);
        const int shift = rem.deg - db;
        out.c[static_cast<std::size_t>(shift)] = q;
        for (int j = 0; j < db; ++j) {
            auto idx = static_cast<std::size_t>(shift + j);
            rem.c[idx] = f.sub_rep(rem.c[idx], f.mul_rep(q, b.c[static_cast<std::size_t>(j)]));
        }
        rem.c[static_cast<std::size_t>(rem.deg)] = 0;
        --rem.deg;
        ktrim(rem);
    }
}

void kderiv(const Field& f, const KPoly& a, KPoly& out) {
    const std::uint32_t p = f.p();
    out.deg = a.deg - 1;
    for (int i = 1; i <= a.deg; ++i)
        out.c[static_cast<std::size_t>(i - 1)] =
            f.mul_rep(a.c[static_cast<std::size_t>(i)], static_cast<std::uint32_t>(i % p));
    ktrim(out);
}

// out(z)^p = a(z); a has coefficients only at exponents divisible by p.
void kpthroot(const Field& f, const KPoly& a, KPoly& out) {
    const int p = static_cast<int>(f.p());
    out.deg = a.deg / p;
    for (int i = 0; i <= out.deg; ++i)
        out.c[static_cast<std::size_t>(i)] = f.pth_root_rep(a.c[static_cast<std::size_t>(i * p)]);
}

// Multiplicity profile: prof[j] += deg of the squarefree part of multiplicity
// j*mult in f. Same Yun-with-p-th-roots recursion as the public
// squarefree_decomposition, tracking only degrees.
void kyun(const Field& f, const KPoly& poly, unsigned mult, int* prof) {
    KPoly deriv;
    kderiv(f, poly, deriv);
    if (deriv.deg < 0) {
        KPoly root;
        kpthroot(f, poly, root);
        kyun(f, root, mult * f.p(), prof);
        return;
    }
    KPoly c = kgcd(f, poly, deriv);
    if (c.deg == 0) {
        prof[mult] += poly.deg;  // squarefree
        return;
    }
    KPoly w;
    kdivexact(f, poly, c, w);
    unsigned j = 1;
    while (w.deg > 0) {
        if (c.deg == 0) {
            // Remaining separable factors all have multiplicity j; no
            // p-power residual is left either.
            prof[j * mult] += w.deg;
            break;
        }
        KPoly y = kgcd(f, w, c);
        const int zdeg = w.deg - y.deg;
        if (zdeg > 0) prof[j * mult] += zdeg;
        w = y;
        KPoly c2;
        kdivexact(f, c, w, c2);
        c = c2;
        ++j;
    }
    if (c.deg > 0) {
        KPoly root;
        kpthroot(f, c, root);
        kyun(f, root, mult * f.p(), prof);
    }
}

// --- GF(2) kernel: a polynomial of degree <= 63 is a bit mask. -------------

int g2deg(std::uint64_t x) { return 63 - std::countl_zero(x); }

std::uint64_t g2mod(std::uint64_t a, std::uint64_t b) {
    const int db = g2deg(b);
    while (a != 0) {
        const int da = g2deg(a);
        if (da < db) break;
        a ^= b << (da - db);
    }
    return a;
}

std::uint64_t g2gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a = g2mod(a, b);
        std::swap(a, b);
    }
    return a;
}

std::uint64_t g2div(std::uint64_t a, std::uint64_t b) {
    std::uint64_t q = 0;
    const int db = g2deg(b);
    while (a != 0) {
        const int da = g2deg(a);
        if (da < db) break;
        q |= 1ull << (da - db);
        a ^= b << (da - db);
    }
    return q;
}

std::uint64_t g2deriv(std::uint64_t f) { return (f >> 1) & 0x5555555555555555ull; }

// Square root of a polynomial supported on even exponents.
std::uint64_t g2sqrt(std::uint64_t f) {
    std::uint64_t r = 0;
    for (int i = 0; 2 * i <= 62; ++i)
        if ((f >> (2 * i)) & 1) r |= 1ull << i;
    return r;
}

void g2yun(std::uint64_t f, unsigned mult, int* prof) {
    const std::uint64_t deriv = g2deriv(f);
    if (deriv == 0) {
        g2yun(g2sqrt(f), 2 * mult, prof);
        return;
    }
    std::uint64_t c = g2gcd(f, deriv);
    if (c == 1) {
        prof[mult] += g2deg(f);
        return;
    }
    std::uint64_t w = g2div(f, c);
    unsigned j = 1;
    while (g2deg(w) > 0) {
        if (c == 1) {
            prof[j * mult] += g2deg(w);
            break;
        }
        const std::uint64_t y = g2gcd(w, c);
        const int zdeg = g2deg(w) - g2deg(y);
        if (zdeg > 0) prof[j * mult] += zdeg;
        w = y;
        c = g2div(c, w);
        ++j;
    }
    if (c > 1) g2yun(g2sqrt(c), 2 * mult, prof);
}

// Turns a multiplicity profile into census rows: the stratum index for bound
// n is sum_j floor(j/n) * prof[j] = sum_{r>=1} degS[rn] with degS the suffix
// sums of prof.
struct CensusRows {
    int d = 0;
    std::vector<std::vector<std::uint64_t>> rows;  // [n-1][k], k >= 1 recorded

    explicit CensusRows(int dd) : d(dd) {
        rows.resize(static_cast<std::size_t>(dd));
        for (int n = 1; n <= dd; ++n)
            rows[static_cast<std::size_t>(n - 1)].assign(static_cast<std::size_t>(dd / n) + 1, 0);
    }

    void record_from_degs(const int* degS, int tmax) {
        for (int n = 1; n <= tmax; ++n) {
            int k = 0;
            for (int t = n; t <= tmax; t += n) k += degS[t];
            if (k > 0) ++rows[static_cast<std::size_t>(n - 1)].at(static_cast<std::size_t>(k));
        }
    }
};

void record_profile(CensusRows& rows, const int* prof, int d) {
    int tmax = 0;
    for (int j = 1; j <= d; ++j)
        if (prof[j] > 0) tmax = j;
    if (tmax == 0) return;
    std::array<int, kMaxDeg + 2> degS{};
    int acc = 0;
    for (int t = tmax; t >= 1; --t) {
        acc += prof[t];
        degS[static_cast<std::size_t>(t)] = acc;
    }
    rows.record_from_degs(degS.data(), tmax);
}

// m = 1 sweep: one squarefree profile per monic polynomial.
void census_m1(const Field& field, int d, CensusRows& rows) {
    const std::uint64_t q = field.q();
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    std::array<int, kMaxDeg + 2> prof{};
    if (q == 2) {
        const std::uint64_t lead = 1ull << d;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            prof.fill(0);
            g2yun(lead | idx, 1, prof.data());
            record_profile(rows, prof.data(), d);
        }
        return;
    }
    KPoly f;
    f.deg = d;
    for (int i = 0; i <= d; ++i) f.c[static_cast<std::size_t>(i)] = 0;
    f.c[static_cast<std::size_t>(d)] = 1;
    const std::uint32_t top = static_cast<std::uint32_t>(q) - 1;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        prof.fill(0);
        kyun(field, f, 1, prof.data());
        record_profile(rows, prof.data(), d);
        for (int i = 0; i < d; ++i) {  // odometer on the non-leading coefficients
            if (f.c[static_cast<std::size_t>(i)] == top) {
                f.c[static_cast<std::size_t>(i)] = 0;
            } else {
                ++f.c[static_cast<std::size_t>(i)];
                break;
            }
        }
    }
}

// m >= 2 sweep: precomputed per-polynomial level data. Level t of f stores
// the locus of roots of multiplicity >= t split into a bitmask of F_q-roots
// and an interned "nonlinear" cofactor with no roots in F_q. The stratum
// computation for a tuple then intersects masks and folds the cofactors
// through a memoized gcd.
struct LevelData {
    std::uint64_t mask = 0;
    std::uint32_t nlid = 0;
};

struct PolyRec {
    std::uint32_t offset = 0;
    std::uint8_t maxmult = 0;
};

class NonlinearInterner {
  public:
    explicit NonlinearInterner(const Field& f) {
        polys_.push_back(Poly::one(f));
        degrees_.push_back(0);
    }

    std::uint32_t intern(const Poly& p) {
        if (p.degree() == 0) return 0;
        auto [it, inserted] = ids_.try_emplace(p.coeffs(), 0);
        if (inserted) {
            it->second = static_cast<std::uint32_t>(polys_.size());
            polys_.push_back(p);
            degrees_.push_back(p.degree());
        }
        return it->second;
    }

    // gcd of two interned polynomials, memoized on the id pair.
    std::uint32_t fold(std::uint32_t a, std::uint32_t b) {
        if (a == 0 || b == 0) return 0;
        if (a == b) return a;
        const std::uint64_t key =
            a < b ? (std::uint64_t(a) << 32) | b : (std::uint64_t(b) << 32) | a;
        auto [it, inserted] = cache_.try_emplace(key, 0);
        if (inserted) it->second = intern(gcd_monic(polys_[a], polys_[b]));
        return it->second;
    }

    int degree(std::uint32_t id) const { return degrees_[id]; }

  private:
    std::vector<Poly> polys_;
    std::vector<int> degrees_;
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids_;
    std::unordered_map<std::uint64_t, std::uint32_t> cache_;
};

void census_multi(const Field& field, int d, int m, std::uint64_t total, CensusRows& rows) {
    const std::uint64_t q = field.q();
    std::uint64_t polys_count = 1;
    for (int i = 0; i < d; ++i) polys_count *= q;

    NonlinearInterner interner(field);
    std::vector<PolyRec> recs(polys_count);
    std::vector<LevelData> levels;

    TupleCursor cur(field, d, 1, 0);
    for (std::uint64_t idx = 0; idx < polys_count; ++idx) {
        const Poly f = cur.current().polys[0];
        cur.advance();
        auto decomp = squarefree_decomposition(f);
        int maxmult = 0;
        for (const auto& [s, j] : decomp.parts) maxmult = std::max(maxmult, static_cast<int>(j));
        PolyRec rec;
        rec.offset = static_cast<std::uint32_t>(levels.size());
        rec.maxmult = static_cast<std::uint8_t>(maxmult);
        for (int t = 1; t <= maxmult; ++t) {
            LevelData lvl;
            Poly nl = Poly::one(field);
            for (const auto& [s, j] : decomp.parts) {
                if (static_cast<int>(j) < t) continue;
                Poly rest = s;
                for (std::uint32_t c = 0; c < q; ++c) {
                    if (rest.degree() > 0 && rest.eval(c) == 0) {
                        lvl.mask |= 1ull << c;
                        rest = divexact(rest, Poly::linear_root(field, c));
                    }
                }
                if (rest.degree() > 0) nl = nl * rest;
            }
            lvl.nlid = interner.intern(nl);
            levels.push_back(lvl);
        }
        recs[idx] = rec;
    }

    std::vector<std::uint64_t> index(static_cast<std::size_t>(m), 0);
    std::array<int, kMaxDeg + 2> degS{};
    for (std::uint64_t step = 0; step < total; ++step) {
        int lmax = d;
        for (int j = 0; j < m; ++j)
            lmax = std::min(lmax, static_cast<int>(recs[index[static_cast<std::size_t>(j)]].maxmult));
        int tmax = 0;
        for (int t = 1; t <= lmax; ++t) {
            const PolyRec& rec0 = recs[index[0]];
            const LevelData& lvl0 = levels[rec0.offset + static_cast<std::uint32_t>(t - 1)];
            std::uint64_t mask = lvl0.mask;
            std::uint32_t nl = lvl0.nlid;
            for (int j = 1; j < m && (mask != 0 || nl != 0); ++j) {
                const PolyRec& rec = recs[index[static_cast<std::size_t>(j)]];
                const LevelData& lvl = levels[rec.offset + static_cast<std::uint32_t>(t - 1)];
                mask &= lvl.mask;
                nl = interner.fold(nl, lvl.nlid);
            }
            const int deg = std::popcount(mask) + interner.degree(nl);
            if (deg == 0) break;
            degS[static_cast<std::size_t>(t)] = deg;
            tmax = t;
        }
        if (tmax > 0) rows.record_from_degs(degS.data(), tmax);
        for (int j = 0; j < m; ++j) {  // odometer over polynomial indices
            auto& ix = index[static_cast<std::size_t>(j)];
            if (++ix < polys_count) break;
            ix = 0;
        }
    }
}

}  // namespace

StratumCensus stratum_census(int d, int m, const Field& field, const EnumOptions& opts) {
    if (d < 0 || m < 1) throw std::invalid_argument("stratum_census: need d >= 0, m >= 1");
    if (field.q() > 64)
        throw std::invalid_argument("stratum_census: supported for q <= 64");
    if (d > kMaxDeg) throw std::invalid_argument("stratum_census: degree too large");
    const std::uint64_t total = checked_size(field.q(), d * m, opts.cap, "stratum_census");
    StratumCensus cen;
    cen.d = d;
    cen.m = m;
    cen.total = total;
    if (d == 0) return cen;
    CensusRows rows(d);
    if (m == 1)
        census_m1(field, d, rows);
    else
        census_multi(field, d, m, total, rows);
    // The sweep records only nonzero stratum indices; the open stratum is the
    // complement.
    cen.counts = std::move(rows.rows);
    for (auto& row : cen.counts) {
        std::uint64_t nonzero = 0;
        for (std::size_t k = 1; k < row.size(); ++k) nonzero += row[k];
        row[0] = total - nonzero;
    }
    return cen;
}

}  // namespace ratmaps
