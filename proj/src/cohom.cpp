#include "ratmaps/cohom.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ratmaps {

std::int64_t BettiTable::ordinary_rank(int i) const {
    auto it = ordinary.find(i);
    return it == ordinary.end() ? 0 : it->second;
}

std::int64_t BettiTable::compact_rank(int i) const {
    auto it = compact.find(i);
    return it == compact.end() ? 0 : it->second;
}

std::int64_t BettiTable::total_compact_rank() const {
    std::int64_t acc = 0;
    for (const auto& [i, r] : compact) acc += r;
    return acc;
}

void WeightTable::add(int degree, int twist, std::int64_t mult) {
    if (mult == 0) return;
    entries[degree][twist] += mult;
}

std::int64_t WeightTable::rank(int degree) const {
    auto it = entries.find(degree);
    if (it == entries.end()) return 0;
    std::int64_t acc = 0;
    for (const auto& [twist, mult] : it->second) acc += mult;
    return acc;
}

namespace {
void check_poly_range(int n, int d, int m, const char* where) {
    if (n < 1 || m < 1 || d < 1)
        throw std::invalid_argument(std::string(where) + ": need d, n, m >= 1");
}
}  // namespace

BettiTable betti_poly(int n, int d, int m) {
    check_poly_range(n, d, m, "betti_poly");
    if (d < n) throw std::invalid_argument("betti_poly: requires d >= n");
    BettiTable b;
    b.dim = d * m;
    b.ordinary[0] += 1;
    const int top = 2 * n * m - 3;
    if (top >= 0) {
        b.ordinary[top] += 1;
    } else {
        b.notes.push_back(
            "nm = 1: ordinary degree 2nm-3 = -1 dropped; its compact partner "
            "2(d-n)m+3 = 2dm+1 lies above 2*dim and is kept as stated");
    }
    b.compact[2 * (d - n) * m + 3] += 1;
    b.compact[2 * d * m] += 1;
    return b;
}

WeightTable weights_poly(int n, int d, int m) {
    check_poly_range(n, d, m, "weights_poly");
    WeightTable w;
    w.dim = d * m;
    if (n > d) {
        // Affine space of dimension dm.
        w.add(2 * d * m, -d * m, 1);
        return w;
    }
    w.add(2 * (d - n) * m + 3, (n - d) * m - 1, 1);
    w.add(2 * d * m, -d * m, 1);
    return w;
}

std::int64_t nu(int m, int a) {
    if (m < 3) throw std::invalid_argument("nu: requires m >= 3");
    const int b = 2 * (m - 3) - a;
    if (b < 0 || b > m - 3) return 0;
    // e_b(2, 3, ..., m-2) via the usual one-pass recurrence.
    std::vector<std::int64_t> e(static_cast<std::size_t>(b) + 1, 0);
    e[0] = 1;
    for (int v = 2; v <= m - 2; ++v)
        for (int j = std::min(b, v - 1); j >= 1; --j)
            e[static_cast<std::size_t>(j)] += v * e[static_cast<std::size_t>(j - 1)];
    return e[static_cast<std::size_t>(b)];
}

std::int64_t nu_by_injections(int m, int a) {
    if (m < 3) throw std::invalid_argument("nu_by_injections: requires m >= 3");
    const int b = 2 * (m - 3) - a;
    if (b < 0) return 0;
    if (b == 0) return 1;  // the empty injection
    if (b > m - 3) return 0;
    // Order-preserving injections {1..b} -> {0..m-4} are increasing b-subsets.
    std::vector<int> sel(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) sel[static_cast<std::size_t>(i)] = i;
    std::int64_t total = 0;
    const int top = m - 4;
    for (;;) {
        std::int64_t prod = 1;
        for (int v : sel) prod *= v + 2;
        total += prod;
        int i = b - 1;
        while (i >= 0 && sel[static_cast<std::size_t>(i)] == top - (b - 1 - i)) --i;
        if (i < 0) break;
        ++sel[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < b; ++j)
            sel[static_cast<std::size_t>(j)] = sel[static_cast<std::size_t>(j - 1)] + 1;
    }
    return total;
}

WeightTable weights_pconf(int m) {
    if (m < 3) throw std::invalid_argument("weights_pconf: requires m >= 3");
    WeightTable w;
    w.dim = m - 3;
    for (int a = m - 3; a <= 2 * (m - 3); ++a) w.add(a, (m - 3) - a, nu(m, a));
    return w;
}

BettiTable betti_pconf(int m) {
    if (m < 3) throw std::invalid_argument("betti_pconf: requires m >= 3");
    BettiTable b;
    b.dim = m - 3;
    // Ordinary Poincare polynomial prod_{j=2}^{m-2} (1 + j t).
    std::vector<std::int64_t> coeff(static_cast<std::size_t>(m - 2), 0);
    coeff[0] = 1;
    for (int j = 2; j <= m - 2; ++j)
        for (int i = m - 3; i >= 1; --i)
            coeff[static_cast<std::size_t>(i)] += j * coeff[static_cast<std::size_t>(i - 1)];
    for (int i = 0; i <= m - 3; ++i) {
        if (coeff[static_cast<std::size_t>(i)] == 0) continue;
        b.ordinary[i] = coeff[static_cast<std::size_t>(i)];
        b.compact[2 * b.dim - i] = coeff[static_cast<std::size_t>(i)];
    }
    return b;
}

WeightTable weights_m0m_star(int m, int n, int d) {
    if (m < 3) throw std::invalid_argument("weights_m0m_star: requires m >= 3");
    if (n < 1 || d < 1) throw std::invalid_argument("weights_m0m_star: need d, n >= 1");
    const WeightTable conf = weights_pconf(m);
    const WeightTable rat = weights_poly(1, d, n + 1);
    WeightTable w;
    w.dim = conf.dim + rat.dim;
    for (const auto& [da, row_a] : conf.entries)
        for (const auto& [ja, ma] : row_a)
            for (const auto& [db, row_b] : rat.entries)
                for (const auto& [jb, mb] : row_b) w.add(da + db, ja + jb, ma * mb);
    return w;
}

WeightTable weights_m0m_star_literal(int m, int n, int d) {
    if (m < 3) throw std::invalid_argument("weights_m0m_star_literal: requires m >= 3");
    if (n < 1 || d < 1) throw std::invalid_argument("weights_m0m_star_literal: need d, n >= 1");
    WeightTable w;
    const int dn1 = d * (n + 1);
    w.dim = m - 3 + dn1;
    // Summand family (a).
    for (int i = m - 3 + 2 * dn1; i <= 2 * (m - 3 + dn1); ++i)
        w.add(i, m - 3 + dn1 - i, nu(m, 2 * (m - 3 + dn1) - i));
    // Summand family (b).
    for (int i = m + (2 * d - 1) * (n + 1); i <= 2 * (m - 3 + dn1) - n + 2; ++i)
        w.add(i, m - 1 + dn1 - i, nu(m, 2 * (m - 2 + dn1) - (i + n)));
    return w;
}

BettiTable betti_m0m_star(int m, int n, int d) {
    const WeightTable w = weights_m0m_star(m, n, d);
    BettiTable b;
    b.dim = w.dim;
    for (const auto& [degree, row] : w.entries) {
        std::int64_t rank = 0;
        for (const auto& [twist, mult] : row) rank += mult;
        if (rank != 0) {
            b.compact[degree] = rank;
            b.ordinary[2 * b.dim - degree] = rank;
        }
    }
    return b;
}

std::vector<WeightDiff> diff_tables(const WeightTable& lhs, const WeightTable& rhs) {
    std::vector<WeightDiff> out;
    auto scan = [&](const WeightTable& a) {
        for (const auto& [degree, row] : a.entries)
            for (const auto& [twist, mult] : row) {
                (void)mult;
                bool seen = false;
                for (const auto& d : out)
                    if (d.degree == degree && d.twist == twist) {
                        seen = true;
                        break;
                    }
                if (seen) continue;
                std::int64_t l = 0, r = 0;
                if (auto it = lhs.entries.find(degree); it != lhs.entries.end())
                    if (auto jt = it->second.find(twist); jt != it->second.end()) l = jt->second;
                if (auto it = rhs.entries.find(degree); it != rhs.entries.end())
                    if (auto jt = it->second.find(twist); jt != it->second.end()) r = jt->second;
                if (l != r) out.push_back({degree, twist, l, r});
            }
    };
    scan(lhs);
    scan(rhs);
    std::sort(out.begin(), out.end(), [](const WeightDiff& a, const WeightDiff& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.twist < b.twist;
    });
    return out;
}

MotiveClass trace_class(const WeightTable& w) {
    MotiveClass acc;
    for (const auto& [degree, row] : w.entries)
        for (const auto& [twist, mult] : row) {
            if (twist > 0) {
                std::ostringstream os;
                os << "trace_class: positive twist " << twist << " in degree " << degree
                   << " cannot be expressed as a polynomial in L";
                throw std::domain_error(os.str());
            }
            MotiveClass term = MotiveClass::term(mult, static_cast<unsigned>(-twist));
            if (degree % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
    return acc;
}

bool verify_trace(const WeightTable& w, const MotiveClass& c) { return trace_class(w) == c; }

bool poincare_duality_holds(const BettiTable& b) {
    for (int i = 0; i <= 2 * b.dim; ++i)
        if (b.ordinary_rank(i) != b.compact_rank(2 * b.dim - i)) return false;
    return true;
}

bool ranks_match(const WeightTable& w, const BettiTable& b) {
    for (const auto& [degree, row] : w.entries)
        if (w.rank(degree) != b.compact_rank(degree)) return false;
    for (const auto& [degree, rank] : b.compact)
        if (rank != w.rank(degree)) return false;
    return true;
}

bool weights_in_range(const WeightTable& w) {
    for (const auto& [degree, row] : w.entries)
        for (const auto& [twist, mult] : row)
            if (-twist < 0 || -twist > w.dim) return false;
    return true;
}

}  // namespace ratmaps
