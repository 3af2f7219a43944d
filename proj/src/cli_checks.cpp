#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ratmaps/cli.hpp"
#include "ratmaps/cohom.hpp"
#include "ratmaps/motive.hpp"
#include "ratmaps/strata.hpp"

namespace ratmaps::cli {

namespace {

CheckResult pass_result(std::string name, std::string details) {
    return {std::move(name), true, false, std::move(details)};
}

CheckResult fail_result(std::string name, std::string details) {
    return {std::move(name), false, false, std::move(details)};
}

std::string fmt_point(std::initializer_list<std::pair<const char*, long long>> kv) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, value] : kv) {
        if (!first) os << ", ";
        first = false;
        os << key << "=" << value;
    }
    return os.str();
}

BigInt bigpow(std::uint64_t base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

FieldCtx field_for(std::uint32_t q) {
    std::uint32_t p = q, e = 1;
    for (std::uint32_t base = 2; base * base <= q; ++base) {
        if (q % base == 0) {
            p = base;
            e = 0;
            std::uint32_t v = q;
            while (v > 1) {
                if (v % base != 0)
                    throw std::invalid_argument(std::to_string(q) + " is not a prime power");
                v /= base;
                ++e;
            }
            break;
        }
    }
    return make_field(p, e);
}

}  // namespace

CheckResult check_recursion(int max_d, int max_m) {
    long long checked = 0;
    for (int d = 1; d <= max_d; ++d)
        for (int n = 1; n <= d; ++n)
            for (int m = 1; m <= max_m; ++m) {
                if (class_poly_recursive(n, d, m) != class_poly(n, d, m))
                    return fail_result("recursion",
                                       "closed form disagrees with the recursion at " +
                                           fmt_point({{"n", n}, {"d", d}, {"m", m}}));
                ++checked;
            }
    std::ostringstream os;
    os << checked << " identities over 1<=n<=d<=" << max_d << ", m<=" << max_m;
    return pass_result("recursion", os.str());
}

CheckResult check_rat_poly(int max_param) {
    for (int d = 1; d <= max_param; ++d)
        for (int n = 1; n <= max_param; ++n)
            if (class_rat(d, n) != class_poly(n + 1, d * (n + 1), 1))
                return fail_result("rat-poly", "class mismatch at " +
                                                   fmt_point({{"d", d}, {"n", n}}));
    // Brute witness: Rat*_{1,2} vs Poly_3^{3,1} point counts, both q^3 - q.
    for (std::uint32_t q : {2u, 3u, 5u}) {
        FieldCtx f = make_field(q, 1);
        const std::uint64_t rat_count = count_poly_bruteforce(1, 1, 3, *f);
        const std::uint64_t poly_count = count_poly_bruteforce(3, 3, 1, *f);
        const BigInt expected = specialize(class_rat(1, 2), q);
        if (BigInt(rat_count) != expected || BigInt(poly_count) != expected)
            return fail_result("rat-poly",
                               "brute counts disagree at q=" + std::to_string(q) + ": rat=" +
                                   std::to_string(rat_count) + ", poly=" +
                                   std::to_string(poly_count) + ", class=" + expected.str());
    }
    std::ostringstream os;
    os << max_param * max_param
       << " polynomial identities, brute witness (d=1, n=2) over q in {2,3,5}";
    return pass_result("rat-poly", os.str());
}

std::vector<CheckResult> check_trace(int poly_max_d, int poly_max_m, int pconf_max_m,
                                     int m0m_max_m, int m0m_max_nd) {
    std::vector<CheckResult> out;
    {
        long long checked = 0;
        bool ok = true;
        std::string bad;
        for (int d = 1; d <= poly_max_d && ok; ++d)
            for (int n = 1; n <= d && ok; ++n)
                for (int m = 1; m <= poly_max_m && ok; ++m) {
                    if (!verify_trace(weights_poly(n, d, m), class_poly(n, d, m))) {
                        ok = false;
                        bad = fmt_point({{"n", n}, {"d", d}, {"m", m}});
                    }
                    ++checked;
                }
        out.push_back(ok ? pass_result("trace-poly",
                                       std::to_string(checked) + " identities on 1<=n<=d<=" +
                                           std::to_string(poly_max_d) + ", m<=" +
                                           std::to_string(poly_max_m))
                         : fail_result("trace-poly", "trace identity fails at " + bad));
    }
    {
        bool ok = true;
        std::string bad;
        for (int m = 3; m <= pconf_max_m && ok; ++m)
            if (!verify_trace(weights_pconf(m),
                              class_pconf(MotiveClass::lefschetz(1) - MotiveClass(2), m - 3))) {
                ok = false;
                bad = fmt_point({{"m", m}});
            }
        out.push_back(ok ? pass_result("trace-pconf", "3<=m<=" + std::to_string(pconf_max_m))
                         : fail_result("trace-pconf", "trace identity fails at " + bad));
    }
    {
        long long checked = 0;
        bool ok = true;
        std::string bad;
        for (int m = 3; m <= m0m_max_m && ok; ++m)
            for (int n = 1; n <= m0m_max_nd && ok; ++n)
                for (int d = 1; d <= m0m_max_nd && ok; ++d) {
                    if (!verify_trace(weights_m0m_star(m, n, d), class_m0m_star(m, n, d))) {
                        ok = false;
                        bad = fmt_point({{"m", m}, {"n", n}, {"d", d}});
                    }
                    ++checked;
                }
        out.push_back(ok ? pass_result("trace-m0m-star",
                                       std::to_string(checked) + " identities on 3<=m<=" +
                                           std::to_string(m0m_max_m) + ", n,d<=" +
                                           std::to_string(m0m_max_nd))
                         : fail_result("trace-m0m-star", "trace identity fails at " + bad));
    }
    return out;
}

namespace {

// One enumeration of all degree-d tuples: stratum-index histograms for every
// n, with per-tuple bijection evidence (the extracted (g, h) multiplies back
// to t and g is again a Poly_n point).
struct DegreeSweep {
    std::vector<std::vector<std::uint64_t>> hist;  // [n-1][k]
    std::uint64_t total = 0;
    bool ok = true;
    std::string details;
};

DegreeSweep sweep_degree(int d, int m, const Field& field, std::uint64_t cap) {
    DegreeSweep sw;
    sw.hist.resize(static_cast<std::size_t>(d));
    for (int n = 1; n <= d; ++n)
        sw.hist[static_cast<std::size_t>(n - 1)].assign(static_cast<std::size_t>(d / n) + 1, 0);
    for_each_tuple(d, m, field, cap, [&](const PolyTuple& t) {
        ++sw.total;
        if (!sw.ok) return;
        TupleStructure structure(t);
        for (int n = 1; n <= d; ++n) {
            const Poly h = structure.common_power_factor(n);
            const int k = h.degree();
            ++sw.hist[static_cast<std::size_t>(n - 1)].at(static_cast<std::size_t>(k));
            if (k == 0) continue;
            const Poly hn = pow(h, static_cast<unsigned>(n));
            std::vector<Poly> base;
            base.reserve(t.polys.size());
            for (const Poly& p : t.polys) {
                auto [quo, rem] = divrem(p, hn);
                if (!rem.is_zero()) {
                    sw.ok = false;
                    sw.details = "h^n does not divide the tuple at " +
                                 fmt_point({{"d", d}, {"n", n}, {"m", m}});
                    return;
                }
                base.push_back(std::move(quo));
            }
            PolyTuple g(std::move(base));
            if (!is_poly_point(g, n)) {
                sw.ok = false;
                sw.details = "extracted base is not a Poly_n point at " +
                             fmt_point({{"d", d}, {"n", n}, {"m", m}});
                return;
            }
            if (!(compose(g, h, n) == t)) {
                sw.ok = false;
                sw.details = "compose(extract(t)) != t at " +
                             fmt_point({{"d", d}, {"n", n}, {"m", m}});
                return;
            }
        }
    });
    return sw;
}

// Histograms against the class differences, the partition property, and the
// product cardinality of the extraction bijection. poly_counts[d'] holds
// the enumerated space size in slot 0 and |Poly_n^{d',m}| in slot n.
bool verify_sweep_counts(const DegreeSweep& sw, int d, int m, std::uint64_t q,
                         const std::vector<std::vector<std::uint64_t>>& poly_counts,
                         std::string& details) {
    for (int n = 1; n <= d; ++n) {
        const auto& row = sw.hist[static_cast<std::size_t>(n - 1)];
        std::uint64_t seen = 0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            seen += row[k];
            const BigInt expected =
                specialize(class_r_stratum(n, d, m, static_cast<int>(k)), q) -
                specialize(class_r_stratum(n, d, m, static_cast<int>(k) + 1), q);
            if (BigInt(row[k]) != expected) {
                details = "stratum cardinality mismatch at " +
                          fmt_point({{"d", d},
                                     {"n", n},
                                     {"m", m},
                                     {"k", static_cast<long long>(k)},
                                     {"q", static_cast<long long>(q)}}) +
                          ": counted " + std::to_string(row[k]) + ", class gives " +
                          expected.str();
                return false;
            }
            if (k >= 1) {
                const int dk = d - static_cast<int>(k) * n;
                const auto& lower = poly_counts[static_cast<std::size_t>(dk)];
                const std::uint64_t base_count =
                    (dk == 0 || n > dk) ? (dk == 0 ? 1 : lower[0])
                                        : lower[static_cast<std::size_t>(n)];
                std::uint64_t hcount = 1;
                for (std::size_t i = 0; i < k; ++i) hcount *= q;
                if (row[k] != base_count * hcount) {
                    details = "bijection cardinality mismatch at " +
                              fmt_point({{"d", d},
                                         {"n", n},
                                         {"m", m},
                                         {"k", static_cast<long long>(k)},
                                         {"q", static_cast<long long>(q)}}) +
                              ": stratum has " + std::to_string(row[k]) + ", pairs give " +
                              std::to_string(base_count * hcount);
                    return false;
                }
            }
        }
        if (seen != sw.total) {
            details = "strata do not partition the space at " +
                      fmt_point({{"d", d}, {"n", n}, {"m", m}, {"q", static_cast<long long>(q)}});
            return false;
        }
    }
    return true;
}

}  // namespace

CheckResult check_stratification_point(int d, int n, int m, const Field& field,
                                       std::uint64_t cap) {
    if (d < 1 || n < 1 || m < 1)
        throw std::invalid_argument("check_stratification_point: need d, n, m >= 1");
    DegreeSweep sw = sweep_degree(d, m, field, cap);
    if (!sw.ok) return fail_result("stratification", sw.details);
    std::vector<std::vector<std::uint64_t>> poly_counts(static_cast<std::size_t>(d) + 1);
    poly_counts[0] = {1};
    for (int dd = 1; dd <= d; ++dd) {
        auto& row = poly_counts[static_cast<std::size_t>(dd)];
        row.assign(static_cast<std::size_t>(dd) + 1, 0);
        std::uint64_t space = 1;
        for (int i = 0; i < dd * m; ++i) space *= field.q();
        row[0] = space;
        for (int nn = 1; nn <= dd; ++nn)
            row[static_cast<std::size_t>(nn)] = count_poly_bruteforce(dd, nn, m, field, {cap, 0});
    }
    std::string details;
    if (!verify_sweep_counts(sw, d, m, field.q(), poly_counts, details))
        return fail_result("stratification", details);
    std::ostringstream os;
    os << "bijection and cardinalities on " << sw.total << " tuples at "
       << fmt_point({{"d", d}, {"n", n}, {"m", m}, {"q", static_cast<long long>(field.q())}});
    return pass_result("stratification", os.str());
}

CheckResult check_stratification_grid(std::uint64_t cap) {
    long long tuples = 0;
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        FieldCtx field = field_for(q);
        for (int m = 1; bigpow(q, m) <= cap; ++m) {
            int dmax = 0;
            while (bigpow(q, (dmax + 1) * m) <= cap) ++dmax;
            if (dmax < 1) break;
            // Ascending degree, so the bijection cardinalities can refer to
            // the already-enumerated lower-degree membership counts.
            std::vector<std::vector<std::uint64_t>> poly_counts(
                static_cast<std::size_t>(dmax) + 1);
            poly_counts[0] = {1};
            for (int d = 1; d <= dmax; ++d) {
                DegreeSweep sw = sweep_degree(d, m, *field, cap);
                tuples += static_cast<long long>(sw.total);
                if (!sw.ok) return fail_result("stratification", sw.details);
                std::string details;
                if (!verify_sweep_counts(sw, d, m, q, poly_counts, details))
                    return fail_result("stratification", details);
                auto& row = poly_counts[static_cast<std::size_t>(d)];
                row.assign(static_cast<std::size_t>(d) + 1, 0);
                row[0] = sw.total;
                for (int n = 1; n <= d; ++n)
                    row[static_cast<std::size_t>(n)] =
                        sw.hist[static_cast<std::size_t>(n - 1)][0];
            }
        }
    }
    std::ostringstream os;
    os << "round trips and cardinalities on " << tuples
       << " tuples, q in {2,3,4,5}, q^{dm} <= " << cap;
    return pass_result("stratification", os.str());
}

CheckResult check_psi() {
    long long samples = 0;
    for (std::uint32_t q : {3u, 5u}) {
        FieldCtx ctx = make_field(q, 1);
        const Field& field = *ctx;
        // Rat*_{1,1} points: pairs of monic linear polynomials without a
        // common root.
        std::vector<PolyTuple> rats;
        for_each_tuple(1, 2, field, 1u << 20, [&](const PolyTuple& t) {
            if (is_poly_point(t, 1)) rats.push_back(t);
        });
        for (int m : {3, 4}) {
            const int marks_count = m - 1;
            // All ordered tuples of distinct points of A^1(F_q).
            std::vector<std::vector<std::uint32_t>> mark_sets;
            std::vector<std::uint32_t> current;
            auto rec = [&](auto&& self) -> void {
                if (static_cast<int>(current.size()) == marks_count) {
                    mark_sets.push_back(current);
                    return;
                }
                for (std::uint32_t v = 0; v < q; ++v) {
                    if (std::find(current.begin(), current.end(), v) != current.end()) continue;
                    current.push_back(v);
                    self(self);
                    current.pop_back();
                }
            };
            rec(rec);

            std::set<std::vector<std::uint32_t>> image;
            auto canon_key = [](const PsiNormalForm& nf) {
                std::vector<std::uint32_t> key;
                for (const FieldElem& c : nf.conf) key.push_back(c.rep);
                for (const Poly& p : nf.rat.polys) {
                    key.push_back(0xffffffffu);
                    for (std::uint32_t c : p.coeffs()) key.push_back(c);
                }
                return key;
            };

            for (const auto& marks_reps : mark_sets) {
                for (const PolyTuple& rat : rats) {
                    std::vector<FieldElem> marks;
                    for (std::uint32_t v : marks_reps) marks.push_back(field.elem(v));
                    MarkedRat mr(marks, rat);
                    PsiNormalForm nf = psi_normalize(mr);
                    ++samples;
                    // Normal form sanity: m-3 marks, none 0 or 1, distinct.
                    if (static_cast<int>(nf.conf.size()) != m - 3)
                        return fail_result("psi", "wrong configuration size at " +
                                                      fmt_point({{"q", q}, {"m", m}}));
                    for (std::size_t i = 0; i < nf.conf.size(); ++i) {
                        if (nf.conf[i].rep == 0 || nf.conf[i].rep == 1)
                            return fail_result("psi", "normalized mark hit 0 or 1 at " +
                                                          fmt_point({{"q", q}, {"m", m}}));
                        for (std::size_t j = i + 1; j < nf.conf.size(); ++j)
                            if (nf.conf[i].rep == nf.conf[j].rep)
                                return fail_result("psi", "normalized marks collide at " +
                                                              fmt_point({{"q", q}, {"m", m}}));
                    }
                    // Section round trip: marks (0, 1, conf...) normalize to
                    // the same form.
                    {
                        std::vector<FieldElem> section_marks{field.elem(0), field.elem(1)};
                        for (const FieldElem& c : nf.conf) section_marks.push_back(c);
                        MarkedRat section(section_marks, nf.rat);
                        if (!(psi_normalize(section) == nf))
                            return fail_result("psi", "section round trip fails at " +
                                                          fmt_point({{"q", q}, {"m", m}}));
                    }
                    // Constant on the whole affine orbit.
                    for (std::uint32_t a = 1; a < q; ++a)
                        for (std::uint32_t b = 0; b < q; ++b) {
                            MarkedRat moved = apply_affine(mr, field.elem(a), field.elem(b));
                            if (!(psi_normalize(moved) == nf))
                                return fail_result(
                                    "psi", "not constant on the affine orbit at " +
                                               fmt_point({{"q", q},
                                                          {"m", m},
                                                          {"a", a},
                                                          {"b", b}}));
                        }
                    image.insert(canon_key(nf));
                }
            }
            // Orbit counting: |PConf_{m-1}(A^1)| |Rat*| = q(q-1) |image|, and
            // the image size is the M* point count.
            const std::uint64_t pconf_count = count_pconf_bruteforce(m - 1, {}, field);
            const std::uint64_t rat_count = count_poly_bruteforce(1, 1, 2, field);
            if (pconf_count * rat_count !=
                static_cast<std::uint64_t>(q) * (q - 1) * image.size())
                return fail_result("psi", "orbit count identity fails at " +
                                              fmt_point({{"q", q}, {"m", m}}));
            if (BigInt(image.size()) != specialize(class_m0m_star(m, 1, 1), q))
                return fail_result("psi", "image size is not the M* count at " +
                                              fmt_point({{"q", q}, {"m", m}}));
        }
    }
    std::ostringstream os;
    os << samples << " marked maps over q in {3,5}, m in {3,4}, all q(q-1) translates each";
    return pass_result("psi", os.str());
}

CheckResult check_pconf() {
    long long checked = 0;
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u}) {
        FieldCtx field = field_for(q);
        for (int r = 0; r <= 5; ++r) {
            const std::uint64_t counted = count_pconf_bruteforce(r, {0, 1}, *field);
            // prod_{i<r} (q-2-i); consecutive descending factors, so the
            // product hits 0 before it could go negative.
            const BigInt expected =
                specialize(class_pconf(MotiveClass::lefschetz(1) - MotiveClass(2), r), q);
            if (BigInt(counted) != expected)
                return fail_result("pconf",
                                   "count mismatch at " + fmt_point({{"r", r}, {"q", q}}) +
                                       ": counted " + std::to_string(counted) + ", formula " +
                                       expected.str());
            ++checked;
        }
    }
    return pass_result("pconf", std::to_string(checked) +
                                    " counts, r <= 5, prime powers q <= 11, excluding {0,1}");
}

CheckResult check_poly_count_sweep(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& fields, std::uint64_t cap) {
    long long identities = 0;
    long long tuples = 0;
    for (const auto& [p, e] : fields) {
        FieldCtx ctx = make_field(p, e);
        const std::uint64_t q = ctx->q();
        for (int m = 1; bigpow(q, m) <= cap; ++m) {
            for (int d = 1; bigpow(q, d * m) <= cap; ++d) {
                StratumCensus census = stratum_census(d, m, *ctx, {cap, 0});
                tuples += static_cast<long long>(census.total);
                for (int n = 1; n <= d + 1; ++n) {
                    const BigInt expected = specialize(class_poly(n, d, m), q);
                    if (BigInt(census.poly_count(n)) != expected)
                        return fail_result(
                            "poly-count",
                            "brute count disagrees with the class at " +
                                fmt_point({{"d", d},
                                           {"n", n},
                                           {"m", m},
                                           {"q", static_cast<long long>(q)}}) +
                                ": counted " + std::to_string(census.poly_count(n)) +
                                ", class gives " + expected.str());
                    ++identities;
                }
            }
        }
    }
    std::ostringstream os;
    os << identities << " point counts over " << tuples << " enumerated tuples, q^{dm} <= "
       << cap;
    return pass_result("poly-count", os.str());
}

CheckResult check_nu(int max_m) {
    long long checked = 0;
    for (int m = 3; m <= max_m; ++m)
        for (int a = -2; a <= 2 * (m - 3) + 2; ++a) {
            if (nu(m, a) != nu_by_injections(m, a))
                return fail_result("nu", "the two evaluations disagree at " +
                                             fmt_point({{"m", m}, {"a", a}}));
            ++checked;
        }
    return pass_result("nu", std::to_string(checked) +
                                 " values, injection sum vs elementary symmetric recurrence, "
                                 "3<=m<=" +
                                 std::to_string(max_m));
}

CheckResult check_table_consistency() {
    long long tables = 0;
    for (int d = 1; d <= 12; ++d)
        for (int n = 1; n <= d; ++n)
            for (int m = 1; m <= 4; ++m) {
                const WeightTable w = weights_poly(n, d, m);
                const BettiTable b = betti_poly(n, d, m);
                if (!ranks_match(w, b) || !poincare_duality_holds(b) || !weights_in_range(w))
                    return fail_result("tables", "poly table inconsistency at " +
                                                     fmt_point({{"n", n}, {"d", d}, {"m", m}}));
                ++tables;
            }
    for (int m = 3; m <= 12; ++m) {
        const WeightTable w = weights_pconf(m);
        const BettiTable b = betti_pconf(m);
        if (!ranks_match(w, b) || !poincare_duality_holds(b) || !weights_in_range(w))
            return fail_result("tables", "pconf table inconsistency at " + fmt_point({{"m", m}}));
        ++tables;
    }
    for (int m = 3; m <= 8; ++m)
        for (int n = 1; n <= 4; ++n)
            for (int d = 1; d <= 4; ++d) {
                const WeightTable w = weights_m0m_star(m, n, d);
                const BettiTable b = betti_m0m_star(m, n, d);
                if (!ranks_match(w, b) || !poincare_duality_holds(b) || !weights_in_range(w))
                    return fail_result("tables",
                                       "m0m-star table inconsistency at " +
                                           fmt_point({{"m", m}, {"n", n}, {"d", d}}));
                ++tables;
            }
    return pass_result("tables", std::to_string(tables) +
                                     " tables: weight multiplicities match compact Betti "
                                     "ranks, Poincare duality holds");
}

CheckResult check_literal_diff(int m, int n, int d) {
    const WeightTable kunneth = weights_m0m_star(m, n, d);
    const WeightTable literal = weights_m0m_star_literal(m, n, d);
    const auto diffs = diff_tables(kunneth, literal);
    if (!verify_trace(kunneth, class_m0m_star(m, n, d)))
        return fail_result("literal-diff",
                           "Kunneth table lost its trace identity at " +
                               fmt_point({{"m", m}, {"n", n}, {"d", d}}));
    std::ostringstream os;
    os << diffs.size() << " differing (degree, twist) slots at "
       << fmt_point({{"m", m}, {"n", n}, {"d", d}});
    if (!diffs.empty()) {
        os << ":";
        for (const auto& diff : diffs)
            os << " [i=" << diff.degree << ", j=" << diff.twist << ": kunneth " << diff.lhs
               << " vs literal " << diff.rhs << "]";
    }
    return pass_result("literal-diff", os.str());
}

}  // namespace ratmaps::cli
