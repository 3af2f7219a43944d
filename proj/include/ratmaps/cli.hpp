#ifndef RATMAPS_CLI_HPP
#define RATMAPS_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratmaps/bigint.hpp"
#include "ratmaps/gf.hpp"

namespace ratmaps::cli {

enum class Space { poly, rat, pconf, m0m_star, m0m, stratum };
enum class Method { formula, brute, both };
enum class OutputFormat { text, json, csv };

const char* space_name(Space s);
std::optional<Space> parse_space(const std::string& name);

/// Everything a command run needs; built from flags by the front end and
/// passed to the cmd_* entry points, which validate per space.
struct RunConfig {
    Space space = Space::poly;
    std::optional<int> d, n, m, k, r;
    std::uint32_t p = 0;  // 0 = no field given
    std::uint32_t e = 1;
    std::vector<std::uint32_t> exclude{0, 1};
    Method method = Method::formula;
    std::uint64_t cap = 10'000'000;
    unsigned workers = 0;  // 0 = available parallelism
    OutputFormat output = OutputFormat::text;
    // verify options
    std::string check = "all";
    int max_d = 30;
    int max_m = 5;
    int max_rat = 10;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    bool budget_exceeded = false;
    std::string details;
};

struct Report {
    nlohmann::ordered_json inputs;
    nlohmann::ordered_json results;
    std::vector<CheckResult> checks;
    std::int64_t elapsed_ms = 0;
};

/// 0 all pass, 1 some check failed, 3 a brute sub-check ran out of budget.
int exit_code(const Report& r);

Report cmd_count(const RunConfig& cfg);
Report cmd_motive(const RunConfig& cfg);
Report cmd_tables(const RunConfig& cfg);
Report cmd_verify(const RunConfig& cfg);

std::string render_text(const Report& r);
std::string render_json(const Report& r);
std::string render_csv(const Report& r, const std::string& command);

/// Exact integers in JSON: plain numbers when they fit in 64 bits, decimal
/// strings beyond that (never floating point).
nlohmann::ordered_json json_int(const BigInt& v);

// ---------------------------------------------------------------------------
// Verification suites. The six below back `verify --check ...`; the
// remaining ones are extra surfaces used by the acceptance harness and
// tests.
// ---------------------------------------------------------------------------

/// class_poly_recursive == class_poly on 1 <= n <= d <= max_d, m <= max_m.
CheckResult check_recursion(int max_d = 30, int max_m = 5);

/// class_rat(d, n) == class_poly(n+1, d(n+1), 1) for d, n <= max_param, and
/// brute counts of the (d=1, n=2) witness over F_2, F_3, F_5.
CheckResult check_rat_poly(int max_param = 10);

/// Grothendieck-Lefschetz traces: weight table vs motive class for the Poly,
/// PConf and M* families on their standard grids.
std::vector<CheckResult> check_trace(int poly_max_d = 12, int poly_max_m = 4,
                                     int pconf_max_m = 12, int m0m_max_m = 8,
                                     int m0m_max_nd = 4);

/// Extraction/composition bijection and stratum cardinalities at one
/// parameter point: every tuple round-trips, strata partition the space, and
/// the locally closed counts match the class differences.
CheckResult check_stratification_point(int d, int n, int m, const Field& field,
                                       std::uint64_t cap);

/// The same over the full default grid q in {2,3,4,5}, q^{dm} <= cap,
/// 1 <= n <= d.
CheckResult check_stratification_grid(std::uint64_t cap = 100'000);

/// Psi normalization: constant on affine orbits (all q(q-1) translates of
/// every sample), section round-trip, and the orbit-count identity, over
/// q in {3,5}, m in {3,4}, d = n = 1.
CheckResult check_psi();

/// PConf_r(A^1 - {0,1}) brute counts against prod (q-2-i) for r <= 5,
/// prime powers q <= 11.
CheckResult check_pconf();

/// Brute-force membership counts against specialize(class_poly) for every
/// (d, n, m) with q^{dm} <= cap over the given fields; one enumeration sweep
/// per (d, m, q) covers all n at once.
CheckResult check_poly_count_sweep(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& fields,
                                   std::uint64_t cap = 10'000'000);

/// nu by symmetric-function recurrence == nu by injection enumeration for
/// 3 <= m <= max_m and every a with a nonzero side.
CheckResult check_nu(int max_m = 12);

/// Rank consistency (weights vs compact Betti) and Poincare duality for
/// every table family on the trace grids.
CheckResult check_table_consistency();

/// The literal-vs-Kunneth discrepancy report for M*_{0,m}: produced, stable,
/// and the Kunneth table keeps its trace identity.
CheckResult check_literal_diff(int m, int n, int d);

}  // namespace ratmaps::cli

#endif
