#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ratmaps/cli.hpp"
#include "ratmaps/cohom.hpp"
#include "ratmaps/motive.hpp"
#include "ratmaps/strata.hpp"

namespace ratmaps::cli {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point start = Clock::now();
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
            .count();
    }
};

int require(const std::optional<int>& v, const char* flag) {
    if (!v) throw std::invalid_argument(std::string("missing required option --") + flag);
    return *v;
}

FieldCtx field_from(const RunConfig& cfg) {
    if (cfg.p == 0) throw std::invalid_argument("missing required option --field");
    return make_field(cfg.p, cfg.e);
}

ordered_json echo_inputs(const RunConfig& cfg, const char* command) {
    ordered_json j;
    j["command"] = command;
    j["space"] = space_name(cfg.space);
    if (cfg.d) j["d"] = *cfg.d;
    if (cfg.n) j["n"] = *cfg.n;
    if (cfg.m) j["m"] = *cfg.m;
    if (cfg.k) j["k"] = *cfg.k;
    if (cfg.r) j["r"] = *cfg.r;
    if (cfg.p != 0) {
        j["field"] = cfg.e == 1 ? std::to_string(cfg.p)
                                : std::to_string(cfg.p) + "^" + std::to_string(cfg.e);
    }
    if (cfg.space == Space::pconf) j["exclude"] = cfg.exclude;
    j["method"] = cfg.method == Method::formula ? "formula"
                  : cfg.method == Method::brute ? "brute"
                                                : "both";
    j["cap"] = cfg.cap;
    j["workers"] = cfg.workers;
    return j;
}

std::vector<std::uint32_t> dedup_exclude(const RunConfig& cfg, std::uint64_t q) {
    std::vector<std::uint32_t> ex = cfg.exclude;
    std::sort(ex.begin(), ex.end());
    ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
    for (std::uint32_t v : ex)
        if (v >= q)
            throw std::invalid_argument("--exclude: point " + std::to_string(v) +
                                        " is not in F_" + std::to_string(q));
    return ex;
}

MotiveClass class_for_space(const RunConfig& cfg, std::size_t exclude_count) {
    switch (cfg.space) {
        case Space::poly:
            return class_poly(require(cfg.n, "n"), require(cfg.d, "d"), require(cfg.m, "m"));
        case Space::rat:
            return class_rat(require(cfg.d, "d"), require(cfg.n, "n"));
        case Space::pconf:
            return class_pconf(
                MotiveClass::lefschetz(1) - MotiveClass(static_cast<long>(exclude_count)),
                require(cfg.r, "r"));
        case Space::m0m_star:
            return class_m0m_star(require(cfg.m, "m"), require(cfg.n, "n"),
                                  require(cfg.d, "d"));
        case Space::m0m:
            return class_m0m(require(cfg.m, "m"), require(cfg.n, "n"), require(cfg.d, "d"));
        case Space::stratum:
            return class_r_stratum(require(cfg.n, "n"), require(cfg.d, "d"),
                                   require(cfg.m, "m"), require(cfg.k, "k"));
    }
    throw std::logic_error("unknown space");
}

BigInt brute_for_space(const RunConfig& cfg, const Field& field,
                       const std::vector<std::uint32_t>& exclude, std::string* note) {
    const EnumOptions opts{cfg.cap, cfg.workers};
    switch (cfg.space) {
        case Space::poly:
            return count_poly_bruteforce(require(cfg.d, "d"), require(cfg.n, "n"),
                                         require(cfg.m, "m"), field, opts);
        case Space::rat:
            // Rat*_{d,n} realized as Poly_1^{d,n+1}.
            return count_poly_bruteforce(require(cfg.d, "d"), 1, require(cfg.n, "n") + 1,
                                         field, opts);
        case Space::pconf:
            return count_pconf_bruteforce(require(cfg.r, "r"), exclude, field, opts);
        case Space::stratum: {
            StratumParams p{require(cfg.d, "d"), require(cfg.n, "n"), require(cfg.m, "m"),
                            require(cfg.k, "k")};
            return count_stratum_bruteforce(p, field, opts);
        }
        case Space::m0m_star: {
            // Product structure: configuration factor times based maps.
            if (note) *note = "product of PConf and Rat* brute counts";
            const int m = require(cfg.m, "m");
            if (m < 3) throw std::invalid_argument("m0m-star requires m >= 3");
            const BigInt conf = count_pconf_bruteforce(m - 3, {0, 1}, field, opts);
            const BigInt rat = count_poly_bruteforce(require(cfg.d, "d"), 1,
                                                     require(cfg.n, "n") + 1, field, opts);
            return conf * rat;
        }
        case Space::m0m: {
            if (note) *note = "product of PConf, Rat* brute counts and |P^n(F_q)|";
            const int m = require(cfg.m, "m");
            const int n = require(cfg.n, "n");
            if (m < 3) throw std::invalid_argument("m0m requires m >= 3");
            const BigInt conf = count_pconf_bruteforce(m - 3, {0, 1}, field, opts);
            const BigInt rat =
                count_poly_bruteforce(require(cfg.d, "d"), 1, n + 1, field, opts);
            BigInt pn = 0, power = 1;
            for (int i = 0; i <= n; ++i) {
                pn += power;
                power *= field.q();
            }
            return conf * rat * pn;
        }
    }
    throw std::logic_error("unknown space");
}

ordered_json weight_table_json(const WeightTable& w) {
    ordered_json j;
    j["dim"] = w.dim;
    j["entries"] = ordered_json::array();
    for (const auto& [degree, row] : w.entries)
        for (const auto& [twist, mult] : row)
            j["entries"].push_back({{"degree", degree}, {"twist", twist}, {"mult", mult}});
    if (!w.notes.empty()) j["notes"] = w.notes;
    return j;
}

ordered_json betti_table_json(const BettiTable& b) {
    ordered_json j;
    j["dim"] = b.dim;
    ordered_json ord = ordered_json::object();
    for (const auto& [i, r] : b.ordinary) ord[std::to_string(i)] = r;
    ordered_json cpt = ordered_json::object();
    for (const auto& [i, r] : b.compact) cpt[std::to_string(i)] = r;
    j["ordinary"] = ord;
    j["compact"] = cpt;
    if (!b.notes.empty()) j["notes"] = b.notes;
    return j;
}

}  // namespace

const char* space_name(Space s) {
    switch (s) {
        case Space::poly: return "poly";
        case Space::rat: return "rat";
        case Space::pconf: return "pconf";
        case Space::m0m_star: return "m0m-star";
        case Space::m0m: return "m0m";
        case Space::stratum: return "stratum";
    }
    return "?";
}

std::optional<Space> parse_space(const std::string& name) {
    if (name == "poly") return Space::poly;
    if (name == "rat") return Space::rat;
    if (name == "pconf") return Space::pconf;
    if (name == "m0m-star") return Space::m0m_star;
    if (name == "m0m") return Space::m0m;
    if (name == "stratum") return Space::stratum;
    return std::nullopt;
}

nlohmann::ordered_json json_int(const BigInt& v) {
    static const BigInt kMin = std::numeric_limits<std::int64_t>::min();
    static const BigInt kMax = std::numeric_limits<std::int64_t>::max();
    if (v >= kMin && v <= kMax) return v.convert_to<std::int64_t>();
    return v.str();  // exact decimal, just not a machine word
}

int exit_code(const Report& r) {
    bool failed = false;
    for (const CheckResult& c : r.checks) {
        if (c.budget_exceeded) return 3;
        if (!c.pass) failed = true;
    }
    return failed ? 1 : 0;
}

Report cmd_count(const RunConfig& cfg) {
    Timer timer;
    Report rep;
    rep.inputs = echo_inputs(cfg, "count");
    FieldCtx field = field_from(cfg);
    const std::uint64_t q = field->q();
    std::vector<std::uint32_t> exclude =
        cfg.space == Space::pconf ? dedup_exclude(cfg, q) : std::vector<std::uint32_t>{};

    std::optional<BigInt> formula, brute;
    if (cfg.method != Method::brute) {
        const std::size_t ex = cfg.space == Space::pconf ? exclude.size() : 0;
        formula = specialize(class_for_space(cfg, ex), q);
    }
    std::string brute_note;
    if (cfg.method != Method::formula)
        brute = brute_for_space(cfg, *field, exclude, &brute_note);

    if (formula) rep.results["formula"] = json_int(*formula);
    if (brute) rep.results["brute"] = json_int(*brute);
    if (!brute_note.empty()) rep.results["brute_method"] = brute_note;
    if (formula && brute) {
        const bool agree = *formula == *brute;
        rep.results["agree"] = agree;
        rep.checks.push_back({"count-agreement", agree, false,
                              agree ? "formula and enumeration give " + formula->str()
                                    : "formula " + formula->str() + " != brute " +
                                          brute->str()});
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report cmd_motive(const RunConfig& cfg) {
    Timer timer;
    Report rep;
    rep.inputs = echo_inputs(cfg, "motive");
    std::size_t exclude_count = 0;
    if (cfg.space == Space::pconf) {
        std::vector<std::uint32_t> ex = cfg.exclude;
        std::sort(ex.begin(), ex.end());
        ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
        exclude_count = ex.size();
    }
    const MotiveClass c = class_for_space(cfg, exclude_count);
    rep.results["class"] = c.str();
    ordered_json coeffs = ordered_json::object();
    for (const auto& [exp, coeff] : c.coeffs()) coeffs[std::to_string(exp)] = json_int(coeff);
    rep.results["coefficients"] = coeffs;
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report cmd_tables(const RunConfig& cfg) {
    Timer timer;
    Report rep;
    rep.inputs = echo_inputs(cfg, "tables");
    auto push_consistency = [&](const char* name, const WeightTable& w, const BettiTable& b) {
        const bool ok = ranks_match(w, b) && poincare_duality_holds(b) && weights_in_range(w);
        rep.checks.push_back({std::string(name) + "-consistency", ok, false,
                              ok ? "weight multiplicities match compact Betti ranks; duality holds"
                                 : "table inconsistency"});
    };
    switch (cfg.space) {
        case Space::poly: {
            const int d = require(cfg.d, "d"), n = require(cfg.n, "n"), m = require(cfg.m, "m");
            const WeightTable w = weights_poly(n, d, m);
            rep.results["weights"] = weight_table_json(w);
            if (n <= d) {
                const BettiTable b = betti_poly(n, d, m);
                rep.results["betti"] = betti_table_json(b);
                push_consistency("poly", w, b);
            } else {
                rep.results["note"] =
                    "n > d: the space is affine, only the weight table applies";
            }
            break;
        }
        case Space::rat: {
            const int d = require(cfg.d, "d"), n = require(cfg.n, "n");
            const WeightTable w = weights_poly(1, d, n + 1);
            const BettiTable b = betti_poly(1, d, n + 1);
            rep.results["weights"] = weight_table_json(w);
            rep.results["betti"] = betti_table_json(b);
            push_consistency("rat", w, b);
            break;
        }
        case Space::pconf: {
            const int m = require(cfg.m, "m");
            const WeightTable w = weights_pconf(m);
            const BettiTable b = betti_pconf(m);
            rep.results["weights"] = weight_table_json(w);
            rep.results["betti"] = betti_table_json(b);
            push_consistency("pconf", w, b);
            break;
        }
        case Space::m0m_star: {
            const int m = require(cfg.m, "m"), n = require(cfg.n, "n"), d = require(cfg.d, "d");
            const WeightTable w = weights_m0m_star(m, n, d);
            const WeightTable lit = weights_m0m_star_literal(m, n, d);
            const BettiTable b = betti_m0m_star(m, n, d);
            rep.results["weights"] = weight_table_json(w);
            rep.results["weights_literal"] = weight_table_json(lit);
            rep.results["betti"] = betti_table_json(b);
            ordered_json diff = ordered_json::array();
            for (const WeightDiff& row : diff_tables(w, lit))
                diff.push_back({{"degree", row.degree},
                                {"twist", row.twist},
                                {"kunneth", row.lhs},
                                {"literal", row.rhs}});
            rep.results["diff"] = diff;
            push_consistency("m0m-star", w, b);
            break;
        }
        case Space::m0m: {
            const int m = require(cfg.m, "m"), n = require(cfg.n, "n"), d = require(cfg.d, "d");
            // Kunneth with the P^n factor: one class in each even degree.
            const WeightTable star = weights_m0m_star(m, n, d);
            WeightTable w;
            w.dim = star.dim + n;
            for (const auto& [degree, row] : star.entries)
                for (const auto& [twist, mult] : row)
                    for (int i = 0; i <= n; ++i) w.add(degree + 2 * i, twist - i, mult);
            BettiTable b;
            b.dim = w.dim;
            for (const auto& [degree, row] : w.entries) {
                const std::int64_t rank = w.rank(degree);
                if (rank != 0) {
                    b.compact[degree] = rank;
                    b.ordinary[2 * b.dim - degree] = rank;
                }
            }
            rep.results["weights"] = weight_table_json(w);
            rep.results["betti"] = betti_table_json(b);
            push_consistency("m0m", w, b);
            break;
        }
        case Space::stratum:
            throw std::invalid_argument(
                "tables: the stratum space has no published Betti/weight tables");
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

Report cmd_verify(const RunConfig& cfg) {
    Timer timer;
    Report rep;
    rep.inputs = echo_inputs(cfg, "verify");
    rep.inputs["check"] = cfg.check;

    auto run = [&](const std::string& name, auto&& fn) {
        try {
            auto result = fn();
            rep.checks.push_back(std::move(result));
        } catch (const budget_error& e) {
            rep.checks.push_back({name, false, true,
                                  std::string(e.what()) + " (required " + e.required().str() +
                                      " tuples)"});
        }
    };
    const bool all = cfg.check == "all";
    bool matched = all;
    if (all || cfg.check == "recursion") {
        matched = true;
        run("recursion", [&] { return check_recursion(cfg.max_d, cfg.max_m); });
    }
    if (all || cfg.check == "rat-poly") {
        matched = true;
        run("rat-poly", [&] { return check_rat_poly(cfg.max_rat); });
    }
    if (all || cfg.check == "trace") {
        matched = true;
        try {
            for (CheckResult& c : check_trace()) rep.checks.push_back(std::move(c));
        } catch (const budget_error& e) {
            rep.checks.push_back({"trace", false, true, e.what()});
        }
    }
    if (all || cfg.check == "stratification") {
        matched = true;
        if (cfg.d && cfg.n && cfg.m && cfg.p != 0) {
            run("stratification", [&] {
                FieldCtx field = field_from(cfg);
                return check_stratification_point(*cfg.d, *cfg.n, *cfg.m, *field, cfg.cap);
            });
        } else {
            run("stratification",
                [&] { return check_stratification_grid(std::min<std::uint64_t>(cfg.cap, 100'000)); });
        }
    }
    if (all || cfg.check == "psi") {
        matched = true;
        run("psi", [&] { return check_psi(); });
    }
    if (all || cfg.check == "pconf") {
        matched = true;
        run("pconf", [&] { return check_pconf(); });
    }
    if (!matched)
        throw std::invalid_argument(
            "unknown check '" + cfg.check +
            "' (expected recursion, rat-poly, trace, stratification, psi, pconf or all)");

    bool all_pass = true;
    for (const CheckResult& c : rep.checks) all_pass = all_pass && c.pass;
    rep.results["checks_run"] = rep.checks.size();
    rep.results["all_pass"] = all_pass;
    rep.elapsed_ms = timer.ms();
    return rep;
}

std::string render_text(const Report& r) {
    std::ostringstream os;
    os << "inputs:";
    for (const auto& [key, value] : r.inputs.items()) {
        os << " " << key << "=";
        if (value.is_string())
            os << value.get<std::string>();
        else
            os << value.dump();
    }
    os << "\n";
    if (!r.results.empty()) {
        os << "results:\n";
        for (const auto& [key, value] : r.results.items())
            os << "  " << key << " = " << (value.is_string() ? value.get<std::string>() : value.dump())
               << "\n";
    }
    if (!r.checks.empty()) {
        os << "checks:\n";
        for (const CheckResult& c : r.checks)
            os << "  [" << (c.pass ? "PASS" : c.budget_exceeded ? "BUDGET" : "FAIL") << "] "
               << c.name << (c.details.empty() ? "" : ": " + c.details) << "\n";
    }
    os << "timing: " << r.elapsed_ms << " ms\n";
    return os.str();
}

std::string render_json(const Report& r) {
    ordered_json j;
    j["inputs"] = r.inputs;
    j["results"] = r.results;
    j["checks"] = ordered_json::array();
    for (const CheckResult& c : r.checks)
        j["checks"].push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"budget_exceeded", c.budget_exceeded},
                               {"details", c.details}});
    j["timing"] = {{"ms", r.elapsed_ms}};
    return j.dump(2) + "\n";
}

namespace {
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}
}  // namespace

std::string render_csv(const Report& r, const std::string& command) {
    std::ostringstream os;
    if (command == "verify") {
        os << "check,pass,budget_exceeded,details\n";
        for (const CheckResult& c : r.checks)
            os << c.name << "," << (c.pass ? "true" : "false") << ","
               << (c.budget_exceeded ? "true" : "false") << "," << csv_escape(c.details)
               << "\n";
        return os.str();
    }
    if (command == "tables") {
        os << "table,degree,twist,mult\n";
        for (const char* key : {"weights", "weights_literal"}) {
            if (!r.results.contains(key)) continue;
            for (const auto& e : r.results[key]["entries"])
                os << key << "," << e["degree"].dump() << "," << e["twist"].dump() << ","
                   << e["mult"].dump() << "\n";
        }
        return os.str();
    }
    if (command == "motive") {
        os << "exponent,coefficient\n";
        if (r.results.contains("coefficients"))
            for (const auto& [exp, coeff] : r.results["coefficients"].items())
                os << exp << ","
                   << (coeff.is_string() ? coeff.get<std::string>() : coeff.dump()) << "\n";
        return os.str();
    }
    // count
    os << "space,method,formula,brute,agree\n";
    auto cell = [&](const char* key) {
        if (!r.results.contains(key)) return std::string();
        const auto& v = r.results[key];
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    os << r.inputs["space"].get<std::string>() << "," << r.inputs["method"].get<std::string>()
       << "," << cell("formula") << "," << cell("brute") << "," << cell("agree") << "\n";
    return os.str();
}

}  // namespace ratmaps::cli
