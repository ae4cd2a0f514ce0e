#pragma once

// The verification harness: each suite checks one guarantee of the engine
// at a configurable scale and reports pass/fail. The acceptance run and the
// CLI 'verify' command are both thin wrappers over run_verification().

#include <functional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "toiso/best_response.hpp"
#include "toiso/explicit_board.hpp"
#include "toiso/match.hpp"
#include "toiso/solver.hpp"
#include "toiso/table.hpp"

namespace toiso {

// All canonical component multisets with total length 1..max_total, emitted
// in nondecreasing component order.
template <class Fn>
inline void enumerate_positions(int max_total, Fn&& fn) {
    std::vector<Component> stack;
    auto rec = [&](auto&& self, int remaining, Component floor_comp) -> void {
        if (!stack.empty()) fn(static_cast<const std::vector<Component>&>(stack));
        if (remaining == 0) return;
        for (int k = 0; k < 3; ++k) {
            for (int len = 1; len <= remaining; ++len) {
                Component c{static_cast<Kind>(k), len};
                if (c < floor_comp) continue;
                stack.push_back(c);
                self(self, remaining - len, c);
                stack.pop_back();
            }
        }
    };
    rec(rec, max_total, Component{Kind::F, 1});
}

inline Position random_position(SplitMix64& rng, int max_total, Player to_move) {
    int budget = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_total)));
    std::vector<Component> comps;
    while (budget > 0) {
        int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(budget)));
        comps.push_back({static_cast<Kind>(rng.below(3)), len});
        budget -= len;
    }
    return Position(std::move(comps), to_move);
}

struct SuiteResult {
    std::string name;
    std::string scale;
    bool passed = false;
    std::string detail;  // first failure, or a short summary when green
};

struct VerifyConfig {
    int cycle_n_max = 21;          // exact cycle values 3..n
    int path_n_max = 21;           // exact path values 1..n
    int oracle_f_max = 12;         // open-run boards, Maker first
    int oracle_h_max = 10;         // flanked boards, Breaker first
    int delayed_n_max = 18;        // delayed-game bound
    int delayed_k_max = 3;
    int census_samples = 500;      // random positions for the census bound
    int census_total_max = 14;
    int zform_total_max = 14;      // exhaustive z-form agreement
    int sandwich_n_max = 16;       // strategy sandwich 3..n
    int breaker_f_max = 20;        // breaker guarantee on open runs
    int breaker_h_max = 18;        // breaker guarantee on flanked boards
    int block_n_max = 18;          // block-maker guarantee
    int block_k_max = 2;
    int endpoint_n_max = 18;       // endpoint-maker guarantee
    int response_len_max = 100;    // reply-table sweeps
    std::uint64_t seed = 1;
    SolveLimits limits{};
    std::string inject_fault;      // name of a suite to sabotage (self-test hook)
};

namespace verify_detail {

class Check {
public:
    explicit Check(bool sabotage) : sabotage_(sabotage) {}

    // Record the first failing expectation; stays green otherwise.
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (sabotage_) ok = checks_ != 1 && ok;  // injected fault trips the first expectation
        if (!ok && detail_.empty()) detail_ = what;
    }

    bool passed() const { return detail_.empty(); }
    long checks() const { return checks_; }
    std::string detail(const std::string& fallback) const {
        return detail_.empty() ? fallback : detail_;
    }

private:
    bool sabotage_;
    long checks_ = 0;
    std::string detail_;
};

inline std::string eq_msg(const std::string& what, long long got, long long want) {
    return what + ": got " + std::to_string(got) + ", want " + std::to_string(want);
}

inline std::string le_msg(const std::string& what, long long got, long long cap) {
    return what + ": got " + std::to_string(got) + " > " + std::to_string(cap);
}

inline std::string ge_msg(const std::string& what, long long got, long long low) {
    return what + ": got " + std::to_string(got) + " < " + std::to_string(low);
}

// Walk every reachable raw state of the board, alternating from first_mover,
// and compare the canonical solver against the raw-cell oracle at each new
// canonical position.
inline void oracle_walk(const ExplicitBoard& start, Player first_mover, Solver& solver,
                        Check& check) {
    BruteForce oracle(start);
    std::unordered_set<std::uint64_t> seen_states;
    std::unordered_set<std::string> seen_positions;

    ExplicitBoard board = start;
    auto pack = [&](Player tm) {
        std::uint64_t k = static_cast<std::uint64_t>(tm);
        for (Cell c : board.cells) k = k * 3 + static_cast<std::uint64_t>(c) + 1;
        return k;
    };

    auto walk = [&](auto&& self, Player tm) -> void {
        if (!seen_states.insert(pack(tm)).second) return;
        DecomposedBoard dec = decompose_board(board, tm);
        if (seen_positions.insert(dec.position.key()).second && !dec.position.terminal()) {
            int canonical = solver.solve(dec.position).value;
            int raw = oracle.value_at(board.cells, tm);
            check.expect(canonical == raw,
                         eq_msg("solver vs oracle at " + toiso::to_string(dec.position), canonical, raw));
            if (!check.passed()) return;
        }
        for (int i = 0; i < board.size(); ++i) {
            if (board.cells[i] != Cell::Empty) continue;
            board.cells[i] = tm == Player::Maker ? Cell::Maker : Cell::Breaker;
            self(self, opponent(tm));
            board.cells[i] = Cell::Empty;
            if (!check.passed()) return;
        }
    };
    walk(walk, first_mover);
}

}  // namespace verify_detail

using SuiteFn = std::function<SuiteResult(const VerifyConfig&)>;

inline SuiteResult suite_cycle_exactness(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "cycle-exactness");
    Solver solver(cfg.limits);
    for (int n = 3; n <= cfg.cycle_n_max; ++n) {
        int got = solver.solve_cycle(n).value;
        int want = formula_values(n).u_cycle;
        check.expect(got == want, verify_detail::eq_msg("cycle n=" + std::to_string(n), got, want));
    }
    return {"cycle-exactness", "n=3.." + std::to_string(cfg.cycle_n_max), check.passed(),
            check.detail(std::to_string(check.checks()) + " values match the closed form")};
}

inline SuiteResult suite_path_exactness(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "path-exactness");
    Solver solver(cfg.limits);
    for (int n = 1; n <= cfg.path_n_max; ++n) {
        int got = solver.solve_path(n).value;
        int want = formula_values(n).u_path;
        check.expect(got == want, verify_detail::eq_msg("path n=" + std::to_string(n), got, want));
    }
    return {"path-exactness", "n=1.." + std::to_string(cfg.path_n_max), check.passed(),
            check.detail(std::to_string(check.checks()) + " values match the closed form")};
}

inline SuiteResult suite_oracle_equivalence(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "oracle-equivalence");
    Solver solver(cfg.limits);
    for (int n = 1; n <= cfg.oracle_f_max && check.passed(); ++n) {
        ExplicitBoard b;
        b.cells.assign(n, Cell::Empty);
        verify_detail::oracle_walk(b, Player::Maker, solver, check);
    }
    for (int n = 1; n <= cfg.oracle_h_max && check.passed(); ++n) {
        ExplicitBoard b;
        b.cells.assign(n, Cell::Empty);
        b.flank_left = b.flank_right = true;
        verify_detail::oracle_walk(b, Player::Breaker, solver, check);
    }
    return {"oracle-equivalence",
            "open<=" + std::to_string(cfg.oracle_f_max) + " flanked<=" + std::to_string(cfg.oracle_h_max),
            check.passed(),
            check.detail(std::to_string(check.checks()) + " reachable positions agree with the raw oracle")};
}

inline SuiteResult suite_delayed_bound(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "delayed-bound");
    Solver solver(cfg.limits);
    for (int n = 1; n <= cfg.delayed_n_max; ++n) {
        for (int k = 0; k <= cfg.delayed_k_max && k <= n; ++k) {
            int got = solver.solve_delayed(n, k).value;
            int low = floor_div(n - 3 * k + 2, 5);
            check.expect(got >= low, verify_detail::ge_msg("delayed(" + std::to_string(n) + "," +
                                                               std::to_string(k) + ")",
                                                           got, low));
            if (k == 0) {
                int want = formula_values(n).alpha_exact;
                check.expect(got == want,
                             verify_detail::eq_msg("delayed(" + std::to_string(n) + ",0)", got, want));
            }
        }
    }
    return {"delayed-bound",
            "n<=" + std::to_string(cfg.delayed_n_max) + " k<=" + std::to_string(cfg.delayed_k_max),
            check.passed(), check.detail("bound holds, exact at k=0")};
}

inline SuiteResult suite_census_bound(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "census-bound");
    Solver solver(cfg.limits);
    SplitMix64 rng{cfg.seed};
    for (int i = 0; i < cfg.census_samples; ++i) {
        Position p = random_position(rng, cfg.census_total_max, Player::Maker);
        StructureCounts sc = structure_counts(p);
        check.expect(sc.z == structure_z_alt(sc),
                     "z forms disagree at " + toiso::to_string(p));
        int got = solver.solve(p).value;
        check.expect(got <= sc.g,
                     verify_detail::le_msg("census bound at " + toiso::to_string(p), got, sc.g));
    }
    return {"census-bound",
            std::to_string(cfg.census_samples) + " samples, total<=" +
                std::to_string(cfg.census_total_max) + ", seed=" + std::to_string(cfg.seed),
            check.passed(), check.detail("solve <= g on every sample, z forms agree")};
}

inline SuiteResult suite_zform_agreement(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "zform-agreement");
    enumerate_positions(cfg.zform_total_max, [&](const std::vector<Component>& comps) {
        Position p(comps, Player::Maker);
        StructureCounts sc = structure_counts(p);
        check.expect(sc.z == structure_z_alt(sc), "z forms disagree at " + toiso::to_string(p));
    });
    return {"zform-agreement", "all positions, total<=" + std::to_string(cfg.zform_total_max),
            check.passed(),
            check.detail(std::to_string(check.checks()) + " positions, both z forms identical")};
}

inline SuiteResult suite_strategy_sandwich(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "strategy-sandwich");
    Solver solver(cfg.limits);
    TableBreaker breaker;
    BlockMaker block;
    EndpointMaker endpoint;
    for (int n = 3; n <= cfg.sandwich_n_max && check.passed(); ++n) {
        FormulaValues f = formula_values(n);
        {
            GameSpec spec = game_from_cycle(n);
            int upper = best_response_value(spec, breaker, Player::Breaker, cfg.limits).value;
            int lower = best_response_value(spec, block, Player::Maker, cfg.limits).value;
            int exact = solver.solve_spec(spec).value;
            std::string at = "cycle n=" + std::to_string(n);
            check.expect(upper <= f.u_cycle, verify_detail::le_msg(at + " breaker side", upper, f.u_cycle));
            check.expect(lower >= f.u_cycle, verify_detail::ge_msg(at + " maker side", lower, f.u_cycle));
            check.expect(exact == f.u_cycle, verify_detail::eq_msg(at + " solver", exact, f.u_cycle));
        }
        {
            GameSpec spec = game_from_path(n);
            int upper = best_response_value(spec, breaker, Player::Breaker, cfg.limits).value;
            int lower = best_response_value(spec, endpoint, Player::Maker, cfg.limits).value;
            int exact = solver.solve_spec(spec).value;
            std::string at = "path n=" + std::to_string(n);
            check.expect(upper <= f.u_path, verify_detail::le_msg(at + " breaker side", upper, f.u_path));
            check.expect(lower >= f.u_path, verify_detail::ge_msg(at + " maker side", lower, f.u_path));
            check.expect(exact == f.u_path, verify_detail::eq_msg(at + " solver", exact, f.u_path));
        }
    }
    return {"strategy-sandwich", "cycle+path n=3.." + std::to_string(cfg.sandwich_n_max),
            check.passed(),
            check.detail("both strategies pin the solver value on every board")};
}

inline SuiteResult suite_breaker_guarantee(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "breaker-guarantee");
    TableBreaker breaker;
    for (int n = 1; n <= cfg.breaker_f_max && check.passed(); ++n) {
        GameSpec spec = game_from_position(Position({{Kind::F, n}}, Player::Maker));
        int got = best_response_value(spec, breaker, Player::Breaker, cfg.limits).value;
        int cap = formula_values(n).alpha_exact;
        check.expect(got <= cap, verify_detail::le_msg("open run n=" + std::to_string(n), got, cap));
    }
    for (int n = 1; n <= cfg.breaker_h_max && check.passed(); ++n) {
        Position p({{Kind::H, n}}, Player::Maker);
        GameSpec spec = game_from_position(p);
        int got = best_response_value(spec, breaker, Player::Breaker, cfg.limits).value;
        int cap = structure_counts(p).g;
        check.expect(got <= cap,
                     verify_detail::le_msg("flanked run n=" + std::to_string(n), got, cap));
    }
    return {"breaker-guarantee",
            "open<=" + std::to_string(cfg.breaker_f_max) + " flanked<=" + std::to_string(cfg.breaker_h_max),
            check.passed(), check.detail("best response never beats the census bound")};
}

inline SuiteResult suite_block_guarantee(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "block-guarantee");
    BlockMaker block;
    for (int n = 1; n <= cfg.block_n_max && check.passed(); ++n) {
        for (int k = 0; k <= cfg.block_k_max && k <= n; ++k) {
            GameSpec spec = game_delayed(n, k);
            int got = best_response_value(spec, block, Player::Maker, cfg.limits).value;
            int low = floor_div(n - 3 * k + 2, 5);
            check.expect(got >= low, verify_detail::ge_msg("delayed(" + std::to_string(n) + "," +
                                                               std::to_string(k) + ")",
                                                           got, low));
        }
    }
    return {"block-guarantee",
            "n<=" + std::to_string(cfg.block_n_max) + " k<=" + std::to_string(cfg.block_k_max),
            check.passed(), check.detail("block maker meets the delayed-game bound")};
}

inline SuiteResult suite_endpoint_guarantee(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "endpoint-guarantee");
    EndpointMaker endpoint;
    for (int n = 2; n <= cfg.endpoint_n_max && check.passed(); ++n) {
        GameSpec spec = game_from_path(n);
        int got = best_response_value(spec, endpoint, Player::Maker, cfg.limits).value;
        int low = formula_values(n).u_path;
        check.expect(got >= low, verify_detail::ge_msg("path n=" + std::to_string(n), got, low));
    }
    return {"endpoint-guarantee", "path n=2.." + std::to_string(cfg.endpoint_n_max), check.passed(),
            check.detail("endpoint maker meets the path bound")};
}

inline SuiteResult suite_response_table(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "response-table");
    for (int kind_i = 0; kind_i < 3; ++kind_i) {
        Kind kind = static_cast<Kind>(kind_i);
        for (int len = 2; len <= cfg.response_len_max; ++len) {
            for (int j = 1; j <= len; ++j) {
                int r = breaker_first_response(kind, len, j);
                check.expect(r >= 1 && r <= len && (r == j - 1 || r == j + 1),
                             "bad reply " + std::to_string(r) + " for " +
                                 std::string(1, kind_letter(kind)) + std::to_string(len) +
                                 " cell " + std::to_string(j));
            }
        }
    }
    // General-row split congruences (mod 5), re-derived from the raw split
    // sizes rather than through the strategy code.
    auto congruent = [](int v, int r) { return ((v % 5) + 5) % 5 == r; };
    for (int len = 2; len <= cfg.response_len_max; ++len) {
        for (int j = 2; j <= (len + 1) / 2; ++j) {  // open runs: j=1 is the only override
            int r = breaker_first_response(Kind::F, len, j);
            bool ok = true;
            switch (j % 5) {
                case 0: ok = r == j + 1 && congruent(j - 1, 4); break;   // flanked part
                case 1: ok = r == j - 1 && congruent(j - 2, 4); break;   // open part
                case 2: ok = r == j + 1 && congruent(j - 1, 1); break;
                case 3: ok = r == j - 1 && congruent(j - 2, 1); break;
                case 4: ok = r == j - 1 && congruent(j - 2, 2); break;
            }
            check.expect(ok, "open-run row broken at len=" + std::to_string(len) +
                                 " j=" + std::to_string(j));
        }
        for (int j = 3; j <= len - 1; ++j) {  // one-flank runs: j=1,2,len overridden
            int r = breaker_first_response(Kind::G, len, j);
            bool ok = true;
            switch (j % 5) {
                case 0: ok = r == j - 1 && congruent(j - 2, 3); break;   // flank-side part
                case 1: ok = r == j - 1 && congruent(j - 2, 4); break;
                case 2: ok = r == j + 1 && congruent(j - 1, 1); break;   // both-flanked part
                case 3: ok = r == j - 1 && congruent(j - 2, 1); break;
                case 4: ok = r == j + 1 && congruent(j - 1, 3); break;
            }
            check.expect(ok, "one-flank row broken at len=" + std::to_string(len) +
                                 " j=" + std::to_string(j));
        }
        for (int j = 3; j <= (len + 1) / 2; ++j) {  // both-flank runs: j=1,2,(3 of 5) overridden
            if (len == 5 && j == 3) continue;
            int r = breaker_first_response(Kind::H, len, j);
            bool ok = true;
            switch (j % 5) {
                case 0: ok = r == j - 1 && congruent(j - 2, 3); break;   // one-flank part
                case 1: ok = r == j - 1 && congruent(j - 2, 4); break;
                case 2: ok = r == j + 1 && congruent(j - 1, 1); break;   // both-flanked part
                case 3: ok = r == j - 1 && congruent(j - 2, 1); break;
                case 4: ok = r == j + 1 && congruent(j - 1, 3); break;
            }
            check.expect(ok, "both-flank row broken at len=" + std::to_string(len) +
                                 " j=" + std::to_string(j));
        }
    }
    return {"response-table", "len<=" + std::to_string(cfg.response_len_max), check.passed(),
            check.detail("replies legal and row congruences hold")};
}

inline SuiteResult suite_spot_values(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "spot-values");
    Solver solver(cfg.limits);
    auto val = [&](Kind k, int len) {
        return solver.solve(Position({{k, len}}, Player::Maker)).value;
    };
    check.expect(val(Kind::H, 1) == 2, verify_detail::eq_msg("H1 maker", val(Kind::H, 1), 2));
    check.expect(val(Kind::H, 2) == 1, verify_detail::eq_msg("H2 maker", val(Kind::H, 2), 1));
    check.expect(val(Kind::F, 2) == 0, verify_detail::eq_msg("F2 maker", val(Kind::F, 2), 0));
    return {"spot-values", "H1/H2/F2", check.passed(), check.detail("all three prose values hold")};
}

inline SuiteResult suite_asymptotic_proportion(const VerifyConfig& cfg) {
    verify_detail::Check check(cfg.inject_fault == "asymptotic-proportion");
    for (int n : {50, 100}) {
        // The formula column of the value table, |u/n - 1/5| <= 1/100 in
        // exact integer arithmetic: |100*u - 20*n| <= n.
        std::vector<TableRow> rows = build_table(n, n, /*formula_only=*/true, nullptr);
        long long u = rows.at(0).cycle_formula;
        long long diff = 100 * u - 20 * n;
        check.expect(diff <= n && diff >= -n,
                     "proportion off at n=" + std::to_string(n) + ": u=" + std::to_string(u));
    }
    return {"asymptotic-proportion", "n=50,100", check.passed(),
            check.detail("table proportion within 0.01 of 1/5")};
}

inline std::vector<SuiteResult> run_verification(const VerifyConfig& cfg,
                                                 std::ostream* log = nullptr) {
    const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"cycle-exactness", suite_cycle_exactness},
        {"path-exactness", suite_path_exactness},
        {"oracle-equivalence", suite_oracle_equivalence},
        {"delayed-bound", suite_delayed_bound},
        {"census-bound", suite_census_bound},
        {"zform-agreement", suite_zform_agreement},
        {"response-table", suite_response_table},
        {"strategy-sandwich", suite_strategy_sandwich},
        {"breaker-guarantee", suite_breaker_guarantee},
        {"block-guarantee", suite_block_guarantee},
        {"endpoint-guarantee", suite_endpoint_guarantee},
        {"spot-values", suite_spot_values},
        {"asymptotic-proportion", suite_asymptotic_proportion},
    };
    std::vector<SuiteResult> results;
    for (const auto& [name, fn] : suites) {
        SuiteResult r = fn(cfg);
        if (log)
            (*log) << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.scale << "): "
                   << r.detail << "\n";
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace toiso
