#pragma once

// Command-line front end: solve positions, regenerate the value tables, run
// the verification suites, play strategy matches and an interactive game.
// Everything is stream-injectable so the commands are testable in-process.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "toiso/explicit_board.hpp"
#include "toiso/match.hpp"
#include "toiso/solver.hpp"
#include "toiso/table.hpp"
#include "toiso/verify.hpp"

namespace toiso::cli {

// Position grammar: comma-separated kind+length tokens, e.g. "F3,G1,H2",
// case-insensitive, whitespace ignored. Canonicalized on parse.
inline Position parse_position_string(const std::string& text, Player to_move) {
    std::vector<Component> comps;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        std::string t;
        for (char c : token)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        if (t.empty()) throw std::invalid_argument("empty component token in '" + text + "'");
        Kind kind = kind_from_letter(t[0]);
        std::string digits = t.substr(1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad component token '" + t + "'");
        long len = std::stol(digits);
        if (len < 1 || len > 1'000'000)
            throw std::invalid_argument("component length out of range in '" + t + "'");
        comps.push_back({kind, static_cast<int>(len)});
    }
    if (comps.empty()) throw std::invalid_argument("position string has no components");
    return Position(std::move(comps), to_move);
}

namespace detail {

struct BoardOpts {
    int cycle = 0;
    int path = 0;
    std::vector<int> delayed;  // N K
    std::string pos;
    std::string to_move = "maker";

    void attach(CLI::App* cmd) {
        cmd->add_option("--cycle", cycle, "ring board with N vertices")->envname("TOISO_CYCLE");
        cmd->add_option("--path", path, "path board with N vertices")->envname("TOISO_PATH");
        cmd->add_option("--delayed", delayed,
                        "open n-run where the minimizer places K free stones first")
            ->expected(2);
        cmd->add_option("--pos", pos, "raw position, e.g. \"F3,G1,H2\"")->envname("TOISO_POS");
        cmd->add_option("--to-move", to_move, "side to move for --pos (maker|breaker)")
            ->check(CLI::IsMember({"maker", "breaker"}))
            ->capture_default_str()
            ->envname("TOISO_TO_MOVE");
    }

    GameSpec build() const {
        int selectors = (cycle > 0) + (path > 0) + (!delayed.empty()) + (!pos.empty());
        if (selectors != 1)
            throw CLI::ValidationError(
                "exactly one of --cycle, --path, --delayed, --pos is required");
        if (cycle > 0) return game_from_cycle(cycle);
        if (path > 0) return game_from_path(path);
        if (!delayed.empty()) return game_delayed(delayed[0], delayed[1]);
        Player tm = to_move == "maker" ? Player::Maker : Player::Breaker;
        return game_from_position(parse_position_string(pos, tm));
    }
};

struct OutputOpts {
    std::string format = "text";
    std::string out_path;

    void attach(CLI::App* cmd, bool allow_text = true) {
        auto choices = allow_text ? CLI::IsMember({"text", "csv", "json"})
                                  : CLI::IsMember({"csv", "json"});
        cmd->add_option("--format", format, "output format")
            ->check(choices)
            ->capture_default_str()
            ->envname("TOISO_FORMAT");
        cmd->add_option("--out", out_path, "write output to a file instead of stdout")
            ->envname("TOISO_OUT");
    }

    // Returns the stream to write to; keeps the file alive in `file`.
    std::ostream& select(std::ostream& stdout_stream, std::ofstream& file) const {
        if (out_path.empty()) return stdout_stream;
        file.open(out_path, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open output file: " + out_path);
        return file;
    }
};

struct BudgetOpts {
    std::uint64_t max_nodes = SolveLimits{}.max_nodes;
    double max_seconds = SolveLimits{}.max_seconds;
    std::string cache_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-nodes", max_nodes, "node budget before the solver gives up")
            ->capture_default_str()
            ->envname("TOISO_MAX_NODES");
        cmd->add_option("--max-seconds", max_seconds, "time budget before the solver gives up")
            ->capture_default_str()
            ->envname("TOISO_MAX_SECONDS");
        cmd->add_option("--cache", cache_path, "transposition cache file to load/update")
            ->envname("TOISO_CACHE");
    }

    SolveLimits limits() const { return {max_nodes, max_seconds}; }

    Solver make_solver() const {
        Solver s(limits());
        if (!cache_path.empty() && std::filesystem::exists(cache_path)) s.load_cache(cache_path);
        return s;
    }

    void persist(const Solver& s) const {
        if (!cache_path.empty()) s.save_cache(cache_path);
    }
};

inline std::string move_text(const Position& p, const Move& m) {
    return toiso::to_string(p.components().at(m.component)) + ":" + std::to_string(m.cell);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// solve

inline int cmd_solve(const detail::BoardOpts& board, const detail::OutputOpts& output,
                     const detail::BudgetOpts& budget, std::ostream& stdout_stream) {
    GameSpec spec = board.build();
    Solver solver = budget.make_solver();
    SolveResult res = solver.solve_spec(spec);
    budget.persist(solver);

    std::ofstream file;
    std::ostream& out = output.select(stdout_stream, file);
    std::string principal =
        res.principal_move ? detail::move_text(spec.initial, *res.principal_move) : std::string("-");
    if (output.format == "json") {
        nlohmann::json doc;
        doc["game"] = toiso::to_string(spec);
        doc["value"] = res.value;
        doc["principal"] = res.principal_move ? nlohmann::json(principal) : nlohmann::json();
        doc["nodes"] = res.nodes_expanded;
        out << doc.dump(2) << "\n";
    } else if (output.format == "csv") {
        out << "game,value,principal,nodes\n"
            << toiso::to_string(spec) << ',' << res.value << ',' << principal << ','
            << res.nodes_expanded << "\n";
    } else {
        out << "game:      " << toiso::to_string(spec) << "\n"
            << "value:     " << res.value << "\n"
            << "principal: " << principal << "\n"
            << "nodes:     " << res.nodes_expanded << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// table

inline int cmd_table(int n_from, int n_to, bool formula_only, const detail::OutputOpts& output,
                     const detail::BudgetOpts& budget, std::ostream& stdout_stream) {
    std::vector<TableRow> rows;
    if (formula_only) {
        rows = build_table(n_from, n_to, true, nullptr);
    } else {
        Solver solver = budget.make_solver();
        rows = build_table(n_from, n_to, false, &solver);
        budget.persist(solver);
    }

    std::ofstream file;
    std::ostream& out = output.select(stdout_stream, file);
    if (output.format == "json")
        write_table_json(out, rows);
    else
        write_table_csv(out, rows);

    for (const TableRow& r : rows)
        if ((r.cycle_match && !*r.cycle_match) || (r.path_match && !*r.path_match)) return 1;
    return 0;
}

// ---------------------------------------------------------------------------
// verify

inline int cmd_verify(const VerifyConfig& cfg, const detail::OutputOpts& output,
                      std::ostream& stdout_stream) {
    std::ofstream file;
    std::ostream& out = output.select(stdout_stream, file);

    bool all = true;
    if (output.format == "json") {
        std::vector<SuiteResult> results = run_verification(cfg, nullptr);
        nlohmann::json doc = nlohmann::json::array();
        for (const SuiteResult& r : results) {
            all = all && r.passed;
            doc.push_back({{"suite", r.name},
                           {"scale", r.scale},
                           {"passed", r.passed},
                           {"detail", r.detail}});
        }
        out << doc.dump(2) << "\n";
    } else {
        std::vector<SuiteResult> results = run_verification(cfg, &out);
        for (const SuiteResult& r : results) all = all && r.passed;
        out << (all ? "all suites passed" : "FAILURES above") << "\n";
    }
    return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// match

inline int cmd_match(const detail::BoardOpts& board, const std::string& maker_id,
                     const std::string& breaker_id, std::uint64_t seed,
                     const detail::OutputOpts& output, const detail::BudgetOpts& budget,
                     std::ostream& stdout_stream) {
    GameSpec spec = board.build();
    auto maker = make_agent(maker_id, Player::Maker, seed, budget.limits());
    auto breaker = make_agent(breaker_id, Player::Breaker, seed + 0x9e3779b9ULL, budget.limits());
    MatchRecord rec = play_match(spec, *maker, *breaker);
    if (replay_score(spec, rec.transcript) != rec.final_score)
        throw std::logic_error("transcript does not replay to its recorded score");

    std::ofstream file;
    std::ostream& out = output.select(stdout_stream, file);
    if (output.format == "json") {
        nlohmann::json doc;
        doc["game"] = toiso::to_string(spec);
        doc["maker"] = rec.maker_id;
        doc["breaker"] = rec.breaker_id;
        doc["moves"] = nlohmann::json::array();
        for (const MoveRecord& m : rec.transcript)
            doc["moves"].push_back({{"mover", player_name(m.mover)},
                                    {"component", toiso::to_string(m.component)},
                                    {"cell", m.cell},
                                    {"delta", m.delta}});
        doc["score"] = rec.final_score;
        doc["reference"] = {{"u_cycle", rec.reference.u_cycle}, {"u_path", rec.reference.u_path}};
        out << doc.dump(2) << "\n";
    } else if (output.format == "csv") {
        out << "move,mover,component,cell,delta\n";
        int i = 0;
        for (const MoveRecord& m : rec.transcript)
            out << ++i << ',' << player_name(m.mover) << ',' << toiso::to_string(m.component)
                << ',' << m.cell << ',' << m.delta << "\n";
        out << "# score," << rec.final_score << "\n";
    } else {
        out << "game: " << toiso::to_string(spec) << "  (" << rec.maker_id << " vs "
            << rec.breaker_id << ")\n";
        int i = 0;
        for (const MoveRecord& m : rec.transcript) {
            out << "  " << ++i << ". " << player_name(m.mover) << ' ' << toiso::to_string(m.component)
                << ':' << m.cell;
            if (m.delta > 0) out << "  +" << m.delta;
            out << "\n";
        }
        out << "score: " << rec.final_score;
        if (spec.origin == GameSpec::Origin::Cycle)
            out << "  (closed form " << rec.reference.u_cycle << ")";
        if (spec.origin == GameSpec::Origin::Path)
            out << "  (closed form " << rec.reference.u_path << ")";
        out << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// play

namespace detail {

inline void render_board(std::ostream& out, const ExplicitBoard& b) {
    out << "  ";
    for (int i = 1; i <= b.size(); ++i) out << (i % 10) << ' ';
    out << "\n";
    out << (b.flank_left ? "[ " : "  ");
    for (Cell c : b.cells) out << (c == Cell::Empty ? '.' : (c == Cell::Maker ? 'M' : 'B')) << ' ';
    out << (b.flank_right ? "]" : " ");
    if (b.topology == ExplicitBoard::Topology::Cycle) out << " (ring: last cell touches first)";
    out << "\n";
}

inline ExplicitBoard play_board(const GameSpec& spec) {
    ExplicitBoard b;
    switch (spec.origin) {
        case GameSpec::Origin::Cycle:
            b.topology = ExplicitBoard::Topology::Cycle;
            b.cells.assign(spec.n, Cell::Empty);
            break;
        case GameSpec::Origin::Path:
            b.cells.assign(spec.n, Cell::Empty);
            b.flank_left = b.flank_right = true;
            break;
        case GameSpec::Origin::Delayed:
            b.cells.assign(spec.n, Cell::Empty);
            break;
        case GameSpec::Origin::Raw:
            b = realize(spec.initial);
            break;
    }
    return b;
}

// Reads a cell index or a quit request; loops on malformed input.
inline std::optional<int> prompt_cell(std::istream& in, std::ostream& out,
                                      const ExplicitBoard& board, const char* who) {
    for (;;) {
        out << who << " to move; cell 1-" << board.size() << " or 'quit': " << std::flush;
        std::string line;
        if (!std::getline(in, line)) return std::nullopt;
        std::string t;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        if (t == "quit" || t == "q") return std::nullopt;
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
            out << "enter a cell number or 'quit'\n";
            continue;
        }
        int cell = std::stoi(t);
        if (cell < 1 || cell > board.size()) {
            out << "cell out of range\n";
            continue;
        }
        if (board.cells[cell - 1] != Cell::Empty) {
            out << "cell " << cell << " is already claimed\n";
            continue;
        }
        return cell;
    }
}

}  // namespace detail

inline int cmd_play(const detail::BoardOpts& board_opts, const std::string& human_side,
                    const std::string& engine_id, std::uint64_t seed,
                    const detail::OutputOpts& output, const detail::BudgetOpts& budget,
                    std::istream& in, std::ostream& out) {
    GameSpec spec = board_opts.build();
    Player human = human_side == "breaker" ? Player::Breaker : Player::Maker;
    std::unique_ptr<Agent> engine = make_agent(engine_id, opponent(human), seed, budget.limits());
    engine->reset(spec);

    ExplicitBoard board = detail::play_board(spec);
    nlohmann::json moves = nlohmann::json::array();
    int score = 0;
    bool quit = false;

    auto flush_transcript = [&]() {
        if (output.out_path.empty()) return;
        nlohmann::json doc;
        doc["game"] = toiso::to_string(spec);
        doc["human"] = player_name(human);
        doc["engine"] = engine->id();
        doc["moves"] = moves;
        doc["score"] = score;
        doc["completed"] = !quit;
        std::ofstream f(output.out_path, std::ios::binary | std::ios::trunc);
        f << doc.dump(2) << "\n";
    };

    auto record = [&](Player mover, int cell, int delta) {
        moves.push_back({{"mover", player_name(mover)}, {"cell", cell}, {"delta", delta}});
    };

    // The ring's opening stone is not part of the canonical game (the rest
    // of the board is one open run either way), so handle it directly.
    if (spec.origin == GameSpec::Origin::Cycle) {
        detail::render_board(out, board);
        if (human == Player::Breaker) {
            std::optional<int> cell = detail::prompt_cell(in, out, board, "you (breaker)");
            if (!cell) {
                quit = true;
                flush_transcript();
                out << "game abandoned\n";
                return 0;
            }
            board.cells[*cell - 1] = Cell::Breaker;
            record(Player::Breaker, *cell, 0);
        } else {
            board.cells[spec.n - 1] = Cell::Breaker;
            record(Player::Breaker, spec.n, 0);
            out << "engine (breaker) claims cell " << spec.n << "\n";
        }
    }

    GameState gs = GameState::start(spec);
    while (!gs.finished() && !quit) {
        detail::render_board(out, board);
        Player mover = gs.mover();
        DecomposedBoard dec = decompose_board(board, mover);
        if (!(dec.position == gs.pos))
            throw std::logic_error("board and game state fell out of step");

        Move move;
        int cell;
        if (mover == human) {
            const char* who = mover == Player::Maker ? "you (maker)" : "you (breaker)";
            std::optional<int> picked = detail::prompt_cell(in, out, board, who);
            if (!picked) {
                quit = true;
                break;
            }
            cell = *picked;
            move = *dec.move_at(cell - 1);
        } else {
            move = engine->choose(gs);
            cell = dec.cell_of(move) + 1;
            out << "engine (" << player_name(mover) << ") claims cell " << cell << "\n";
        }

        engine->observe(gs, move);
        GameState::Step step = gs.apply(move);
        board.cells[cell - 1] = mover == Player::Maker ? Cell::Maker : Cell::Breaker;
        score += step.score_delta;
        if (step.score_delta > 0) out << "score +" << step.score_delta << " -> " << score << "\n";
        record(mover, cell, step.score_delta);
        gs = std::move(step.state);
    }

    flush_transcript();
    if (quit) {
        out << "game abandoned\n";
        return 0;
    }
    detail::render_board(out, board);
    out << "final score: " << score << "\n";
    if (spec.origin == GameSpec::Origin::Cycle)
        out << "closed form for this board: " << formula_values(spec.n).u_cycle << "\n";
    if (spec.origin == GameSpec::Origin::Path)
        out << "closed form for this board: " << formula_values(spec.n).u_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// entry point

inline int run(const std::vector<std::string>& args, std::istream& in = std::cin,
               std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"exact solver, strategies and verification harness for the "
                 "adjacent-pair claiming game on cycles and paths"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve one board exactly");
    detail::BoardOpts solve_board;
    detail::OutputOpts solve_out;
    detail::BudgetOpts solve_budget;
    solve_board.attach(solve);
    solve_out.attach(solve);
    solve_budget.attach(solve);

    // table
    auto* table = app.add_subcommand("table", "solver values vs closed forms over a range");
    int n_from = 3, n_to = 21;
    bool formula_only = false;
    table->add_option("--n-from", n_from, "first board size")->capture_default_str()
        ->envname("TOISO_N_FROM");
    table->add_option("--n-to", n_to, "last board size")->capture_default_str()
        ->envname("TOISO_N_TO");
    table->add_flag("--formula-only", formula_only, "skip the solver columns")
        ->envname("TOISO_FORMULA_ONLY");
    detail::OutputOpts table_out;
    table_out.format = "csv";
    detail::BudgetOpts table_budget;
    table_out.attach(table, /*allow_text=*/false);
    table_budget.attach(table);

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    VerifyConfig vcfg;
    verify->add_option("--seed", vcfg.seed, "seed for the sampled suites")->capture_default_str()
        ->envname("TOISO_SEED");
    verify->add_option("--census-samples", vcfg.census_samples,
                       "random positions for the census bound")
        ->capture_default_str()
        ->envname("TOISO_CENSUS_SAMPLES");
    verify->add_option("--census-total-max", vcfg.census_total_max,
                       "total length cap for sampled positions")
        ->capture_default_str()
        ->envname("TOISO_CENSUS_TOTAL_MAX");
    verify->add_option("--oracle-open-max", vcfg.oracle_f_max,
                       "largest open run for the oracle walk")
        ->capture_default_str()
        ->envname("TOISO_ORACLE_OPEN_MAX");
    verify->add_option("--oracle-flanked-max", vcfg.oracle_h_max,
                       "largest flanked board for the oracle walk")
        ->capture_default_str()
        ->envname("TOISO_ORACLE_FLANKED_MAX");
    verify->add_option("--sandwich-max", vcfg.sandwich_n_max, "largest board in the sandwich")
        ->capture_default_str()
        ->envname("TOISO_SANDWICH_MAX");
    verify->add_option("--cycle-max", vcfg.cycle_n_max, "largest cycle checked")
        ->capture_default_str()
        ->envname("TOISO_CYCLE_MAX");
    verify->add_option("--path-max", vcfg.path_n_max, "largest path checked")
        ->capture_default_str()
        ->envname("TOISO_PATH_MAX");
    verify->add_option("--inject-fault", vcfg.inject_fault,
                       "sabotage the named suite (harness self-test)");
    detail::OutputOpts verify_out;
    detail::BudgetOpts verify_budget;
    verify_out.attach(verify);
    verify_budget.attach(verify);

    // match
    auto* match = app.add_subcommand("match", "play one strategy against another");
    detail::BoardOpts match_board;
    std::string maker_id = "optimal", breaker_id = "optimal";
    std::uint64_t match_seed = 1;
    match_board.attach(match);
    match->add_option("--maker", maker_id, "maker agent id (block|endpoint|greedy|random|optimal)")->capture_default_str()
        ->envname("TOISO_MAKER");
    match->add_option("--breaker", breaker_id,
                      "breaker agent id (response|greedy|random|optimal)")->capture_default_str()
        ->envname("TOISO_BREAKER");
    match->add_option("--seed", match_seed, "seed for random agents")->capture_default_str()
        ->envname("TOISO_SEED");
    detail::OutputOpts match_out;
    detail::BudgetOpts match_budget;
    match_out.attach(match);
    match_budget.attach(match);

    // play
    auto* play = app.add_subcommand("play", "interactive game against the engine");
    detail::BoardOpts play_board;
    std::string human_side = "maker", engine_id = "optimal";
    std::uint64_t play_seed = 1;
    play_board.attach(play);
    play->add_option("--human", human_side, "side you play (maker|breaker)")
        ->check(CLI::IsMember({"maker", "breaker"}))
        ->capture_default_str()
        ->envname("TOISO_HUMAN");
    play->add_option("--engine", engine_id, "engine agent id (see match --help for the list)")->capture_default_str()
        ->envname("TOISO_ENGINE");
    play->add_option("--seed", play_seed, "seed for random agents")->capture_default_str()
        ->envname("TOISO_SEED");
    detail::OutputOpts play_out;
    detail::BudgetOpts play_budget;
    play_out.attach(play);
    play_budget.attach(play);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_board, solve_out, solve_budget, out);
        if (table->parsed())
            return cmd_table(n_from, n_to, formula_only, table_out, table_budget, out);
        if (verify->parsed()) {
            vcfg.limits = verify_budget.limits();
            return cmd_verify(vcfg, verify_out, out);
        }
        if (match->parsed())
            return cmd_match(match_board, maker_id, breaker_id, match_seed, match_out,
                             match_budget, out);
        if (play->parsed())
            return cmd_play(play_board, human_side, engine_id, play_seed, play_out, play_budget,
                            in, out);
    } catch (const budget_exceeded& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const cache_error& e) {
        err << "cache error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

inline int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args);
}

}  // namespace toiso::cli
