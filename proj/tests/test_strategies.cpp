#include <catch2/catch_amalgamated.hpp>

#include "toiso/best_response.hpp"
#include "toiso/match.hpp"
#include "toiso/solver.hpp"
#include "toiso/strategies.hpp"
#include "toiso/verify.hpp"

using namespace toiso;

TEST_CASE("breaker reply table") {
    CHECK(breaker_first_response(Kind::H, 9, 5) == 4);
    CHECK(breaker_first_response(Kind::G, 9, 4) == 5);
    CHECK(breaker_first_response(Kind::H, 5, 3) == 2);
    CHECK(breaker_first_response(Kind::F, 6, 1) == 2);
    // End overrides and mirroring.
    CHECK(breaker_first_response(Kind::H, 7, 1) == 2);
    CHECK(breaker_first_response(Kind::H, 7, 2) == 1);
    CHECK(breaker_first_response(Kind::H, 7, 7) == 6);
    CHECK(breaker_first_response(Kind::G, 6, 6) == 5);
    CHECK(breaker_first_response(Kind::G, 2, 2) == 1);
    CHECK(breaker_first_response(Kind::F, 2, 2) == 1);
    CHECK(breaker_first_response(Kind::F, 6, 4) == 5);  // mirrored row, not the raw one
    CHECK_THROWS_AS(breaker_first_response(Kind::H, 1, 1), std::invalid_argument);

    SECTION("replies are always adjacent, in range and unclaimed") {
        for (int kind_i = 0; kind_i < 3; ++kind_i)
            for (int len = 2; len <= 100; ++len)
                for (int j = 1; j <= len; ++j) {
                    int r = breaker_first_response(static_cast<Kind>(kind_i), len, j);
                    CAPTURE(kind_i, len, j, r);
                    REQUIRE(r >= 1);
                    REQUIRE(r <= len);
                    REQUIRE((r == j - 1 || r == j + 1));
                }
    }
}

TEST_CASE("reply lands in the right split part") {
    // Maker at 3 in an open 7-run leaves G2+G4; the reply at old cell 2 is
    // the flanked head of the left part.
    PartTarget t = response_target(Kind::F, 7, 3, 2);
    CHECK(t.comp == Component{Kind::G, 2});
    CHECK(t.cell == 1);
    // ... and old cell 4 is the head of the right part.
    t = response_target(Kind::F, 7, 3, 4);
    CHECK(t.comp == Component{Kind::G, 4});
    CHECK(t.cell == 1);
    // Both-flanked split keeps natural order on the left part.
    t = response_target(Kind::H, 9, 5, 4);
    CHECK(t.comp == Component{Kind::H, 4});
    CHECK(t.cell == 4);
}

namespace {

// Drives one scripted move through observe() for both sides.
template <class S>
typename S::State step(const S& strat, typename S::State st, GameState& gs, Move m) {
    typename S::State next = strat.observe(st, gs.pos, m);
    gs = gs.apply(m).state;
    return next;
}

}  // namespace

TEST_CASE("a table reply never lets the census bound grow") {
    // For any first claim in a lone component, the scripted reply keeps
    // g(before) >= delta + g(after). Chaining this inequality is what makes
    // the census bound hold, so it is checked far past solver-sized boards.
    for (int kind_i = 0; kind_i < 3; ++kind_i) {
        Kind kind = static_cast<Kind>(kind_i);
        for (int len = 2; len <= 300; ++len) {
            Position before({{kind, len}}, Player::Maker);
            int g_before = structure_counts(before).g;
            for (int j = 1; j <= len; ++j) {
                int r = breaker_first_response(kind, len, j);
                PartTarget t = response_target(kind, len, j, r);
                Applied mid = apply_move(before, {0, j});
                int slot = detail::find_slot(mid.position, t.comp);
                REQUIRE(slot >= 0);
                Applied after = apply_move(mid.position, {slot, t.cell});
                int g_after = structure_counts(after.position).g;
                CAPTURE(kind_i, len, j, r, g_before, g_after, mid.score_delta);
                REQUIRE(g_before >= mid.score_delta + g_after);
            }
        }
    }
}

TEST_CASE("table breaker plays the scripted replies") {
    TableBreaker strat;

    SECTION("pairs off a consumed single both-flanked cell with another") {
        GameSpec spec = game_from_position(
            Position({{Kind::H, 1}, {Kind::H, 1}, {Kind::F, 4}}, Player::Maker));
        auto st = strat.initial(spec);
        GameState gs = GameState::start(spec);
        int h1 = detail::find_slot(gs.pos, {Kind::H, 1});
        st = step(strat, st, gs, {h1, 1});  // Maker consumes one H-run of one
        Move reply = strat.choose(gs.pos, st);
        CHECK(gs.pos.components()[reply.component] == Component{Kind::H, 1});
    }
    SECTION("with only an open run left, cuts two cells from its end") {
        GameSpec spec =
            game_from_position(Position({{Kind::H, 1}, {Kind::F, 7}}, Player::Maker));
        auto st = strat.initial(spec);
        GameState gs = GameState::start(spec);
        int h1 = detail::find_slot(gs.pos, {Kind::H, 1});
        st = step(strat, st, gs, {h1, 1});
        Move reply = strat.choose(gs.pos, st);
        CHECK(gs.pos.components()[reply.component] == Component{Kind::F, 7});
        CHECK(reply.cell == 5);
    }
    SECTION("answers a flanked-head claim next door") {
        GameSpec spec = game_from_position(Position({{Kind::G, 6}}, Player::Maker));
        auto st = strat.initial(spec);
        GameState gs = GameState::start(spec);
        st = step(strat, st, gs, {0, 1});  // Maker claims the scoring head
        Move reply = strat.choose(gs.pos, st);
        // Board is now one G5 (old cells 2..6); the reply is old cell 2.
        CHECK(gs.pos.components()[reply.component] == Component{Kind::G, 5});
        CHECK(reply.cell == 1);
    }
    SECTION("opening move on a flanked board trims an end") {
        GameSpec spec = game_from_path(9);
        auto st = strat.initial(spec);
        Move first = strat.choose(spec.initial, st);
        CHECK(spec.initial.components()[first.component] == Component{Kind::H, 9});
        CHECK(first.cell == 1);
    }
}

TEST_CASE("block maker founds and grows a block") {
    BlockMaker strat;

    SECTION("founds at the third cell of the longest run") {
        GameSpec spec = game_from_position(Position({{Kind::F, 9}}, Player::Maker));
        Move m = strat.choose(spec.initial, strat.initial(spec));
        CHECK(m.cell == 3);
    }
    SECTION("founds in the middle of a 3-run") {
        GameSpec spec =
            game_from_position(Position({{Kind::F, 3}, {Kind::F, 2}}, Player::Maker));
        Move m = strat.choose(spec.initial, strat.initial(spec));
        CHECK(spec.initial.components()[m.component] == Component{Kind::F, 3});
        CHECK(m.cell == 2);
    }
    SECTION("claims anything when only stubs remain") {
        GameSpec spec =
            game_from_position(Position({{Kind::F, 2}, {Kind::F, 1}}, Player::Maker));
        Move m = strat.choose(spec.initial, strat.initial(spec));
        CHECK(m.cell == 1);
    }
    SECTION("extends rightward first, then leftward") {
        GameSpec spec = game_from_position(Position({{Kind::F, 9}}, Player::Maker));
        auto st = strat.initial(spec);
        GameState gs = GameState::start(spec);
        Move m = strat.choose(gs.pos, st);  // found at cell 3 -> G2 + G6
        st = step(strat, st, gs, m);
        // Breaker pokes the middle of the long side (local cell 3 of G6).
        int g6 = detail::find_slot(gs.pos, {Kind::G, 6});
        st = step(strat, st, gs, {g6, 3});
        // Rightward extension: the shrunken right flank G2 is claimed at its
        // head, not the left G2.
        Move ext = strat.choose(gs.pos, st);
        CHECK(gs.pos.components()[ext.component] == Component{Kind::G, 2});
        CHECK(ext.cell == 1);
        st = step(strat, st, gs, ext);
        // Breaker kills the right side completely (claims its head).
        int g1 = detail::find_slot(gs.pos, {Kind::G, 1});
        st = step(strat, st, gs, {g1, 1});
        // Now the left flank is the only live side.
        Move left = strat.choose(gs.pos, st);
        CHECK(gs.pos.components()[left.component] == Component{Kind::G, 2});
        CHECK(left.cell == 1);
    }
}

TEST_CASE("endpoint maker grows end blocks then falls through") {
    EndpointMaker strat;

    SECTION("claims the near end after the opening stone") {
        GameSpec spec = game_from_path(7);
        auto st = strat.initial(spec);
        GameState gs = GameState::start(spec);
        st = step(strat, st, gs, {0, 4});  // Breaker opens in the middle
        Move m = strat.choose(gs.pos, st);
        CHECK(gs.pos.components()[m.component] == Component{Kind::G, 3});
        CHECK(m.cell == 1);
    }
    SECTION("two-cell path: takes the cell left over") {
        GameSpec spec = game_from_path(2);
        auto st = strat.initial(spec);
        GameState gs = GameState::start(spec);
        st = step(strat, st, gs, {0, 1});
        Move m = strat.choose(gs.pos, st);
        Applied a = apply_move(gs.pos, m);
        CHECK(a.score_delta == 1);  // final score 1 on the two-cell board
    }
    SECTION("an opening stone that consumes the whole flanked run falls through") {
        GameSpec spec =
            game_from_position(Position({{Kind::H, 1}, {Kind::F, 5}}, Player::Breaker));
        auto st = strat.initial(spec);
        GameState gs = GameState::start(spec);
        int h1 = detail::find_slot(gs.pos, {Kind::H, 1});
        st = step(strat, st, gs, {h1, 1});  // nothing remains to grow from
        Move m = strat.choose(gs.pos, st);
        CHECK(gs.pos.components()[m.component] == Component{Kind::F, 5});
        CHECK(m.cell == 3);
    }
    SECTION("unexpected opening falls through to the block plan") {
        GameSpec spec =
            game_from_position(Position({{Kind::F, 5}}, Player::Breaker));
        auto st = strat.initial(spec);
        GameState gs = GameState::start(spec);
        st = step(strat, st, gs, {0, 5});  // Breaker, but not on a flanked board
        Move m = strat.choose(gs.pos, st);
        CHECK(gs.pos.components()[m.component] == Component{Kind::F, 4});
        CHECK(m.cell == 3);  // block founding move
    }
}

TEST_CASE("best response bounds from the spec examples") {
    SECTION("fixed breaker on an open 9-run concedes at most 2") {
        GameSpec spec = game_from_position(Position({{Kind::F, 9}}, Player::Maker));
        CHECK(best_response_value(spec, TableBreaker{}, Player::Breaker).value <= 2);
    }
    SECTION("fixed endpoint maker on an 11-path secures at least 3") {
        GameSpec spec = game_from_path(11);
        CHECK(best_response_value(spec, EndpointMaker{}, Player::Maker).value >= 3);
    }
    SECTION("fixed random maker stays within the trivial caps") {
        GameSpec spec = game_from_position(Position({{Kind::F, 9}}, Player::Maker));
        RandomStrategy random(123);
        random.bind_side(Player::Maker);
        int v = best_response_value(spec, random, Player::Maker).value;
        CHECK(v >= 0);
        CHECK(v <= 9);
    }
}

TEST_CASE("strategy guarantees at unit scale") {
    // The verification harness runs these at the full spec scales.
    TableBreaker breaker;
    for (int n = 1; n <= 13; ++n) {
        GameSpec spec = game_from_position(Position({{Kind::F, n}}, Player::Maker));
        int v = best_response_value(spec, breaker, Player::Breaker).value;
        CAPTURE(n, v);
        REQUIRE(v <= formula_values(n).alpha_exact);
    }
    for (int n = 1; n <= 11; ++n) {
        Position p({{Kind::H, n}}, Player::Maker);
        int v = best_response_value(game_from_position(p), breaker, Player::Breaker).value;
        CAPTURE(n, v);
        REQUIRE(v <= structure_counts(p).g);
    }
    BlockMaker block;
    for (int n = 1; n <= 11; ++n)
        for (int k = 0; k <= 2 && k <= n; ++k) {
            int v = best_response_value(game_delayed(n, k), block, Player::Maker).value;
            CAPTURE(n, k, v);
            REQUIRE(v >= floor_div(n - 3 * k + 2, 5));
        }
    EndpointMaker endpoint;
    for (int n = 2; n <= 11; ++n) {
        int v = best_response_value(game_from_path(n), endpoint, Player::Maker).value;
        CAPTURE(n, v);
        REQUIRE(v >= formula_values(n).u_path);
    }
}

TEST_CASE("sandwich pins the solver value at unit scale") {
    Solver solver;
    for (int n = 3; n <= 11; ++n) {
        GameSpec cyc = game_from_cycle(n);
        int upper = best_response_value(cyc, TableBreaker{}, Player::Breaker).value;
        int lower = best_response_value(cyc, BlockMaker{}, Player::Maker).value;
        int exact = solver.solve_spec(cyc).value;
        CAPTURE(n);
        REQUIRE(upper == exact);
        REQUIRE(lower == exact);

        GameSpec path = game_from_path(n);
        upper = best_response_value(path, TableBreaker{}, Player::Breaker).value;
        lower = best_response_value(path, EndpointMaker{}, Player::Maker).value;
        exact = solver.solve_spec(path).value;
        REQUIRE(upper == exact);
        REQUIRE(lower == exact);
    }
}

TEST_CASE("baselines") {
    SECTION("greedy maker grabs the biggest immediate gain") {
        GreedyMaker g;
        Position p({{Kind::H, 1}, {Kind::F, 5}}, Player::Maker);
        Move m = g.choose(p, {});
        CHECK(p.components()[m.component] == Component{Kind::H, 1});
    }
    SECTION("greedy breaker sits next to the last stone, lower cell first") {
        GreedyBreaker g;
        GameSpec spec = game_from_position(Position({{Kind::F, 9}}, Player::Maker));
        auto st = g.initial(spec);
        GameState gs = GameState::start(spec);
        st = step(g, st, gs, {0, 4});  // Maker claims cell 4
        Move m = g.choose(gs.pos, st);
        // Old cell 3 lives in the mirrored left part G3 at its head.
        CHECK(gs.pos.components()[m.component] == Component{Kind::G, 3});
        CHECK(m.cell == 1);
    }
    SECTION("seeded random play is reproducible") {
        GameSpec spec = game_from_cycle(10);
        auto once = [&] {
            auto maker = make_agent("random", Player::Maker, 42);
            auto breaker = make_agent("random", Player::Breaker, 43);
            return play_match(spec, *maker, *breaker);
        };
        MatchRecord a = once(), b = once();
        REQUIRE(a.transcript.size() == b.transcript.size());
        for (std::size_t i = 0; i < a.transcript.size(); ++i) {
            CHECK(a.transcript[i].component == b.transcript[i].component);
            CHECK(a.transcript[i].cell == b.transcript[i].cell);
        }
        CHECK(a.final_score == b.final_score);
    }
}

TEST_CASE("every strategy returns a legal move everywhere it can move") {
    // Totality sweep: fresh states over every single-component position, and
    // full playouts against random opposition on mixed boards.
    auto check_choose = [](auto strat, const GameSpec& spec) {
        auto st = strat.initial(spec);
        Move m = strat.choose(spec.initial, st);
        const auto& comps = spec.initial.components();
        REQUIRE(m.component >= 0);
        REQUIRE(m.component < static_cast<int>(comps.size()));
        REQUIRE(m.cell >= 1);
        REQUIRE(m.cell <= comps[m.component].len);
    };
    for (int kind_i = 0; kind_i < 3; ++kind_i)
        for (int len = 1; len <= 7; ++len) {
            Position maker_pos({{static_cast<Kind>(kind_i), len}}, Player::Maker);
            Position breaker_pos = maker_pos.with_to_move(Player::Breaker);
            check_choose(BlockMaker{}, game_from_position(maker_pos));
            check_choose(EndpointMaker{}, game_from_position(maker_pos));
            check_choose(GreedyMaker{}, game_from_position(maker_pos));
            check_choose(TableBreaker{}, game_from_position(breaker_pos));
            check_choose(GreedyBreaker{}, game_from_position(breaker_pos));
        }

    SplitMix64 rng{99};
    const char* maker_ids[] = {"block", "endpoint", "greedy", "random"};
    const char* breaker_ids[] = {"response", "greedy", "random"};
    for (int round = 0; round < 60; ++round) {
        Position p = random_position(rng, 10, rng.below(2) ? Player::Maker : Player::Breaker);
        GameSpec spec = game_from_position(p);
        auto maker = make_agent(maker_ids[rng.below(4)], Player::Maker, rng.next());
        auto breaker = make_agent(breaker_ids[rng.below(3)], Player::Breaker, rng.next());
        // play_match itself hard-fails on any illegal strategy move.
        MatchRecord rec = play_match(spec, *maker, *breaker);
        CHECK(replay_score(spec, rec.transcript) == rec.final_score);
    }
}

TEST_CASE("head-to-head strategies hit the exact value") {
    // Both constructive strategies fixed against each other: the two
    // guarantees squeeze the playout to the closed form.
    auto maker = make_agent("endpoint", Player::Maker);
    auto breaker = make_agent("response", Player::Breaker);
    MatchRecord rec = play_match(game_from_path(13), *maker, *breaker);
    CHECK(rec.final_score == 3);

    auto block = make_agent("block", Player::Maker);
    auto resp = make_agent("response", Player::Breaker);
    MatchRecord cyc = play_match(game_from_cycle(16), *block, *resp);
    CHECK(cyc.final_score == formula_values(16).u_cycle);
}

TEST_CASE("block maker vs seeded random breaker keeps its guarantee") {
    auto block = make_agent("block", Player::Maker);
    auto rnd = make_agent("random", Player::Breaker, 1);
    MatchRecord rec = play_match(game_from_cycle(10), *block, *rnd);
    CHECK(rec.final_score >= 2);
    CHECK(replay_score(rec.spec, rec.transcript) == rec.final_score);
}

TEST_CASE("agent registry") {
    CHECK_THROWS_AS(make_agent("block", Player::Breaker), std::invalid_argument);
    CHECK_THROWS_AS(make_agent("response", Player::Maker), std::invalid_argument);
    CHECK_THROWS_AS(make_agent("no-such-strategy", Player::Maker), std::invalid_argument);
    CHECK(make_agent("greedy", Player::Maker)->id() == "greedy");
    CHECK(agent_ids().size() == 6);
}

TEST_CASE("optimal agent plays to the solved value") {
    auto maker = make_agent("optimal", Player::Maker);
    auto breaker = make_agent("optimal", Player::Breaker);
    MatchRecord rec = play_match(game_from_path(12), *maker, *breaker);
    CHECK(rec.final_score == formula_values(12).u_path);
    MatchRecord del = play_match(game_delayed(9, 2), *maker, *breaker);
    Solver s;
    CHECK(del.final_score == s.solve_delayed(9, 2).value);
}
