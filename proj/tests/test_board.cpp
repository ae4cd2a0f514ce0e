#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <unordered_set>

#include "toiso/board.hpp"
#include "toiso/explicit_board.hpp"
#include "toiso/game.hpp"
#include "toiso/verify.hpp"

using namespace toiso;

namespace {

std::vector<Component> parts_of(const Split& s) { return s.parts(); }

}  // namespace

TEST_CASE("maker splits") {
    SECTION("consuming a both-flanked single cell scores twice") {
        Split s = split_maker(Kind::H, 1, 1);
        CHECK(s.score_delta == 2);
        CHECK(parts_of(s).empty());
    }
    SECTION("consuming an open single cell scores nothing") {
        Split s = split_maker(Kind::F, 1, 1);
        CHECK(s.score_delta == 0);
        CHECK(parts_of(s).empty());
    }
    SECTION("an interior claim in an open run leaves two one-flank parts") {
        Split s = split_maker(Kind::F, 7, 3);
        CHECK(s.score_delta == 0);
        CHECK(parts_of(s) == std::vector<Component>{{Kind::G, 2}, {Kind::G, 4}});
    }
    SECTION("claiming the flanked cell of a one-flank run scores one") {
        Split s = split_maker(Kind::G, 5, 1);
        CHECK(s.score_delta == 1);
        CHECK(parts_of(s) == std::vector<Component>{{Kind::G, 4}});
    }
    SECTION("the far end of a one-flank run does not score") {
        Split s = split_maker(Kind::G, 5, 5);
        CHECK(s.score_delta == 0);
        CHECK(parts_of(s) == std::vector<Component>{{Kind::H, 4}});
    }
    SECTION("out of range is rejected") {
        CHECK_THROWS_AS(split_maker(Kind::F, 3, 0), std::invalid_argument);
        CHECK_THROWS_AS(split_maker(Kind::F, 3, 4), std::invalid_argument);
    }
}

TEST_CASE("breaker splits") {
    CHECK(parts_of(split_breaker(Kind::H, 5, 2)) ==
          std::vector<Component>{{Kind::G, 1}, {Kind::G, 3}});
    CHECK(parts_of(split_breaker(Kind::H, 5, 3)) ==
          std::vector<Component>{{Kind::G, 2}, {Kind::G, 2}});
    CHECK(parts_of(split_breaker(Kind::F, 2, 1)) == std::vector<Component>{{Kind::F, 1}});
    CHECK(split_breaker(Kind::H, 5, 2).score_delta == 0);
    CHECK_THROWS_AS(split_breaker(Kind::G, 2, 3), std::invalid_argument);
}

TEST_CASE("split structure over all kinds and lengths") {
    for (int kind_i = 0; kind_i < 3; ++kind_i) {
        Kind kind = static_cast<Kind>(kind_i);
        for (int len = 1; len <= 40; ++len) {
            for (int j = 1; j <= len; ++j) {
                Split m = split_maker(kind, len, j);
                Split b = split_breaker(kind, len, j);
                // Length conservation: the claimed cell is the only loss.
                REQUIRE(m.left.len + m.right.len == len - 1);
                REQUIRE(b.left.len + b.right.len == len - 1);
                // Breaker never creates a both-flanked part; Maker's parts
                // follow the fixed kind table.
                for (const Component& c : b.parts()) REQUIRE(c.kind != Kind::H);
                switch (kind) {
                    case Kind::F:
                        REQUIRE(m.left.kind == Kind::G);
                        REQUIRE(m.right.kind == Kind::G);
                        REQUIRE(b.left.kind == Kind::F);
                        REQUIRE(b.right.kind == Kind::F);
                        REQUIRE(m.score_delta == 0);
                        break;
                    case Kind::G:
                        REQUIRE(m.left.kind == Kind::H);
                        REQUIRE(m.right.kind == Kind::G);
                        REQUIRE(b.left.kind == Kind::G);
                        REQUIRE(b.right.kind == Kind::F);
                        REQUIRE(m.score_delta == (j == 1 ? 1 : 0));
                        break;
                    case Kind::H:
                        REQUIRE(m.left.kind == Kind::H);
                        REQUIRE(m.right.kind == Kind::H);
                        REQUIRE(b.left.kind == Kind::G);
                        REQUIRE(b.right.kind == Kind::G);
                        REQUIRE(m.score_delta == (j == 1 ? 1 : 0) + (j == len ? 1 : 0));
                        break;
                }
            }
        }
    }
}

TEST_CASE("apply_move") {
    SECTION("consuming the both-flanked single cell") {
        Position p({{Kind::H, 1}}, Player::Maker);
        Applied a = apply_move(p, {0, 1});
        CHECK(a.score_delta == 2);
        CHECK(a.position.terminal());
        CHECK(a.position.to_move() == Player::Breaker);
    }
    SECTION("breaker cuts an open run") {
        Position p({{Kind::F, 3}}, Player::Breaker);
        Applied a = apply_move(p, {0, 2});
        CHECK(a.score_delta == 0);
        CHECK(a.position == Position({{Kind::F, 1}, {Kind::F, 1}}, Player::Maker));
    }
    SECTION("maker shrinks a both-flanked run from the end") {
        Position p({{Kind::H, 2}}, Player::Maker);
        Applied a = apply_move(p, {0, 1});
        CHECK(a.score_delta == 1);
        CHECK(a.position == Position({{Kind::H, 1}}, Player::Breaker));
    }
    SECTION("illegal moves are rejected") {
        Position p({{Kind::F, 3}}, Player::Maker);
        CHECK_THROWS_AS(apply_move(p, {1, 1}), std::invalid_argument);
        CHECK_THROWS_AS(apply_move(p, {0, 4}), std::invalid_argument);
        CHECK_THROWS_AS(apply_move(p, {0, 0}), std::invalid_argument);
    }
}

TEST_CASE("legal_moves") {
    CHECK(legal_moves(Position({}, Player::Maker)).empty());
    CHECK(legal_moves(Position({{Kind::F, 2}}, Player::Maker)) ==
          std::vector<Move>{{0, 1}, {0, 2}});
    CHECK(legal_moves(Position({{Kind::F, 1}, {Kind::G, 1}}, Player::Breaker)).size() == 2);
    // Deterministic order: canonical component order, ascending cells.
    Position p({{Kind::H, 2}, {Kind::F, 1}}, Player::Maker);
    CHECK(legal_moves(p) == std::vector<Move>{{0, 1}, {1, 1}, {1, 2}});
}

TEST_CASE("game origins") {
    SECTION("cycle absorbs the opening stone") {
        CHECK(game_from_cycle(5).initial == Position({{Kind::F, 4}}, Player::Maker));
        CHECK(game_from_cycle(3).initial == Position({{Kind::F, 2}}, Player::Maker));
        CHECK(game_from_cycle(10).initial == Position({{Kind::F, 9}}, Player::Maker));
        CHECK_THROWS_AS(game_from_cycle(2), std::invalid_argument);
    }
    SECTION("path is a both-flanked run, breaker first") {
        CHECK(game_from_path(1).initial == Position({{Kind::H, 1}}, Player::Breaker));
        CHECK(game_from_path(2).initial == Position({{Kind::H, 2}}, Player::Breaker));
        CHECK(game_from_path(7).initial == Position({{Kind::H, 7}}, Player::Breaker));
        CHECK_THROWS_AS(game_from_path(0), std::invalid_argument);
    }
    SECTION("delayed game validation") {
        GameSpec g = game_delayed(5, 2);
        CHECK(g.pending_free_breaker_moves == 2);
        CHECK(g.initial.to_move() == Player::Breaker);
        CHECK(game_delayed(5, 0).initial.to_move() == Player::Maker);
        CHECK_THROWS_AS(game_delayed(5, 6), std::invalid_argument);
        CHECK_THROWS_AS(game_delayed(0, 0), std::invalid_argument);
    }
}

TEST_CASE("free breaker moves keep the mover until spent") {
    GameState gs = GameState::start(game_delayed(4, 2));
    CHECK(gs.mover() == Player::Breaker);
    auto s1 = gs.apply({0, 2});
    CHECK(s1.state.mover() == Player::Breaker);
    CHECK(s1.state.free_left == 1);
    auto s2 = s1.state.apply({0, 1});
    CHECK(s2.state.mover() == Player::Maker);
    CHECK(s2.state.free_left == 0);
}

TEST_CASE("census counts") {
    SECTION("single both-flanked cell") {
        StructureCounts sc = structure_counts(Position({{Kind::H, 1}}, Player::Maker));
        CHECK(sc.n5 == 1);
        CHECK(sc.epsilon == 1);
        CHECK(sc.y == 1);
        CHECK(sc.z == 1);
        CHECK(sc.g == 2);
    }
    SECTION("both-flanked pair") {
        StructureCounts sc = structure_counts(Position({{Kind::H, 2}}, Player::Maker));
        CHECK(sc.n4 == 1);
        CHECK(sc.y == 2);
        CHECK(sc.z == -1);
        CHECK(sc.g == 1);
    }
    SECTION("open run of eight") {
        StructureCounts sc = structure_counts(Position({{Kind::F, 8}}, Player::Maker));
        CHECK(sc.n1 == 1);
        CHECK(sc.y == 2);
        CHECK(sc.z == 0);
        CHECK(sc.g == 2);
    }
    SECTION("empty position") {
        StructureCounts sc = structure_counts(Position({}, Player::Maker));
        CHECK(sc.y == 0);
        CHECK(sc.z == 0);
        CHECK(sc.g == 0);
    }
}

TEST_CASE("both z forms agree on every position up to total 14") {
    long count = 0;
    enumerate_positions(14, [&](const std::vector<Component>& comps) {
        Position p(comps, Player::Maker);
        StructureCounts sc = structure_counts(p);
        ++count;
        if (sc.z != structure_z_alt(sc)) {
            CAPTURE(to_string(p));
            REQUIRE(sc.z == structure_z_alt(sc));
        }
    });
    CHECK(count > 50'000);
}

TEST_CASE("closed forms") {
    CHECK(formula_values(9).u_cycle == 2);
    CHECK(formula_values(1).u_path == 0);
    CHECK(formula_values(5, 1).alpha_lower == 0);
    CHECK(formula_values(2).u_path == 1);
    CHECK(formula_values(8).alpha_exact == 2);
    CHECK(formula_values(1, 3).alpha_lower == 0);  // clamped, not truncated toward zero
    CHECK(floor_div(-6, 5) == -2);
    CHECK(floor_div(-1, 2) == -1);
    CHECK(floor_div(4, 5) == 0);
}

TEST_CASE("canonical equality is insertion-order independent") {
    Position a({{Kind::H, 2}, {Kind::F, 3}, {Kind::G, 1}}, Player::Maker);
    Position b({{Kind::G, 1}, {Kind::H, 2}, {Kind::F, 3}}, Player::Maker);
    Position c({{Kind::F, 3}, {Kind::G, 1}, {Kind::H, 2}}, Player::Maker);
    CHECK(a == b);
    CHECK(b == c);
    CHECK(a.key() == b.key());
    CHECK(std::hash<Position>{}(a) == std::hash<Position>{}(c));
    CHECK(a != a.with_to_move(Player::Breaker));
    CHECK(a.key() != a.with_to_move(Player::Breaker).key());
    // Zero-length components are dropped at creation.
    CHECK(Position({{Kind::F, 0}, {Kind::G, 2}}, Player::Maker) ==
          Position({{Kind::G, 2}}, Player::Maker));
}

// Every playout edge of every small position, checked against a raw board:
// the algebra's score delta must equal the count of freshly completed
// adjacent Maker pairs, and the split parts must match what a rescan of the
// board reports. Summed over a playout this is exactly score conservation.
TEST_CASE("transition algebra matches raw adjacency counting up to total 8") {
    long mismatches = 0;
    std::string first_bad;

    enumerate_positions(8, [&](const std::vector<Component>& comps) {
        Position base(comps, Player::Maker);
        ExplicitBoard board = realize(base);
        REQUIRE(board.pair_count() == 0);

        std::unordered_set<std::string> done;
        auto pack = [&](Player tm) {
            std::string s;
            s.reserve(board.cells.size() + 1);
            for (Cell c : board.cells) s.push_back(static_cast<char>(c));
            s.push_back(static_cast<char>(tm));
            return s;
        };

        auto walk = [&](auto&& self, const Position& pos, Player tm) -> void {
            if (!done.insert(pack(tm)).second) return;
            DecomposedBoard dec = decompose_board(board, tm);
            if (!(dec.position == pos)) {
                if (++mismatches == 1)
                    first_bad = "decomposition drift at " + to_string(pos);
                return;
            }
            for (int i = 0; i < board.size(); ++i) {
                if (board.cells[i] != Cell::Empty) continue;
                int raw_gain = tm == Player::Maker ? board.new_pairs_if_maker_claims(i) : 0;
                Move m = *dec.move_at(i);
                Applied a = apply_move(pos, m);
                if (a.score_delta != raw_gain) {
                    if (++mismatches == 1)
                        first_bad = "delta mismatch at " + to_string(pos) + " cell " +
                                    std::to_string(i + 1);
                    continue;
                }
                board.cells[i] = tm == Player::Maker ? Cell::Maker : Cell::Breaker;
                self(self, a.position, opponent(tm));
                board.cells[i] = Cell::Empty;
            }
        };
        walk(walk, base, Player::Maker);
        walk(walk, base.with_to_move(Player::Breaker), Player::Breaker);
    });

    CAPTURE(first_bad);
    CHECK(mismatches == 0);
}

TEST_CASE("complete playouts conserve the score") {
    // A sampled double-check of the edge-level invariant above: random full
    // playouts, comparing accumulated deltas with the final raw pair count.
    SplitMix64 rng{7};
    for (int round = 0; round < 200; ++round) {
        Position p = random_position(rng, 9, rng.below(2) ? Player::Maker : Player::Breaker);
        ExplicitBoard board = realize(p);
        DecomposedBoard dec = decompose_board(board, p.to_move());
        REQUIRE(dec.position == p);
        int acc = 0;
        Position cur = p;
        while (!cur.terminal()) {
            std::vector<int> empties;
            for (int i = 0; i < board.size(); ++i)
                if (board.cells[i] == Cell::Empty) empties.push_back(i);
            int cell = empties[rng.below(empties.size())];
            DecomposedBoard d = decompose_board(board, cur.to_move());
            Applied a = apply_move(cur, *d.move_at(cell));
            acc += a.score_delta;
            board.cells[cell] = cur.to_move() == Player::Maker ? Cell::Maker : Cell::Breaker;
            cur = a.position;
        }
        REQUIRE(acc == board.pair_count());
    }
}

TEST_CASE("seeded generator is deterministic") {
    SplitMix64 a{42}, b{42};
    for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
    SplitMix64 c{42};
    std::uint64_t v = c.below(7);
    CHECK(v < 7);
    CHECK(SplitMix64{42}.below(7) == v);
}
