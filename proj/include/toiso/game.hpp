#pragma once

// Game origins and the running cursor that drives a playout, including the
// delayed variant where Breaker places free stones before alternation.

#include <stdexcept>
#include <utility>

#include "toiso/board.hpp"

namespace toiso {

struct GameSpec {
    enum class Origin { Cycle, Path, Delayed, Raw };

    Origin origin = Origin::Raw;
    int n = 0;  // board size for Cycle/Path/Delayed
    int k = 0;  // free Breaker moves for Delayed
    Position initial;
    int pending_free_breaker_moves = 0;
};

// The cycle game's symmetric first Breaker move is absorbed: the rest of the
// game is the single open run of n-1 cells with Maker to move.
inline GameSpec game_from_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle requires n >= 3");
    GameSpec g;
    g.origin = GameSpec::Origin::Cycle;
    g.n = n;
    g.initial = Position({{Kind::F, n - 1}}, Player::Maker);
    return g;
}

// Path of n cells with both ends Maker-flanked (end cells score when
// claimed), Breaker to move first.
inline GameSpec game_from_path(int n) {
    if (n < 1) throw std::invalid_argument("path requires n >= 1");
    GameSpec g;
    g.origin = GameSpec::Origin::Path;
    g.n = n;
    g.initial = Position({{Kind::H, n}}, Player::Breaker);
    return g;
}

// Delayed game: Breaker claims k cells of an open n-run before alternation
// begins with Maker.
inline GameSpec game_delayed(int n, int k) {
    if (n < 1) throw std::invalid_argument("delayed game requires n >= 1");
    if (k < 0 || k > n) throw std::invalid_argument("delayed game requires 0 <= k <= n");
    GameSpec g;
    g.origin = GameSpec::Origin::Delayed;
    g.n = n;
    g.k = k;
    g.initial = Position({{Kind::F, n}}, k > 0 ? Player::Breaker : Player::Maker);
    g.pending_free_breaker_moves = k;
    return g;
}

inline GameSpec game_from_position(Position p) {
    GameSpec g;
    g.origin = GameSpec::Origin::Raw;
    g.initial = std::move(p);
    return g;
}

inline std::string to_string(const GameSpec& g) {
    switch (g.origin) {
        case GameSpec::Origin::Cycle: return "cycle(" + std::to_string(g.n) + ")";
        case GameSpec::Origin::Path: return "path(" + std::to_string(g.n) + ")";
        case GameSpec::Origin::Delayed:
            return "delayed(" + std::to_string(g.n) + "," + std::to_string(g.k) + ")";
        case GameSpec::Origin::Raw: return "pos" + to_string(g.initial);
    }
    return "?";
}

// Position plus the count of outstanding free Breaker moves. While free
// moves remain the mover stays Breaker; alternation starts once they are
// spent.
struct GameState {
    Position pos;
    int free_left = 0;

    static GameState start(const GameSpec& spec) {
        return {spec.initial, spec.pending_free_breaker_moves};
    }

    Player mover() const { return pos.to_move(); }
    bool finished() const { return pos.terminal(); }

    struct Step;
    Step apply(const Move& m) const;

    // Memo key: position bytes plus the free-move counter.
    std::string key() const {
        std::string k = pos.key();
        k.push_back(static_cast<char>(free_left & 0xff));
        k.push_back(static_cast<char>((free_left >> 8) & 0xff));
        return k;
    }
};

struct GameState::Step {
    GameState state;
    int score_delta = 0;
};

inline GameState::Step GameState::apply(const Move& m) const {
    Applied a = apply_move(pos, m);
    GameState next{std::move(a.position), free_left};
    if (free_left > 0) {
        --next.free_left;
        if (next.free_left > 0) next.pos = next.pos.with_to_move(Player::Breaker);
    }
    return {std::move(next), a.score_delta};
}

}  // namespace toiso
