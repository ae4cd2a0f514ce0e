#pragma once

// Proves a strategy's guarantee by exhaustive search over the opponent's
// replies: one side's moves are forced by the strategy, the free player
// optimizes the final score. Memoized on (position, free-move counter,
// strategy private state).

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>

#include "toiso/game.hpp"
#include "toiso/solver.hpp"
#include "toiso/strategies.hpp"

namespace toiso {

struct BestResponseResult {
    int value = 0;
    std::uint64_t nodes = 0;
};

template <class Strategy>
class BestResponseSearch {
public:
    BestResponseSearch(const Strategy& strategy, Player fixed_side, SolveLimits limits = {})
        : strat_(strategy), fixed_(fixed_side), limits_(limits) {}

    BestResponseResult run(const GameSpec& spec) {
        nodes_ = 0;
        start_ = std::chrono::steady_clock::now();
        int v = search(GameState::start(spec), strat_.initial(spec));
        return {v, nodes_};
    }

private:
    using State = typename Strategy::State;

    int search(const GameState& gs, const State& st) {
        if (gs.finished()) return 0;

        std::string key = gs.key();
        st.encode(key);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        if (++nodes_ > limits_.max_nodes)
            throw budget_exceeded("node budget exhausted in best-response search");
        if ((nodes_ & 0xfff) == 0) {
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            if (elapsed > limits_.max_seconds)
                throw budget_exceeded("time budget exhausted in best-response search");
        }

        const Player mover = gs.mover();
        int result;
        if (mover == fixed_) {
            Move m = strat_.choose(gs.pos, st);
            State next = strat_.observe(st, gs.pos, m);
            GameState::Step step = gs.apply(m);
            int delta = mover == Player::Maker ? step.score_delta : 0;
            result = delta + search(step.state, next);
        } else {
            const bool maximize = mover == Player::Maker;
            result = maximize ? std::numeric_limits<int>::min() : std::numeric_limits<int>::max();
            for (const Move& m : legal_moves(gs.pos)) {
                State next = strat_.observe(st, gs.pos, m);
                GameState::Step step = gs.apply(m);
                int delta = mover == Player::Maker ? step.score_delta : 0;
                int v = delta + search(step.state, next);
                result = maximize ? std::max(result, v) : std::min(result, v);
            }
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

    const Strategy& strat_;
    Player fixed_;
    SolveLimits limits_;
    std::unordered_map<std::string, int> memo_;
    std::uint64_t nodes_ = 0;
    std::chrono::steady_clock::time_point start_{};
};

// The free player's optimal achievable score against the fixed strategy.
template <class Strategy>
inline BestResponseResult best_response_value(const GameSpec& spec, const Strategy& strategy,
                                              Player fixed_side, SolveLimits limits = {}) {
    BestResponseSearch<Strategy> s(strategy, fixed_side, limits);
    return s.run(spec);
}

}  // namespace toiso
