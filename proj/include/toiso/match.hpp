#pragma once

// Strategy-vs-strategy playouts: a type-erased agent interface over the
// value-typed strategies (plus a solver-backed agent), the match driver and
// transcript replay.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "toiso/best_response.hpp"
#include "toiso/game.hpp"
#include "toiso/solver.hpp"
#include "toiso/strategies.hpp"

namespace toiso {

class Agent {
public:
    virtual ~Agent() = default;
    virtual std::string id() const = 0;
    virtual void reset(const GameSpec& spec) = 0;
    virtual Move choose(const GameState& gs) = 0;
    virtual void observe(const GameState& before, const Move& m) = 0;
};

template <class Strategy>
class StrategyAgent : public Agent {
public:
    StrategyAgent(Strategy s, std::string id) : strat_(std::move(s)), id_(std::move(id)) {}

    std::string id() const override { return id_; }
    void reset(const GameSpec& spec) override { state_ = strat_.initial(spec); }
    Move choose(const GameState& gs) override { return strat_.choose(gs.pos, state_); }
    void observe(const GameState& before, const Move& m) override {
        state_ = strat_.observe(state_, before.pos, m);
    }

private:
    Strategy strat_;
    std::string id_;
    typename Strategy::State state_{};
};

// Plays the solver's principal move.
class OptimalAgent : public Agent {
public:
    explicit OptimalAgent(SolveLimits limits = {}) : solver_(limits) {}

    std::string id() const override { return "optimal"; }
    void reset(const GameSpec&) override {}
    Move choose(const GameState& gs) override {
        SolveResult r = solver_.solve_state(gs);
        if (!r.principal_move) throw std::logic_error("no principal move in a live game");
        return *r.principal_move;
    }
    void observe(const GameState&, const Move&) override {}

private:
    Solver solver_;
};

// Known agent ids: block (Maker), endpoint (Maker), response (Breaker),
// greedy, random, optimal.
inline std::unique_ptr<Agent> make_agent(const std::string& id, Player side,
                                         std::uint64_t seed = 1, SolveLimits limits = {}) {
    if (id == "block") {
        if (side != Player::Maker) throw std::invalid_argument("'block' is a Maker strategy");
        return std::make_unique<StrategyAgent<BlockMaker>>(BlockMaker{}, id);
    }
    if (id == "endpoint") {
        if (side != Player::Maker) throw std::invalid_argument("'endpoint' is a Maker strategy");
        return std::make_unique<StrategyAgent<EndpointMaker>>(EndpointMaker{}, id);
    }
    if (id == "response") {
        if (side != Player::Breaker) throw std::invalid_argument("'response' is a Breaker strategy");
        return std::make_unique<StrategyAgent<TableBreaker>>(TableBreaker{}, id);
    }
    if (id == "greedy") {
        if (side == Player::Maker)
            return std::make_unique<StrategyAgent<GreedyMaker>>(GreedyMaker{}, id);
        return std::make_unique<StrategyAgent<GreedyBreaker>>(GreedyBreaker{}, id);
    }
    if (id == "random") {
        RandomStrategy s(seed);
        s.bind_side(side);
        return std::make_unique<StrategyAgent<RandomStrategy>>(s, id);
    }
    if (id == "optimal") return std::make_unique<OptimalAgent>(limits);
    throw std::invalid_argument("unknown strategy id '" + id + "'");
}

inline const std::vector<std::string>& agent_ids() {
    static const std::vector<std::string> ids = {"block", "endpoint", "response",
                                                 "greedy", "random", "optimal"};
    return ids;
}

struct MoveRecord {
    Player mover = Player::Maker;
    Component component;  // as it stood before the move
    int cell = 0;
    int delta = 0;
};

struct MatchRecord {
    GameSpec spec;
    std::string maker_id;
    std::string breaker_id;
    std::vector<MoveRecord> transcript;
    int final_score = 0;
    FormulaValues reference;  // formula columns for the spec's n (n of the raw total otherwise)
};

inline MatchRecord play_match(const GameSpec& spec, Agent& maker, Agent& breaker) {
    MatchRecord rec;
    rec.spec = spec;
    rec.maker_id = maker.id();
    rec.breaker_id = breaker.id();
    rec.reference = formula_values(std::max(1, spec.n > 0 ? spec.n : spec.initial.total_len()),
                                   spec.k);

    maker.reset(spec);
    breaker.reset(spec);

    GameState gs = GameState::start(spec);
    int score = 0;
    while (!gs.finished()) {
        Agent& mover = gs.mover() == Player::Maker ? maker : breaker;
        Move m = mover.choose(gs);
        const auto& comps = gs.pos.components();
        if (m.component < 0 || m.component >= static_cast<int>(comps.size()) || m.cell < 1 ||
            m.cell > comps[m.component].len)
            throw std::logic_error("strategy '" + mover.id() + "' produced an illegal move");
        MoveRecord mr;
        mr.mover = gs.mover();
        mr.component = comps[m.component];
        mr.cell = m.cell;

        maker.observe(gs, m);
        breaker.observe(gs, m);
        GameState::Step step = gs.apply(m);
        mr.delta = step.score_delta;
        score += step.score_delta;
        rec.transcript.push_back(mr);
        gs = std::move(step.state);
    }
    rec.final_score = score;
    return rec;
}

// Re-applies a transcript from the spec's start; throws if any recorded move
// is illegal, returns the accumulated score.
inline int replay_score(const GameSpec& spec, const std::vector<MoveRecord>& transcript) {
    GameState gs = GameState::start(spec);
    int score = 0;
    for (const MoveRecord& mr : transcript) {
        if (gs.finished()) throw std::invalid_argument("transcript continues past the end");
        if (gs.mover() != mr.mover) throw std::invalid_argument("transcript mover out of turn");
        int slot = detail::find_slot(gs.pos, mr.component);
        if (slot < 0) throw std::invalid_argument("transcript component not on the board");
        GameState::Step step = gs.apply({slot, mr.cell});
        if (step.score_delta != mr.delta)
            throw std::invalid_argument("transcript delta does not replay");
        score += step.score_delta;
        gs = std::move(step.state);
    }
    return score;
}

}  // namespace toiso
