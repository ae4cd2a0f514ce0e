#pragma once

// Constructive strategies for both players and the shared machinery they
// need. Each strategy is a pure value type: choose() picks a move from
// (position, state) and observe() folds any move -- its own or the
// opponent's -- into the state. Drivers call observe for every move played,
// with the position as it was before the move.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toiso/board.hpp"
#include "toiso/game.hpp"

namespace toiso {

// Breaker's reply inside the component where Maker just claimed cell j.
// The reply is always adjacent to j: the general rule keys on j mod 5 per
// kind, with fixed overrides near the ends (and the (3,5) case on H). The
// symmetric kinds are mirrored for j past the midpoint so the rule table
// only ever sees the left half. Requires len >= 2; a consumed single-cell
// component has no in-component reply.
inline int breaker_first_response(Kind kind, int len, int j) {
    detail::check_cell(len, j);
    if (len < 2)
        throw std::invalid_argument("no in-component reply on a single-cell component");

    if (kind == Kind::G) {
        if (j == 1) return 2;
        if (j == 2) return 1;
        if (j == len) return len - 1;
        switch (j % 5) {
            case 0: return j - 1;
            case 1: return j - 1;
            case 2: return j + 1;
            case 3: return j - 1;
            case 4: return j + 1;
        }
    }

    if (j > (len + 1) / 2)  // mirror the symmetric boards
        return len + 1 - breaker_first_response(kind, len, len + 1 - j);

    if (kind == Kind::H) {
        if (j == 1) return 2;
        if (j == 2) return 1;
        if (j == 3 && len == 5) return 2;
        switch (j % 5) {
            case 0: return j - 1;
            case 1: return j - 1;
            case 2: return j + 1;
            case 3: return j - 1;
            case 4: return j + 1;
        }
    } else {  // Kind::F
        if (j == 1) return 2;
        switch (j % 5) {
            case 0: return j + 1;
            case 1: return j - 1;
            case 2: return j + 1;
            case 3: return j - 1;
            case 4: return j - 1;
        }
    }
    throw std::logic_error("unreachable");
}

// Where Breaker's reply cell r lands after Maker's claim of cell j split the
// component: the containing part plus the local cell index inside it.
struct PartTarget {
    Component comp;
    int cell = 0;
};

inline PartTarget response_target(Kind kind, int len, int j, int r) {
    if (r != j - 1 && r != j + 1) throw std::invalid_argument("reply must be adjacent to j");
    Split s = split_maker(kind, len, j);
    if (r == j + 1) {
        // Right parts keep their orientation; old cell j+1 is local cell 1.
        if (s.right.len < 1) throw std::invalid_argument("reply cell beyond the component");
        return {s.right, 1};
    }
    if (s.left.len < 1) throw std::invalid_argument("reply cell below the component");
    // The left part of an F split is mirrored (its flanked end, old j-1,
    // becomes cell 1); H and G left parts keep the natural order.
    return {s.left, kind == Kind::F ? 1 : j - 1};
}

namespace detail {

// First canonical slot holding an equal component; equal slots are
// interchangeable, so the first one is as good as any.
inline int find_slot(const Position& p, const Component& c) {
    const auto& comps = p.components();
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
        if (comps[i] == c) return i;
    return -1;
}

inline int must_find_slot(const Position& p, const Component& c) {
    int s = find_slot(p, c);
    if (s < 0)
        throw std::logic_error("expected component " + toiso::to_string(c) + " in " + toiso::to_string(p));
    return s;
}

inline void encode_opt_component(std::string& out, const std::optional<Component>& c) {
    if (!c) {
        out.push_back('\0');
        return;
    }
    out.push_back(static_cast<char>(1 + static_cast<int>(c->kind)));
    out.push_back(static_cast<char>(c->len & 0xff));
    out.push_back(static_cast<char>((c->len >> 8) & 0xff));
}

// Shared bookkeeping for a component that flanks a growing Maker block.
// Extension claims its cell 1; a Breaker stone at cell 1 kills the flank,
// one deeper at cell c leaves a G(c-1) still touching the block.
inline bool update_flank(std::optional<Component>& flank, Player mover, const Component& hit,
                         int cell) {
    if (!flank || *flank != hit) return false;
    if (mover == Player::Maker) {
        if (cell != 1) return false;
        if (hit.len > 1)
            flank = Component{hit.kind, hit.len - 1};
        else
            flank.reset();
    } else {
        if (cell == 1)
            flank.reset();
        else
            flank = Component{Kind::G, cell - 1};
    }
    return true;
}

}  // namespace detail

// Maker: found a block in the longest run, grow it while either side stays
// open, then re-seed on what is left. The founding cell is the third cell of
// a long run, the middle of a 3-run, and the first cell once only stubs
// remain (the guarantee is already met there).
class BlockMaker {
public:
    static constexpr Player side = Player::Maker;
    static constexpr const char* id = "block";

    struct State {
        std::optional<Component> right;  // part ahead of the founding cell
        std::optional<Component> left;   // part behind it

        void encode(std::string& out) const {
            detail::encode_opt_component(out, right);
            detail::encode_opt_component(out, left);
        }
    };

    State initial(const GameSpec&) const { return {}; }

    Move choose(const Position& p, const State& st) const {
        if (st.right) return {detail::must_find_slot(p, *st.right), 1};
        if (st.left) return {detail::must_find_slot(p, *st.left), 1};
        return seed_move(p);
    }

    State observe(State st, const Position& before, const Move& m) const {
        const Component hit = before.components().at(m.component);
        Player mover = before.to_move();
        if (detail::update_flank(st.right, mover, hit, m.cell)) return st;
        if (detail::update_flank(st.left, mover, hit, m.cell)) return st;
        if (mover == Player::Maker) {
            // Our own founding (or re-founding) claim: the two split parts
            // are the new block's sides.
            Split s = split_maker(hit.kind, hit.len, m.cell);
            st.left = s.left.len > 0 ? std::optional<Component>(s.left) : std::nullopt;
            st.right = s.right.len > 0 ? std::optional<Component>(s.right) : std::nullopt;
        }
        return st;
    }

    static Move seed_move(const Position& p) {
        const auto& comps = p.components();
        if (comps.empty()) throw std::invalid_argument("no move in a terminal position");
        int slot = 0;
        for (int i = 1; i < static_cast<int>(comps.size()); ++i)
            if (comps[i].len > comps[slot].len) slot = i;  // ties: first canonical slot
        int len = comps[slot].len;
        int cell = len >= 4 ? 3 : (len == 3 ? 2 : 1);
        return {slot, cell};
    }
};

// Maker on a both-ends-flanked board with Breaker to move first: grow blocks
// inward from the two ends while possible, then fall through to the block
// strategy for the interior. The fall-through is permanent.
class EndpointMaker {
public:
    static constexpr Player side = Player::Maker;
    static constexpr const char* id = "endpoint";

    struct State {
        bool endpoint = true;   // still in the end-block phase
        bool started = false;   // first opposing move seen
        std::optional<Component> left;   // end run nearer cell 1
        std::optional<Component> right;  // end run nearer cell n
        BlockMaker::State inner;

        void encode(std::string& out) const {
            out.push_back(static_cast<char>((endpoint ? 1 : 0) | (started ? 2 : 0)));
            detail::encode_opt_component(out, left);
            detail::encode_opt_component(out, right);
            inner.encode(out);
        }
    };

    State initial(const GameSpec&) const { return {}; }

    Move choose(const Position& p, const State& st) const {
        if (st.endpoint) {
            if (st.left) return {detail::must_find_slot(p, *st.left), 1};
            if (st.right) return {detail::must_find_slot(p, *st.right), 1};
        }
        return block_.choose(p, st.inner);
    }

    State observe(State st, const Position& before, const Move& m) const {
        if (!st.endpoint) {
            st.inner = block_.observe(st.inner, before, m);
            return st;
        }
        const Component hit = before.components().at(m.component);
        Player mover = before.to_move();

        if (!st.started) {
            st.started = true;
            if (mover == Player::Breaker && hit.kind == Kind::H) {
                // The opening stone cuts the flanked board into the two end
                // runs we will grow from. Each is open only on the inside.
                Split s = split_breaker(hit.kind, hit.len, m.cell);
                st.left = s.left.len > 0 ? std::optional<Component>(s.left) : std::nullopt;
                st.right = s.right.len > 0 ? std::optional<Component>(s.right) : std::nullopt;
                if (!st.left && !st.right) st.endpoint = false;  // nothing left to grow from
                return st;
            }
            // Not the expected opening; abandon the end-block plan.
            st.endpoint = false;
            st.inner = block_.observe(st.inner, before, m);
            return st;
        }

        if (detail::update_flank(st.left, mover, hit, m.cell) ||
            detail::update_flank(st.right, mover, hit, m.cell)) {
            if (!st.left && !st.right) st.endpoint = false;  // both ends walled off
            return st;
        }
        return st;
    }

private:
    BlockMaker block_;
};

// Breaker: answer inside the component Maker just played in; when Maker's
// move consumed a component outright the turn is free and is spent down a
// fixed priority list (pair off single-cell flanked runs first, then trim
// flanked runs, then cut an open run two cells from its end).
class TableBreaker {
public:
    static constexpr Player side = Player::Breaker;
    static constexpr const char* id = "response";

    struct State {
        std::optional<Component> last;  // component Maker hit, before the hit
        int last_cell = 0;

        void encode(std::string& out) const {
            detail::encode_opt_component(out, last);
            out.push_back(static_cast<char>(last_cell & 0xff));
        }
    };

    State initial(const GameSpec&) const { return {}; }

    Move choose(const Position& p, const State& st) const {
        if (st.last && st.last->len >= 2) {
            int r = breaker_first_response(st.last->kind, st.last->len, st.last_cell);
            PartTarget t = response_target(st.last->kind, st.last->len, st.last_cell, r);
            return {detail::must_find_slot(p, t.comp), t.cell};
        }
        return free_move(p);
    }

    State observe(State st, const Position& before, const Move& m) const {
        if (before.to_move() == Player::Maker) {
            st.last = before.components().at(m.component);
            st.last_cell = m.cell;
        } else {
            st.last.reset();
            st.last_cell = 0;
        }
        return st;
    }

    // The free-move priority list. Also serves as Breaker's opening when she
    // moves first (the flanked-board game gives her the first move).
    static Move free_move(const Position& p) {
        const auto& comps = p.components();
        if (comps.empty()) throw std::invalid_argument("no move in a terminal position");
        int slot;
        if ((slot = detail::find_slot(p, {Kind::H, 1})) >= 0) return {slot, 1};
        if ((slot = detail::find_slot(p, {Kind::H, 2})) >= 0) return {slot, 1};
        for (int i = 0; i < static_cast<int>(comps.size()); ++i)
            if (comps[i].kind == Kind::H && comps[i].len >= 3) return {i, 1};
        for (int i = 0; i < static_cast<int>(comps.size()); ++i)
            if (comps[i].kind == Kind::G) return {i, 1};
        for (int i = 0; i < static_cast<int>(comps.size()); ++i)
            if (comps[i].kind == Kind::F && comps[i].len >= 3) return {i, comps[i].len - 2};
        return {0, 1};  // only stubs left; the first is the shortest open run
    }
};

// Uniform choice among the legal moves from a seeded deterministic
// generator. choose() and observe() replay the same draw, so states stay in
// sync without sharing.
class RandomStrategy {
public:
    static constexpr const char* id = "random";

    struct State {
        std::uint64_t rng = 0;

        void encode(std::string& out) const {
            for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((rng >> (8 * i)) & 0xff));
        }
    };

    explicit RandomStrategy(std::uint64_t seed = 1) : seed_(seed) {}

    State initial(const GameSpec&) const { return {seed_}; }

    Move choose(const Position& p, const State& st) const {
        std::vector<Move> ms = legal_moves(p);
        if (ms.empty()) throw std::invalid_argument("no move in a terminal position");
        SplitMix64 g{st.rng};
        return ms[static_cast<std::size_t>(g.below(ms.size()))];
    }

    State observe(State st, const Position& before, const Move&) const {
        if (before.to_move() == own_side_) {
            SplitMix64 g{st.rng};
            g.below(legal_moves(before).size());
            st.rng = g.state;
        }
        return st;
    }

    // Which side consumes draws; set by the agent wrapper.
    void bind_side(Player p) { own_side_ = p; }

private:
    std::uint64_t seed_;
    Player own_side_ = Player::Maker;
};

// Maker baseline: grab the largest immediate score, ties to the first move
// in canonical order.
class GreedyMaker {
public:
    static constexpr Player side = Player::Maker;
    static constexpr const char* id = "greedy";

    struct State {
        void encode(std::string&) const {}
    };

    State initial(const GameSpec&) const { return {}; }

    Move choose(const Position& p, const State&) const {
        std::vector<Move> ms = legal_moves(p);
        if (ms.empty()) throw std::invalid_argument("no move in a terminal position");
        Move best = ms.front();
        int best_delta = -1;
        for (const Move& m : ms) {
            const Component c = p.components()[m.component];
            int d = split_maker(c.kind, c.len, m.cell).score_delta;
            if (d > best_delta) {
                best_delta = d;
                best = m;
            }
        }
        return best;
    }

    State observe(State st, const Position&, const Move&) const { return st; }
};

// Breaker baseline: sit next to Maker's last stone when possible, preferring
// the lower cell; otherwise the first legal move.
class GreedyBreaker {
public:
    static constexpr Player side = Player::Breaker;
    static constexpr const char* id = "greedy";

    struct State {
        std::optional<Component> last;
        int last_cell = 0;

        void encode(std::string& out) const {
            detail::encode_opt_component(out, last);
            out.push_back(static_cast<char>(last_cell & 0xff));
        }
    };

    State initial(const GameSpec&) const { return {}; }

    Move choose(const Position& p, const State& st) const {
        if (st.last && st.last->len >= 2) {
            int j = st.last_cell;
            int r = j >= 2 ? j - 1 : j + 1;  // lower cell wins the tie
            PartTarget t = response_target(st.last->kind, st.last->len, j, r);
            return {detail::must_find_slot(p, t.comp), t.cell};
        }
        std::vector<Move> ms = legal_moves(p);
        if (ms.empty()) throw std::invalid_argument("no move in a terminal position");
        return ms.front();
    }

    State observe(State st, const Position& before, const Move& m) const {
        if (before.to_move() == Player::Maker) {
            st.last = before.components().at(m.component);
            st.last_cell = m.cell;
        } else {
            st.last.reset();
            st.last_cell = 0;
        }
        return st;
    }
};

}  // namespace toiso
