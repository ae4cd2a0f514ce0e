#pragma once

// Raw cell-array boards. These exist for two reasons: the brute-force
// oracle, which plays minimax directly on cells with no component
// decomposition, and the interactive front end, which shows humans a real
// board. decompose_board() is the bridge from raw cells to the canonical
// component model.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "toiso/board.hpp"

namespace toiso {

enum class Cell : std::uint8_t { Empty = 0, Maker = 1, Breaker = 2 };

struct ExplicitBoard {
    enum class Topology { Path, Cycle };

    Topology topology = Topology::Path;
    std::vector<Cell> cells;
    // Virtual Maker-owned sentinels beyond the two path ends.
    bool flank_left = false;
    bool flank_right = false;

    int size() const { return static_cast<int>(cells.size()); }

    void validate() const {
        if (cells.empty()) throw std::invalid_argument("board must have at least one cell");
        if (topology == Topology::Cycle && (flank_left || flank_right))
            throw std::invalid_argument("cycle boards cannot carry virtual flanks");
    }

    bool filled() const {
        for (Cell c : cells)
            if (c == Cell::Empty) return false;
        return true;
    }

    // True when the (possibly virtual) neighbour on the given side of cell i
    // is Maker-owned.
    bool maker_beside(int i, int dir) const {
        int j = i + dir;
        if (topology == Topology::Cycle) {
            int n = size();
            j = (j % n + n) % n;
            return cells[j] == Cell::Maker;
        }
        if (j < 0) return flank_left;
        if (j >= size()) return flank_right;
        return cells[j] == Cell::Maker;
    }

    // Pairs the claim of cell i by Maker would complete right now.
    int new_pairs_if_maker_claims(int i) const {
        if (topology == Topology::Cycle && size() == 1) return 0;
        int p = maker_beside(i, -1) ? 1 : 0;
        if (!(topology == Topology::Cycle && size() == 2))
            p += maker_beside(i, +1) ? 1 : 0;  // a 2-cycle has a single shared pair
        return p;
    }

    // Current count of adjacent Maker-Maker pairs, virtual flanks included.
    int pair_count() const {
        int n = size(), p = 0;
        for (int i = 0; i + 1 < n; ++i)
            if (cells[i] == Cell::Maker && cells[i + 1] == Cell::Maker) ++p;
        if (topology == Topology::Cycle) {
            if (n >= 3 && cells[n - 1] == Cell::Maker && cells[0] == Cell::Maker) ++p;
        } else {
            if (flank_left && cells[0] == Cell::Maker) ++p;
            if (flank_right && cells[n - 1] == Cell::Maker) ++p;
        }
        return p;
    }
};

inline std::string to_string(const ExplicitBoard& b) {
    std::string s;
    if (b.flank_left) s += '[';
    for (Cell c : b.cells) s += c == Cell::Empty ? '.' : (c == Cell::Maker ? 'M' : 'B');
    if (b.flank_right) s += ']';
    if (b.topology == ExplicitBoard::Topology::Cycle) s += " (cycle)";
    return s;
}

// A board broken into its runs of empty cells, with the mapping between
// canonical component slots and explicit cell indices. slot_cells[i] lists
// the cells of the i-th canonical component in local order (for a G run the
// flanked end comes first).
struct DecomposedBoard {
    Position position;
    std::vector<std::vector<int>> slot_cells;

    // Canonical move -> explicit cell index.
    int cell_of(const Move& m) const { return slot_cells.at(m.component).at(m.cell - 1); }

    // Explicit cell index -> canonical move, if the cell is empty.
    std::optional<Move> move_at(int cell) const {
        for (int s = 0; s < static_cast<int>(slot_cells.size()); ++s)
            for (int j = 0; j < static_cast<int>(slot_cells[s].size()); ++j)
                if (slot_cells[s][j] == cell) return Move{s, j + 1};
        return std::nullopt;
    }
};

// Splits the board into maximal runs of empty cells and classifies each by
// its neighbours. A fully empty cycle has no claimed cell to anchor runs and
// is rejected; callers handle that one opening move themselves.
inline DecomposedBoard decompose_board(const ExplicitBoard& b, Player to_move) {
    b.validate();
    int n = b.size();

    struct Run {
        Component comp;
        std::vector<int> cells;
    };
    std::vector<Run> runs;

    auto close_run = [&](std::vector<int>&& cells, bool left_flanked, bool right_flanked) {
        if (cells.empty()) return;
        Run r;
        int len = static_cast<int>(cells.size());
        if (left_flanked && right_flanked) {
            r.comp = {Kind::H, len};
        } else if (left_flanked || right_flanked) {
            r.comp = {Kind::G, len};
            if (right_flanked) std::reverse(cells.begin(), cells.end());  // flanked end first
        } else {
            r.comp = {Kind::F, len};
        }
        r.cells = std::move(cells);
        runs.push_back(std::move(r));
    };

    if (b.topology == ExplicitBoard::Topology::Path) {
        int i = 0;
        while (i < n) {
            if (b.cells[i] != Cell::Empty) {
                ++i;
                continue;
            }
            int j = i;
            while (j < n && b.cells[j] == Cell::Empty) ++j;
            bool lf = b.maker_beside(i, -1);
            bool rf = b.maker_beside(j - 1, +1);
            std::vector<int> cs;
            for (int c = i; c < j; ++c) cs.push_back(c);
            close_run(std::move(cs), lf, rf);
            i = j;
        }
    } else {
        int anchor = -1;
        for (int i = 0; i < n; ++i)
            if (b.cells[i] != Cell::Empty) {
                anchor = i;
                break;
            }
        if (anchor < 0)
            throw std::invalid_argument("cannot decompose a fully empty cycle");
        std::vector<int> cs;
        for (int off = 1; off <= n; ++off) {
            int i = (anchor + off) % n;
            if (b.cells[i] == Cell::Empty) {
                cs.push_back(i);
            } else if (!cs.empty()) {
                bool lf = b.maker_beside(cs.front(), -1);
                bool rf = b.maker_beside(cs.back(), +1);
                close_run(std::move(cs), lf, rf);
                cs.clear();
            }
        }
    }

    std::stable_sort(runs.begin(), runs.end(),
                     [](const Run& a, const Run& b2) { return a.comp < b2.comp; });

    DecomposedBoard out;
    std::vector<Component> comps;
    for (Run& r : runs) {
        comps.push_back(r.comp);
        out.slot_cells.push_back(std::move(r.cells));
    }
    out.position = Position(std::move(comps), to_move);
    return out;
}

// Builds a path board whose empty runs decompose exactly to the given
// position. Flanks are realized with pre-claimed Maker cells and neutral
// walls with Breaker cells; consecutive identical walls are shared so no
// Maker-Maker pair exists up front.
inline ExplicitBoard realize(const Position& p) {
    ExplicitBoard b;
    b.topology = ExplicitBoard::Topology::Path;
    Cell pending = Cell::Empty;  // wall owed by the previous component, if any
    bool first = true;
    for (const Component& c : p.components()) {
        Cell lw = c.kind == Kind::F ? Cell::Breaker : Cell::Maker;
        Cell rw = c.kind == Kind::H ? Cell::Maker : Cell::Breaker;
        if (first) {
            if (lw == Cell::Maker) b.cells.push_back(lw);  // Breaker walls at a path end are redundant
            first = false;
        } else {
            if (pending == lw && lw == Cell::Maker) {
                b.cells.push_back(Cell::Maker);  // shared wall between two flanked runs
            } else if (pending == lw && lw == Cell::Breaker) {
                b.cells.push_back(Cell::Breaker);
            } else {
                b.cells.push_back(pending);
                b.cells.push_back(lw);
            }
        }
        for (int i = 0; i < c.len; ++i) b.cells.push_back(Cell::Empty);
        pending = rw;
    }
    if (!first && pending == Cell::Maker) b.cells.push_back(pending);
    if (b.cells.empty()) b.cells.push_back(Cell::Breaker);  // terminal position: a dead board
    return b;
}

class oracle_cap_exceeded : public std::runtime_error {
public:
    explicit oracle_cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Plain minimax over raw cell states. No component decomposition, no move
// symmetry pruning; memoization is on the raw packed cell array only. The
// value is the number of adjacent Maker pairs still to come under optimal
// play from the given partial state.
class BruteForce {
public:
    explicit BruteForce(ExplicitBoard base, int cap = kDefaultCap) : board_(std::move(base)) {
        board_.validate();
        if (cap > 32)  // the packed state key holds 39 base-3 cells; stay clear of it
            throw std::invalid_argument("oracle cap above 32 is not supported");
        if (board_.size() > cap)
            throw oracle_cap_exceeded("oracle refuses boards larger than " + std::to_string(cap) +
                                      " cells (got " + std::to_string(board_.size()) + ")");
    }

    int value(Player to_move) { return value_at(board_.cells, to_move); }

    // Shares the memo across queries on sub-states of the same board shape.
    int value_at(const std::vector<Cell>& cells, Player to_move) {
        if (static_cast<int>(cells.size()) != board_.size())
            throw std::invalid_argument("state size does not match the oracle board");
        ExplicitBoard s = board_;
        s.cells = cells;
        return search(s, to_move);
    }

    static constexpr int kDefaultCap = 14;

private:
    std::uint64_t pack(const std::vector<Cell>& cells, Player to_move) const {
        std::uint64_t k = static_cast<std::uint64_t>(to_move);
        for (Cell c : cells) k = k * 3 + static_cast<std::uint64_t>(c) + 1;
        return k;
    }

    int search(ExplicitBoard& s, Player to_move) {
        std::uint64_t key = pack(s.cells, to_move);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        int best = -1;
        for (int i = 0; i < s.size(); ++i) {
            if (s.cells[i] != Cell::Empty) continue;
            int gain = 0;
            if (to_move == Player::Maker) {
                gain = s.new_pairs_if_maker_claims(i);
                s.cells[i] = Cell::Maker;
            } else {
                s.cells[i] = Cell::Breaker;
            }
            int v = gain + search(s, opponent(to_move));
            s.cells[i] = Cell::Empty;
            if (best < 0) {
                best = v;
            } else {
                best = to_move == Player::Maker ? std::max(best, v) : std::min(best, v);
            }
        }
        if (best < 0) best = 0;  // board full: nothing left to score
        memo_[key] = best;
        return best;
    }

    ExplicitBoard board_;
    std::unordered_map<std::uint64_t, int> memo_;
};

inline int brute_force_explicit(const ExplicitBoard& b, Player to_move,
                                int cap = BruteForce::kDefaultCap) {
    BruteForce bf(b, cap);
    return bf.value(to_move);
}

}  // namespace toiso
