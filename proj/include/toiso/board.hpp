#pragma once

// Core model of the vertex-claiming pair game: component kinds, canonical
// positions, the split transition algebra, census counts and closed-form
// values for cycle and path boards.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toiso {

// Floored division; integer '/' truncates toward zero, which is wrong for
// the negative numerators that show up in the census and bound formulas.
constexpr int floor_div(int a, int b) {
    int q = a / b;
    int r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

enum class Player : std::uint8_t { Maker = 0, Breaker = 1 };

constexpr Player opponent(Player p) {
    return p == Player::Maker ? Player::Breaker : Player::Maker;
}

constexpr const char* player_name(Player p) {
    return p == Player::Maker ? "maker" : "breaker";
}

// Board flavor of a run of unclaimed cells. The letter says how many ends
// are flanked by a Maker-owned cell (real or virtual):
//   F - neither end, G - exactly one end, H - both ends.
// A G component is always stored with the flanked end at cell 1; a run that
// arises flanked on its right is mirrored when the component is created.
enum class Kind : std::uint8_t { F = 0, G = 1, H = 2 };

constexpr char kind_letter(Kind k) {
    switch (k) {
        case Kind::F: return 'F';
        case Kind::G: return 'G';
        case Kind::H: return 'H';
    }
    return '?';
}

inline Kind kind_from_letter(char c) {
    switch (c) {
        case 'F': case 'f': return Kind::F;
        case 'G': case 'g': return Kind::G;
        case 'H': case 'h': return Kind::H;
    }
    throw std::invalid_argument(std::string("unknown component kind '") + c + "'");
}

struct Component {
    Kind kind = Kind::F;
    int len = 0;  // count of unclaimed cells, >= 1 once stored in a Position

    auto operator<=>(const Component&) const = default;
};

inline std::string to_string(const Component& c) {
    return kind_letter(c.kind) + std::to_string(c.len);
}

// A move addresses a component by its index in the canonical ordering and a
// 1-based cell inside it.
struct Move {
    int component = 0;
    int cell = 0;

    auto operator<=>(const Move&) const = default;
};

// Result of claiming cell j inside a component of the given kind and length.
// Both sides are reported even when empty (len 0); empty parts are dropped
// when a Position is rebuilt.
struct Split {
    int score_delta = 0;
    Component left;   // cells {1..j-1} of the original component
    Component right;  // cells {j+1..len}

    std::vector<Component> parts() const {
        std::vector<Component> out;
        if (left.len > 0) out.push_back(left);
        if (right.len > 0) out.push_back(right);
        return out;
    }
};

namespace detail {
inline void check_cell(int len, int j) {
    if (len < 1) throw std::invalid_argument("component length must be positive");
    if (j < 1 || j > len) throw std::invalid_argument("cell out of range");
}
}  // namespace detail

// Maker claims cell j. Her cell flanks the two neighbouring runs, so parts
// gain a G/H end on the side that touched j. Claiming a cell adjacent to an
// existing flank scores immediately: +1 at cell 1 of G, +1 per flanked end
// hit in H (both at once on H(1)).
inline Split split_maker(Kind kind, int len, int j) {
    detail::check_cell(len, j);
    Split s;
    int left = j - 1, right = len - j;
    switch (kind) {
        case Kind::F:
            s.score_delta = 0;
            s.left = {Kind::G, left};   // mirrored: flanked end (old cell j-1) becomes cell 1
            s.right = {Kind::G, right};
            break;
        case Kind::G:
            s.score_delta = (j == 1) ? 1 : 0;
            s.left = {Kind::H, left};
            s.right = {Kind::G, right};
            break;
        case Kind::H:
            s.score_delta = (j == 1 ? 1 : 0) + (j == len ? 1 : 0);
            s.left = {Kind::H, left};
            s.right = {Kind::H, right};
            break;
    }
    return s;
}

// Breaker claims cell j; her cell is a neutral wall, the score never moves.
inline Split split_breaker(Kind kind, int len, int j) {
    detail::check_cell(len, j);
    Split s;
    int left = j - 1, right = len - j;
    switch (kind) {
        case Kind::F:
            s.left = {Kind::F, left};
            s.right = {Kind::F, right};
            break;
        case Kind::G:
            s.left = {Kind::G, left};
            s.right = {Kind::F, right};
            break;
        case Kind::H:
            s.left = {Kind::G, left};
            s.right = {Kind::G, right};  // mirrored: far flank becomes cell 1
            break;
    }
    return s;
}

inline Split split(Player mover, Kind kind, int len, int j) {
    return mover == Player::Maker ? split_maker(kind, len, j) : split_breaker(kind, len, j);
}

// Canonical residual game state: a multiset of components (sorted by kind,
// then length) plus the player to move. Two positions with equal multisets
// compare and hash equal no matter the insertion order.
class Position {
public:
    Position() = default;

    Position(std::vector<Component> comps, Player to_move) : to_move_(to_move) {
        comps_.reserve(comps.size());
        for (const Component& c : comps) {
            if (c.len == 0) continue;  // empty parts are dropped, never stored
            if (c.len < 0) throw std::invalid_argument("negative component length");
            comps_.push_back(c);
        }
        std::sort(comps_.begin(), comps_.end());
    }

    const std::vector<Component>& components() const { return comps_; }
    Player to_move() const { return to_move_; }
    bool terminal() const { return comps_.empty(); }

    int total_len() const {
        int t = 0;
        for (const Component& c : comps_) t += c.len;
        return t;
    }

    Position with_to_move(Player p) const {
        Position q = *this;
        q.to_move_ = p;
        return q;
    }

    bool operator==(const Position&) const = default;

    // Stable byte encoding, used as memoization key and for hashing.
    std::string key() const {
        std::string out;
        out.reserve(comps_.size() * 5 + 1);
        for (const Component& c : comps_) {
            out.push_back(static_cast<char>(c.kind));
            std::uint32_t l = static_cast<std::uint32_t>(c.len);
            out.push_back(static_cast<char>(l & 0xff));
            out.push_back(static_cast<char>((l >> 8) & 0xff));
            out.push_back(static_cast<char>((l >> 16) & 0xff));
            out.push_back(static_cast<char>((l >> 24) & 0xff));
        }
        out.push_back(static_cast<char>(to_move_));
        return out;
    }

private:
    std::vector<Component> comps_;
    Player to_move_ = Player::Maker;
};

inline std::string to_string(const Position& p) {
    std::string out = "{";
    for (std::size_t i = 0; i < p.components().size(); ++i) {
        if (i) out += ",";
        out += to_string(p.components()[i]);
    }
    out += "}:";
    out += player_name(p.to_move());
    return out;
}

// One move per (component, cell) pair, in canonical component order with
// ascending cells. Empty iff the position is terminal.
inline std::vector<Move> legal_moves(const Position& p) {
    std::vector<Move> out;
    const auto& comps = p.components();
    for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci)
        for (int j = 1; j <= comps[ci].len; ++j)
            out.push_back({ci, j});
    return out;
}

struct Applied {
    Position position;
    int score_delta = 0;
};

// Replaces the addressed component by its split parts, flips the player to
// move and re-canonicalizes. Illegal moves are rejected.
inline Applied apply_move(const Position& p, const Move& m) {
    const auto& comps = p.components();
    if (m.component < 0 || m.component >= static_cast<int>(comps.size()))
        throw std::invalid_argument("move addresses a missing component");
    const Component c = comps[m.component];
    if (m.cell < 1 || m.cell > c.len)
        throw std::invalid_argument("move cell out of range");

    Split s = split(p.to_move(), c.kind, c.len, m.cell);
    std::vector<Component> next;
    next.reserve(comps.size() + 1);
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
        if (i != m.component) next.push_back(comps[i]);
    if (s.left.len > 0) next.push_back(s.left);
    if (s.right.len > 0) next.push_back(s.right);

    int delta = p.to_move() == Player::Maker ? s.score_delta : 0;
    return {Position(std::move(next), opponent(p.to_move())), delta};
}

// Census of a position's components and the derived bound values. N1..N5
// count length classes per kind, epsilon is the parity of the H(1) count,
// y is the per-component value sum and g = y + z bounds the Maker-to-move
// score from above.
struct StructureCounts {
    int n1 = 0;  // F components with len = 3 or 4 (mod 5)
    int n2 = 0;  // G components with len = 0 or 1 (mod 5)
    int n3 = 0;  // H components, len != 2, with len = 2 or 3 (mod 5)
    int n4 = 0;  // H components with len = 2
    int n5 = 0;  // H components with len = 1
    int epsilon = 0;
    int y = 0;
    int z = 0;
    int g = 0;
};

inline StructureCounts structure_counts(const Position& p) {
    StructureCounts sc;
    for (const Component& c : p.components()) {
        int r = c.len % 5;
        switch (c.kind) {
            case Kind::F:
                sc.y += floor_div(c.len + 2, 5);
                if (r == 3 || r == 4) ++sc.n1;
                break;
            case Kind::G:
                sc.y += floor_div(c.len + 5, 5);
                if (r == 0 || r == 1) ++sc.n2;
                break;
            case Kind::H:
                sc.y += floor_div(c.len + 8, 5);
                if (c.len == 2) ++sc.n4;
                if (c.len == 1) ++sc.n5;
                if (c.len != 2 && (r == 2 || r == 3)) ++sc.n3;
                break;
        }
    }
    sc.epsilon = sc.n5 % 2;
    int s = sc.n1 + sc.n2 + sc.n3;
    sc.z = -sc.n4 + sc.epsilon - floor_div(s + sc.epsilon, 2);
    sc.g = sc.y + sc.z;
    return sc;
}

// The alternate z form; must agree with StructureCounts::z everywhere.
inline int structure_z_alt(const StructureCounts& sc) {
    return -sc.n4 - floor_div(sc.n1 + sc.n2 + sc.n3 - sc.epsilon, 2);
}

// Closed forms: exact cycle/path values, the delayed-game lower bound and
// the exact single-F value.
struct FormulaValues {
    int u_cycle = 0;        // floor((n+1)/5)
    int u_path = 0;         // floor((n+4)/5) for n >= 2, 0 for n = 1
    int alpha_lower = 0;    // max(0, floor((n-3k+2)/5))
    int gamma_b_lower = 0;  // same as u_path
    int alpha_exact = 0;    // floor((n+2)/5)
};

inline FormulaValues formula_values(int n, int k = 0) {
    if (n < 1) throw std::invalid_argument("formula_values requires n >= 1");
    if (k < 0) throw std::invalid_argument("formula_values requires k >= 0");
    FormulaValues f;
    f.u_cycle = floor_div(n + 1, 5);
    f.u_path = n == 1 ? 0 : floor_div(n + 4, 5);
    f.alpha_lower = std::max(0, floor_div(n - 3 * k + 2, 5));
    f.gamma_b_lower = f.u_path;
    f.alpha_exact = floor_div(n + 2, 5);
    return f;
}

// Small deterministic PRNG (splitmix64); used wherever seeded randomness is
// needed so results are identical across platforms.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("empty range");
        std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }
};

}  // namespace toiso

template <>
struct std::hash<toiso::Position> {
    std::size_t operator()(const toiso::Position& p) const noexcept {
        return std::hash<std::string>{}(p.key());
    }
};
