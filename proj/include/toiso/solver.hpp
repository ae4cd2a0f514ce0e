#pragma once

// Exact values by memoized minimax over canonical positions, plus the
// persistent transposition cache. One Solver instance per thread; run
// instances in parallel on disjoint inputs if you need concurrency.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "toiso/board.hpp"
#include "toiso/game.hpp"

namespace toiso {

struct SolveLimits {
    std::uint64_t max_nodes = 100'000'000;
    double max_seconds = 300.0;
};

class budget_exceeded : public std::runtime_error {
public:
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

struct SolveResult {
    int value = 0;
    std::optional<Move> principal_move;
    std::uint64_t nodes_expanded = 0;
};

class cache_error : public std::runtime_error {
public:
    enum class Code { io, version_mismatch, corrupt };

    cache_error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

namespace detail {

constexpr std::uint8_t kCacheFormatVersion = 1;
constexpr std::uint32_t kCacheArtifactVersion = 1;

inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class ByteReader {
public:
    ByteReader(const std::string& data, std::size_t at = 0) : data_(data), at_(at) {}

    bool done() const { return at_ >= data_.size(); }
    std::size_t at() const { return at_; }

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[at_++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[at_++])) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[at_++])) << (8 * i);
        return v;
    }

private:
    void need(std::size_t n) const {
        if (at_ + n > data_.size())
            throw cache_error(cache_error::Code::corrupt, "cache file truncated");
    }

    const std::string& data_;
    std::size_t at_;
};

}  // namespace detail

class Solver {
public:
    explicit Solver(SolveLimits limits = {}) : limits_(limits) {}

    SolveResult solve(const Position& p) { return run(GameState{p, 0}); }

    SolveResult solve_cycle(int n) { return solve_spec(game_from_cycle(n)); }
    SolveResult solve_path(int n) { return solve_spec(game_from_path(n)); }
    SolveResult solve_delayed(int n, int k) { return solve_spec(game_delayed(n, k)); }
    SolveResult solve_spec(const GameSpec& spec) { return run(GameState::start(spec)); }
    SolveResult solve_state(const GameState& gs) { return run(gs); }

    std::size_t cache_entries() const { return memo_.size(); }

    // Cache file: [version u8][artifact u32][count u64][checksum u64] then
    // length-prefixed records sorted by payload, little-endian throughout.
    void save_cache(const std::string& path) const {
        std::vector<std::string> payloads;
        payloads.reserve(memo_.size());
        for (const auto& [key, value] : memo_) {
            std::string rec;
            // key = component bytes + to_move byte (Position::key encoding)
            std::uint32_t comp_count = static_cast<std::uint32_t>((key.size() - 1) / 5);
            detail::put_u32(rec, comp_count);
            rec.append(key);
            detail::put_u32(rec, static_cast<std::uint32_t>(value));
            payloads.push_back(std::move(rec));
        }
        std::sort(payloads.begin(), payloads.end());

        std::string body;
        for (const std::string& rec : payloads) {
            detail::put_u32(body, static_cast<std::uint32_t>(rec.size()));
            body.append(rec);
        }

        std::string out;
        out.push_back(static_cast<char>(detail::kCacheFormatVersion));
        detail::put_u32(out, detail::kCacheArtifactVersion);
        detail::put_u64(out, payloads.size());
        detail::put_u64(out, detail::fnv1a(body));
        out.append(body);

        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw cache_error(cache_error::Code::io, "cannot open cache file for writing: " + path);
        f.write(out.data(), static_cast<std::streamsize>(out.size()));
        if (!f) throw cache_error(cache_error::Code::io, "cache write failed: " + path);
    }

    void load_cache(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw cache_error(cache_error::Code::io, "cannot open cache file: " + path);
        std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

        if (data.size() < 1 || static_cast<std::uint8_t>(data[0]) != detail::kCacheFormatVersion)
            throw cache_error(cache_error::Code::version_mismatch,
                              "cache format version mismatch in " + path);
        detail::ByteReader r(data, 1);
        std::uint32_t artifact = r.u32();
        if (artifact != detail::kCacheArtifactVersion)
            throw cache_error(cache_error::Code::version_mismatch,
                              "cache artifact version mismatch in " + path);
        std::uint64_t count = r.u64();
        std::uint64_t checksum = r.u64();
        if (detail::fnv1a(data.substr(r.at())) != checksum)
            throw cache_error(cache_error::Code::corrupt, "cache checksum mismatch in " + path);

        std::unordered_map<std::string, int> loaded;
        for (std::uint64_t i = 0; i < count; ++i) {
            std::uint32_t rec_len = r.u32();
            std::size_t rec_start = r.at();
            std::uint32_t comp_count = r.u32();
            std::string key;
            for (std::uint32_t c = 0; c < comp_count; ++c) {
                std::uint8_t kind = r.u8();
                if (kind > 2) throw cache_error(cache_error::Code::corrupt, "bad component kind");
                std::uint32_t len = r.u32();
                if (len == 0) throw cache_error(cache_error::Code::corrupt, "zero component length");
                key.push_back(static_cast<char>(kind));
                detail::put_u32(key, len);
            }
            std::uint8_t to_move = r.u8();
            if (to_move > 1) throw cache_error(cache_error::Code::corrupt, "bad player byte");
            key.push_back(static_cast<char>(to_move));
            int value = static_cast<int>(r.u32());
            if (r.at() - rec_start != rec_len)
                throw cache_error(cache_error::Code::corrupt, "record length mismatch");
            loaded.emplace(std::move(key), value);
        }
        if (!r.done()) throw cache_error(cache_error::Code::corrupt, "trailing bytes in cache file");
        memo_ = std::move(loaded);
    }

private:
    SolveResult run(const GameState& gs) {
        nodes_ = 0;
        start_ = std::chrono::steady_clock::now();
        int v = value_of(gs);
        SolveResult res;
        res.value = v;
        res.principal_move = principal(gs, v);
        res.nodes_expanded = nodes_;
        return res;
    }

    // Lexicographically first optimal move, recovered from memoized child
    // values; on a warm cache this costs lookups only.
    std::optional<Move> principal(const GameState& gs, int v) {
        if (gs.finished()) return std::nullopt;
        bool maker = gs.mover() == Player::Maker;
        for (const Move& m : legal_moves(gs.pos)) {
            GameState::Step st = gs.apply(m);
            int child = value_of(st.state);
            int total = (maker ? st.score_delta : 0) + child;
            if (total == v) return m;
        }
        throw std::logic_error("no move reproduces the solved value");
    }

    void charge_node() {
        if (++nodes_ > limits_.max_nodes)
            throw budget_exceeded("node budget exhausted (" + std::to_string(limits_.max_nodes) + ")");
        if ((nodes_ & 0xfff) == 0) {
            double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            if (elapsed > limits_.max_seconds)
                throw budget_exceeded("time budget exhausted (" + std::to_string(limits_.max_seconds) + "s)");
        }
    }

    int value_of(const GameState& gs) {
        if (gs.pos.terminal()) return 0;
        const bool free_phase = gs.free_left > 0;
        auto& table = free_phase ? free_memo_ : memo_;
        std::string key = free_phase ? gs.key() : gs.pos.key();
        if (auto it = table.find(key); it != table.end()) return it->second;

        charge_node();
        const bool maker = gs.mover() == Player::Maker;
        int best = maker ? std::numeric_limits<int>::min() : std::numeric_limits<int>::max();

        const auto& comps = gs.pos.components();
        for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci) {
            if (ci > 0 && comps[ci] == comps[ci - 1]) continue;  // identical slots are interchangeable
            const Component c = comps[ci];
            // Cells j and len+1-j are mirror-equivalent for the symmetric
            // kinds, so half the cells suffice here (the oracle must not do
            // this; the two implementations stay independent).
            int last_cell = c.kind == Kind::G ? c.len : (c.len + 1) / 2;
            for (int j = 1; j <= last_cell; ++j) {
                GameState::Step st = gs.apply({ci, j});
                int v = (maker ? st.score_delta : 0) + value_of(st.state);
                best = maker ? std::max(best, v) : std::min(best, v);
            }
        }
        table.emplace(std::move(key), best);
        return best;
    }

    SolveLimits limits_;
    std::unordered_map<std::string, int> memo_;       // alternation phase, persisted
    std::unordered_map<std::string, int> free_memo_;  // delayed free phase, in-memory only
    std::uint64_t nodes_ = 0;
    std::chrono::steady_clock::time_point start_{};
};

}  // namespace toiso
