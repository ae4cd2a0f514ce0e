#pragma once

// Test-only oracle for the delayed game: instead of giving the minimizer k
// consecutive free moves, enumerate every k-subset of opening stones
// directly and brute-force the remainder. Deliberately independent of the
// solver's free-move handling.

#include <vector>

#include "toiso/explicit_board.hpp"

namespace toiso::test {

inline int delayed_subset_oracle(int n, int k) {
    ExplicitBoard base;
    base.cells.assign(n, Cell::Empty);
    BruteForce oracle(base);

    std::vector<int> pick(k);
    int best = -1;
    auto rec = [&](auto&& self, int from, int left) -> void {
        if (left == 0) {
            std::vector<Cell> cells(n, Cell::Empty);
            for (int i = 0; i < k; ++i) cells[pick[i]] = Cell::Breaker;
            int v = oracle.value_at(cells, Player::Maker);
            if (best < 0 || v < best) best = v;
            return;
        }
        for (int i = from; i + left <= n; ++i) {
            pick[k - left] = i;
            self(self, i + 1, left - 1);
        }
    };
    rec(rec, 0, k);
    return best < 0 ? 0 : best;
}

}  // namespace toiso::test
