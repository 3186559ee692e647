#pragma once

#include <cstddef>
#include <vector>

namespace clutterscan {

struct MultiIndex {
    std::vector<int> entries;

    [[nodiscard]] int weight() const noexcept {
        int w = 0;
        for (int e : entries) w += e;
        return w;
    }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(entries.size()); }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Graded order: lower weight first, then lexicographically larger entries
/// first, so that (1,0) precedes (0,1).
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// All s in N^k with |s| = weight, in graded-lex order.
std::vector<MultiIndex> multi_indices_of_weight(int k, int weight);

/// S = { s in N^k : |s| <= r0 } in graded-lex order.
std::vector<MultiIndex> multi_index_set(int k, int r0);

/// sum_{s=0}^{r0} binom(s+k-1, k-1).
std::size_t multi_index_count(int k, int r0);

/// Position of s in multi_index_set(s.size(), r0), or -1 if |s| > r0.
int multi_index_position(const MultiIndex& s, int r0);

}  // namespace clutterscan
