#include "clutterscan/multi_index.hpp"

#include <algorithm>

#include "clutterscan/error.hpp"

namespace clutterscan {

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    const int wa = a.weight();
    const int wb = b.weight();
    if (wa != wb) return wa < wb;
    return std::lexicographical_compare(b.entries.begin(), b.entries.end(), a.entries.begin(),
                                        a.entries.end());
}

namespace {

void fill_weight(int k, int remaining, int pos, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (pos == k - 1) {
        cur[static_cast<std::size_t>(pos)] = remaining;
        out.push_back(MultiIndex{cur});
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[static_cast<std::size_t>(pos)] = v;
        fill_weight(k, remaining - v, pos + 1, cur, out);
    }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_weight(int k, int weight) {
    if (k < 1 || weight < 0) throw Error(ErrorCode::InvalidArgument, "need k >= 1, weight >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(k), 0);
    fill_weight(k, weight, 0, cur, out);
    return out;
}

std::vector<MultiIndex> multi_index_set(int k, int r0) {
    if (k < 1 || r0 < 0) throw Error(ErrorCode::InvalidArgument, "need k >= 1, r0 >= 0");
    std::vector<MultiIndex> out;
    for (int w = 0; w <= r0; ++w) {
        auto layer = multi_indices_of_weight(k, w);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::size_t multi_index_count(int k, int r0) {
    std::size_t total = 0;
    for (int s = 0; s <= r0; ++s) {
        // binom(s+k-1, k-1)
        std::size_t b = 1;
        for (int i = 1; i <= k - 1; ++i) b = b * static_cast<std::size_t>(s + i) / static_cast<std::size_t>(i);
        total += b;
    }
    return total;
}

int multi_index_position(const MultiIndex& s, int r0) {
    if (s.weight() > r0) return -1;
    const auto all = multi_index_set(s.size(), r0);
    const auto it = std::find(all.begin(), all.end(), s);
    return it == all.end() ? -1 : static_cast<int>(it - all.begin());
}

}  // namespace clutterscan
