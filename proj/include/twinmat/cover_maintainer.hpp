#pragma once

// Incremental cover of an m x m grid by rectangles that always leaves a
// prefix of every column covered. Column heights H[1..m] are stored as maximal
// runs (h, l, r) of equal height, kept both in position order and in
// lexicographic (h, l) order.

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace twinmat {

struct HeightRun {
    int h = 0, l = 1, r = 1;

    auto operator<=>(const HeightRun&) const = default;
};

class CoverMaintainer {
public:
    explicit CoverMaintainer(int m);

    int m() const noexcept { return m_; }

    // Row-major smallest uncovered cell (block row, block column).
    std::optional<std::pair<int, int>> get_first() const;
    // Largest j' such that row get_first().first is uncovered on columns j..j'.
    // Throws EmptyError once everything is covered.
    int extend_right() const;
    // Covers rows i..i2, columns j..j2 where (i, j) = get_first().
    // Throws ContractViolation if i2 < i, i2 > m, j2 < j or j2 > extend_right().
    void cover(int i2, int j2);

    bool done() const noexcept { return by_key_.begin()->first == m_; }

    std::vector<HeightRun> runs() const;
    std::vector<int> heights() const;  // H[1..m] as a 0-based vector

private:
    void add(const HeightRun& run);
    void erase(const HeightRun& run);

    int m_;
    std::map<int, HeightRun> by_pos_;         // l -> run
    std::set<std::pair<int, int>> by_key_;    // (h, l)
};

}  // namespace twinmat
