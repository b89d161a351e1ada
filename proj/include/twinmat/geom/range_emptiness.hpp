#pragma once

// Static 2D orthogonal range emptiness over integer points: a segment tree
// over the x-sorted points whose nodes keep their points' y values sorted.
// Queries take O(log^2 P).

#include <cstdint>
#include <utility>
#include <vector>

namespace twinmat::geom {

struct GridPoint {
    std::int64_t x = 0, y = 0;

    auto operator<=>(const GridPoint&) const = default;
};

class RangeEmptiness {
public:
    RangeEmptiness() = default;
    explicit RangeEmptiness(std::vector<GridPoint> points);

    // True iff no point lies in the closed rectangle [x1, x2] x [y1, y2].
    bool empty(std::int64_t x1, std::int64_t x2, std::int64_t y1, std::int64_t y2) const;

    std::size_t size() const noexcept { return xs_.size(); }
    std::uint64_t bitsize() const;

private:
    bool node_has(std::size_t node, std::int64_t y1, std::int64_t y2) const;

    std::size_t leaves_ = 0;
    std::vector<std::int64_t> xs_;                 // sorted x of each point
    std::vector<std::vector<std::int64_t>> ys_;    // per tree node, sorted y
};

}  // namespace twinmat::geom
