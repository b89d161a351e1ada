#include "twinmat/geom/range_emptiness.hpp"

#include <algorithm>
#include <bit>

namespace twinmat::geom {

RangeEmptiness::RangeEmptiness(std::vector<GridPoint> points) {
    std::sort(points.begin(), points.end());
    xs_.reserve(points.size());
    for (const auto& p : points) xs_.push_back(p.x);
    leaves_ = std::bit_ceil(std::max<std::size_t>(points.size(), 1));
    ys_.resize(2 * leaves_);
    for (std::size_t t = 0; t < points.size(); ++t) ys_[leaves_ + t] = {points[t].y};
    for (std::size_t v = leaves_ - 1; v >= 1; --v) {
        const auto& a = ys_[2 * v];
        const auto& b = ys_[2 * v + 1];
        ys_[v].resize(a.size() + b.size());
        std::merge(a.begin(), a.end(), b.begin(), b.end(), ys_[v].begin());
    }
}

bool RangeEmptiness::node_has(std::size_t node, std::int64_t y1, std::int64_t y2) const {
    const auto& ys = ys_[node];
    auto it = std::lower_bound(ys.begin(), ys.end(), y1);
    return it != ys.end() && *it <= y2;
}

bool RangeEmptiness::empty(std::int64_t x1, std::int64_t x2, std::int64_t y1, std::int64_t y2) const {
    if (x1 > x2 || y1 > y2 || xs_.empty()) return true;
    auto lo = static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), x1) - xs_.begin());
    auto hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x2) - xs_.begin());
    // Bottom-up walk over the leaf range [lo, hi).
    for (lo += leaves_, hi += leaves_; lo < hi; lo >>= 1, hi >>= 1) {
        if ((lo & 1) && node_has(lo++, y1, y2)) return false;
        if ((hi & 1) && node_has(--hi, y1, y2)) return false;
    }
    return true;
}

std::uint64_t RangeEmptiness::bitsize() const {
    std::uint64_t entries = xs_.size();
    for (const auto& ys : ys_) entries += ys.size();
    return entries * 64;
}

}  // namespace twinmat::geom
