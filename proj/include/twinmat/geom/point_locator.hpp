#pragma once

// Static orthogonal point location over interior-disjoint rectangles, built by
// sweeping a vertical line left to right and recording one persistent k-ary
// tree version per integer x.

#include <cstdint>
#include <optional>
#include <vector>

#include "twinmat/geom/persistent_ktree.hpp"

namespace twinmat::geom {

// Half-open region [x1, x2) x [y1, y2).
struct LocatedRect {
    std::int64_t x1 = 0, x2 = 0, y1 = 0, y2 = 0;
    std::uint32_t payload = 0;
};

class PointLocator {
public:
    // Coordinates must lie in [0, width] x [0, height]. Throws OverlapError if
    // two regions share a point and BoundsError for empty or out-of-range
    // regions. `shape` must cover `height`; binary_shape(height) by default.
    PointLocator(std::int64_t width, std::int64_t height, const std::vector<LocatedRect>& rects);
    PointLocator(std::int64_t width, std::int64_t height, const std::vector<LocatedRect>& rects, KTreeShape shape);

    // Payload of the region containing (x, y); nullopt outside every region.
    std::optional<std::uint32_t> locate(std::int64_t x, std::int64_t y, int* hops = nullptr) const;

    std::int64_t width() const noexcept { return width_; }
    std::int64_t height() const noexcept { return height_; }
    const PersistentKTree& tree() const noexcept { return tree_; }

    // Node pool plus the per-x version table.
    std::uint64_t bitsize() const;

private:
    std::int64_t width_, height_;
    PersistentKTree tree_;
    std::vector<PersistentKTree::Version> version_at_;  // indexed by x in [0, width)
    std::vector<std::uint32_t> payloads_;               // tag - 1 -> payload
};

}  // namespace twinmat::geom
