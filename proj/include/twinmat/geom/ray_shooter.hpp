#pragma once

// Vertical ray shooting against horizontal segments. Segments are ranked by
// (y, index); a persistent segment tree over ranks records which segments
// cross the vertical line x, with one version per integer x.

#include <cstdint>
#include <optional>
#include <vector>

namespace twinmat::geom {

// Horizontal segment at height y covering the closed span [x1, x2].
struct HSegment {
    std::int64_t y = 0, x1 = 0, x2 = 0;
};

class RayShooter {
public:
    RayShooter() = default;
    // x coordinates of queries and segment endpoints lie in [0, width].
    RayShooter(std::int64_t width, std::vector<HSegment> segments);

    // Index of the lowest segment with height >= y crossing the line x.
    std::optional<std::size_t> ray_shoot(std::int64_t x, std::int64_t y) const;
    // True iff the closed vertical segment x, [y1, y2] meets no segment.
    bool seg_intersect_empty(std::int64_t x, std::int64_t y1, std::int64_t y2) const;

    const std::vector<HSegment>& segments() const noexcept { return segments_; }
    std::size_t node_count() const noexcept { return count_.size(); }
    std::uint64_t bitsize() const;

private:
    std::uint32_t toggle(std::uint32_t node, std::size_t lo, std::size_t hi, std::size_t pos, int delta);
    std::optional<std::size_t> first_from(std::uint32_t node, std::size_t lo, std::size_t hi, std::size_t from) const;

    std::int64_t width_ = -1;
    std::vector<HSegment> segments_;
    std::vector<std::size_t> order_;        // rank -> segment index
    std::vector<std::int64_t> ranked_y_;    // rank -> y
    std::vector<std::uint32_t> left_, right_, count_;
    std::vector<std::uint32_t> version_at_;  // x in [0, width] -> root
};

}  // namespace twinmat::geom
