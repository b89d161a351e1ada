#include "twinmat/geom/ray_shooter.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "twinmat/errors.hpp"

namespace twinmat::geom {

RayShooter::RayShooter(std::int64_t width, std::vector<HSegment> segments)
    : width_(width), segments_(std::move(segments)) {
    if (width < 0) throw BoundsError("negative ray shooter width");
    const std::size_t s = segments_.size();
    order_.resize(s);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [this](std::size_t a, std::size_t b) {
        return segments_[a].y != segments_[b].y ? segments_[a].y < segments_[b].y : a < b;
    });
    std::vector<std::size_t> rank(s);
    ranked_y_.resize(s);
    for (std::size_t r = 0; r < s; ++r) {
        rank[order_[r]] = r;
        ranked_y_[r] = segments_[order_[r]].y;
    }

    // Node 0 is the shared empty tree.
    left_.push_back(0);
    right_.push_back(0);
    count_.push_back(0);

    struct Event {
        std::int64_t x;
        int delta;
        std::size_t rank;
    };
    std::vector<Event> events;
    for (std::size_t t = 0; t < s; ++t) {
        const auto& g = segments_[t];
        if (g.x1 > g.x2 || g.x1 < 0 || g.x2 > width)
            throw BoundsError("segment " + std::to_string(t) + " outside [0, width]");
        events.push_back({g.x1, +1, rank[t]});
        events.push_back({g.x2 + 1, -1, rank[t]});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

    version_at_.assign(static_cast<std::size_t>(width) + 1, 0);
    std::uint32_t root = 0;
    std::size_t next = 0;
    for (std::int64_t x = 0; x <= width; ++x) {
        for (; next < events.size() && events[next].x == x; ++next)
            root = toggle(root, 0, s, events[next].rank, events[next].delta);
        version_at_[static_cast<std::size_t>(x)] = root;
    }
}

std::uint32_t RayShooter::toggle(std::uint32_t node, std::size_t lo, std::size_t hi, std::size_t pos, int delta) {
    const auto id = static_cast<std::uint32_t>(count_.size());
    left_.push_back(left_[node]);
    right_.push_back(right_[node]);
    count_.push_back(static_cast<std::uint32_t>(static_cast<int>(count_[node]) + delta));
    if (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (pos < mid) {
            const auto child = toggle(left_[id], lo, mid, pos, delta);
            left_[id] = child;
        } else {
            const auto child = toggle(right_[id], mid, hi, pos, delta);
            right_[id] = child;
        }
    }
    return id;
}

std::optional<std::size_t> RayShooter::first_from(std::uint32_t node, std::size_t lo, std::size_t hi,
                                                  std::size_t from) const {
    if (count_[node] == 0 || hi <= from) return std::nullopt;
    if (hi - lo == 1) return lo;
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto r = first_from(left_[node], lo, mid, from)) return r;
    return first_from(right_[node], mid, hi, from);
}

std::optional<std::size_t> RayShooter::ray_shoot(std::int64_t x, std::int64_t y) const {
    if (x < 0 || x > width_ || segments_.empty()) return std::nullopt;
    const auto from = static_cast<std::size_t>(std::lower_bound(ranked_y_.begin(), ranked_y_.end(), y) - ranked_y_.begin());
    const auto r = first_from(version_at_[static_cast<std::size_t>(x)], 0, segments_.size(), from);
    if (!r) return std::nullopt;
    return order_[*r];
}

bool RayShooter::seg_intersect_empty(std::int64_t x, std::int64_t y1, std::int64_t y2) const {
    const auto hit = ray_shoot(x, y1);
    return !hit || segments_[*hit].y > y2;
}

std::uint64_t RayShooter::bitsize() const {
    const auto nodes = static_cast<std::uint64_t>(count_.size());
    const auto id_bits = static_cast<std::uint64_t>(std::max(1, static_cast<int>(std::bit_width(nodes))));
    return nodes * 3 * id_bits + version_at_.size() * id_bits;
}

}  // namespace twinmat::geom
