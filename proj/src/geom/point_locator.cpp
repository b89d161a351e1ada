#include "twinmat/geom/point_locator.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "twinmat/errors.hpp"

namespace twinmat::geom {

namespace {

struct Event {
    std::int64_t x;
    bool insert;
    std::uint32_t index;
};

}  // namespace

PointLocator::PointLocator(std::int64_t width, std::int64_t height, const std::vector<LocatedRect>& rects)
    : PointLocator(width, height, rects, binary_shape(static_cast<std::uint64_t>(std::max<std::int64_t>(height, 1)))) {}

PointLocator::PointLocator(std::int64_t width, std::int64_t height, const std::vector<LocatedRect>& rects,
                           KTreeShape shape)
    : width_(width), height_(height), tree_(shape) {
    if (width < 0 || height < 0) throw BoundsError("negative locator extent");
    if (tree_.universe() < static_cast<std::uint64_t>(height)) throw BoundsError("tree universe smaller than height");

    std::vector<Event> events;
    events.reserve(rects.size() * 2);
    payloads_.reserve(rects.size());
    for (std::size_t t = 0; t < rects.size(); ++t) {
        const auto& r = rects[t];
        if (r.x1 < 0 || r.x1 >= r.x2 || r.x2 > width || r.y1 < 0 || r.y1 >= r.y2 || r.y2 > height)
            throw BoundsError("region " + std::to_string(t) + " is empty or out of range");
        payloads_.push_back(r.payload);
        events.push_back({r.x1, true, static_cast<std::uint32_t>(t)});
        events.push_back({r.x2, false, static_cast<std::uint32_t>(t)});
    }
    // Removals first so that regions meeting at x do not collide.
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.insert < b.insert;
    });

    std::map<std::int64_t, std::int64_t> active;  // y1 -> y2 of regions crossing the sweep line
    version_at_.assign(static_cast<std::size_t>(width), PersistentKTree::empty_version());
    PersistentKTree::Version current = PersistentKTree::empty_version();
    std::size_t next = 0;
    for (std::int64_t x = 0; x < width; ++x) {
        for (; next < events.size() && events[next].x == x; ++next) {
            const auto& e = events[next];
            const auto& r = rects[e.index];
            const auto lo = static_cast<std::uint64_t>(r.y1), hi = static_cast<std::uint64_t>(r.y2 - 1);
            if (e.insert) {
                auto it = active.upper_bound(r.y1);
                if (it != active.end() && it->first < r.y2) throw OverlapError("regions overlap at x=" + std::to_string(x));
                if (it != active.begin() && std::prev(it)->second > r.y1)
                    throw OverlapError("regions overlap at x=" + std::to_string(x));
                active.emplace(r.y1, r.y2);
                current = tree_.insert(current, lo, hi, e.index + 1);
            } else {
                active.erase(r.y1);
                current = tree_.remove(current, lo, hi);
            }
        }
        version_at_[static_cast<std::size_t>(x)] = current;
    }
}

std::optional<std::uint32_t> PointLocator::locate(std::int64_t x, std::int64_t y, int* hops) const {
    if (x < 0 || x >= width_ || y < 0 || y >= height_) {
        if (hops) *hops = 0;
        return std::nullopt;
    }
    const std::uint32_t tag = tree_.lookup(version_at_[static_cast<std::size_t>(x)], static_cast<std::uint64_t>(y), hops);
    if (tag == 0) return std::nullopt;
    return payloads_[tag - 1];
}

std::uint64_t PointLocator::bitsize() const {
    const auto versions = static_cast<std::uint64_t>(std::max<std::size_t>(tree_.version_count(), 2));
    const auto version_bits = static_cast<std::uint64_t>(std::bit_width(versions - 1));
    const auto tag_bits = static_cast<int>(std::bit_width(payloads_.size() + 1));
    return tree_.bitsize(tag_bits) + version_bits * version_at_.size();
}

}  // namespace twinmat::geom
