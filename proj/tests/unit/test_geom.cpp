#include <doctest.h>

#include <random>

#include "twinmat/errors.hpp"
#include "twinmat/geom/persistent_ktree.hpp"
#include "twinmat/geom/point_locator.hpp"
#include "twinmat/geom/range_emptiness.hpp"
#include "twinmat/geom/ray_shooter.hpp"

using namespace twinmat;
using namespace twinmat::geom;

namespace {

std::int64_t below(std::mt19937_64& rng, std::int64_t bound) {
    return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(bound));
}

}  // namespace

TEST_CASE("k-ary tree shapes") {
    CHECK(shape_for_epsilon(1000, 0.5).h == 5);
    CHECK(shape_for_epsilon(1000, 0.5).k == 4);  // 4^5 = 1024
    CHECK(shape_for_epsilon(1000, 2.0).h == 2);
    CHECK(shape_for_epsilon(1000, 2.0).k == 32);
    CHECK(binary_shape(1).h == 1);
    CHECK(binary_shape(8).h == 3);
    CHECK(binary_shape(9).h == 4);
    CHECK_THROWS_AS(shape_for_epsilon(10, 0.0), BoundsError);
    CHECK_THROWS_AS(PersistentKTree(KTreeShape{1, 3}), BoundsError);
}

TEST_CASE("k-ary tree examples") {
    PersistentKTree t(KTreeShape{2, 3});
    const auto full = t.insert(t.empty_version(), 0, 7);
    for (std::uint64_t y = 0; y < 8; ++y) {
        CHECK(t.member(full, y));
        CHECK_FALSE(t.member(t.empty_version(), y));
    }
    const auto part = t.insert(t.empty_version(), 0, 2);
    CHECK(t.member(part, 2));
    CHECK_FALSE(t.member(part, 3));

    PersistentKTree q(KTreeShape{4, 2});
    const auto v = q.insert(q.empty_version(), 5, 11);
    for (std::uint64_t y = 0; y < 16; ++y) CHECK(q.member(v, y) == (5 <= y && y <= 11));

    PersistentKTree r(KTreeShape{2, 3});
    const auto a = r.insert(r.empty_version(), 3, 3);
    CHECK(r.member(a, 3));
    const auto b = r.insert(r.empty_version(), 2, 5);
    const auto c = r.remove(b, 2, 5);
    CHECK_FALSE(r.member(c, 4));
    CHECK(r.member(b, 4));

    CHECK_THROWS_AS(r.insert(a, 3, 8), BoundsError);
    CHECK_THROWS_AS(r.member(a, 8), BoundsError);
    CHECK_THROWS_AS(r.remove(a, 4, 4), ContractViolation);
}

TEST_CASE("k-ary tree lookups visit h+1 nodes and return the interval tag") {
    PersistentKTree t(KTreeShape{3, 4});
    auto v = t.insert(t.empty_version(), 10, 40, 7);
    v = t.insert(v, 41, 41, 9);
    int hops = 0;
    CHECK(t.lookup(v, 20, &hops) == 7);
    CHECK(hops == 5);
    CHECK(t.lookup(v, 41, &hops) == 9);
    CHECK(t.lookup(v, 42, &hops) == 0);
    CHECK(hops == 5);
}

TEST_CASE("k-ary tree randomized differential test with snapshots") {
    std::mt19937_64 rng(2024);
    for (int k : {2, 4, 16}) {
        for (int h = 2; h <= 6; ++h) {
            const KTreeShape shape{k, h};
            if (shape.universe() > (1u << 16)) continue;
            PersistentKTree t(shape);
            const auto universe = static_cast<std::int64_t>(t.universe());
            std::vector<std::vector<bool>> snapshots{std::vector<bool>(universe, false)};
            std::vector<std::pair<std::int64_t, std::int64_t>> live;
            std::vector<bool> set(universe, false);
            auto version = t.empty_version();
            for (int op = 0; op < 200; ++op) {
                if (!live.empty() && rng() % 3 == 0) {
                    const auto idx = static_cast<std::size_t>(below(rng, static_cast<std::int64_t>(live.size())));
                    const auto [lo, hi] = live[idx];
                    live.erase(live.begin() + static_cast<std::ptrdiff_t>(idx));
                    const std::size_t before = t.node_count();
                    version = t.remove(version, static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi));
                    CHECK(t.node_count() - before <= static_cast<std::size_t>(2 * k * (h + 1)));
                    for (auto y = lo; y <= hi; ++y) set[y] = false;
                } else {
                    const auto lo = below(rng, universe);
                    const auto hi = std::min(universe - 1, lo + below(rng, std::max<std::int64_t>(1, universe / 8)));
                    bool free = true;
                    for (auto y = lo; y <= hi && free; ++y) free = !set[y];
                    if (!free) continue;
                    const std::size_t before = t.node_count();
                    version = t.insert(version, static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi));
                    CHECK(t.node_count() - before <= static_cast<std::size_t>(2 * k * (h + 1)));
                    live.emplace_back(lo, hi);
                    for (auto y = lo; y <= hi; ++y) set[y] = true;
                }
                snapshots.push_back(set);
            }
            // Every version, including the oldest, still answers as it did when created.
            for (std::size_t v = 0; v < t.version_count(); ++v)
                for (std::int64_t y = 0; y < universe; y += 1 + universe / 97) {
                    int hops = 0;
                    REQUIRE(t.member(static_cast<PersistentKTree::Version>(v), static_cast<std::uint64_t>(y), &hops) ==
                            snapshots[v][y]);
                    REQUIRE(hops == h + 1);
                }
        }
    }
}

TEST_CASE("point locator examples") {
    PointLocator none(4, 4, {});
    CHECK_FALSE(none.locate(0, 0).has_value());
    PointLocator one(4, 4, {{0, 2, 0, 2, 42}});
    CHECK(one.locate(1, 1) == 42u);
    CHECK_FALSE(one.locate(2, 1).has_value());
    // Abutting regions: shared edges belong to the right / upper region.
    PointLocator two(4, 4, {{0, 2, 0, 4, 1}, {2, 4, 0, 2, 2}, {2, 4, 2, 4, 3}});
    CHECK(two.locate(2, 1) == 2u);
    CHECK(two.locate(2, 2) == 3u);
    CHECK(two.locate(1, 3) == 1u);
    CHECK_FALSE(two.locate(4, 0).has_value());
    CHECK_THROWS_AS(PointLocator(4, 4, {{0, 2, 0, 2, 1}, {1, 3, 1, 3, 2}}), OverlapError);
    CHECK_THROWS_AS(PointLocator(4, 4, {{0, 5, 0, 2, 1}}), BoundsError);
}

TEST_CASE("point locator agrees with a naive scan") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 10; ++round) {
        const std::int64_t w = 40 + below(rng, 60), h = 40 + below(rng, 60);
        std::vector<LocatedRect> rects;
        std::vector<int> owner(static_cast<std::size_t>(w * h), -1);
        for (int attempt = 0; attempt < 1000 && rects.size() < 100; ++attempt) {
            const auto x1 = below(rng, w), y1 = below(rng, h);
            const auto x2 = std::min(w, x1 + 1 + below(rng, 10)), y2 = std::min(h, y1 + 1 + below(rng, 10));
            bool free = true;
            for (auto x = x1; x < x2 && free; ++x)
                for (auto y = y1; y < y2 && free; ++y) free = owner[x * h + y] < 0;
            if (!free) continue;
            for (auto x = x1; x < x2; ++x)
                for (auto y = y1; y < y2; ++y) owner[x * h + y] = static_cast<int>(rects.size());
            rects.push_back({x1, x2, y1, y2, static_cast<std::uint32_t>(rects.size()) * 3 + 1});
        }
        for (auto shape : {binary_shape(static_cast<std::uint64_t>(h)), shape_for_epsilon(static_cast<std::uint64_t>(h), 0.5)}) {
            PointLocator loc(w, h, rects, shape);
            for (int q = 0; q < 1000; ++q) {
                const auto x = below(rng, w), y = below(rng, h);
                const int o = owner[x * h + y];
                const auto got = loc.locate(x, y);
                if (o < 0)
                    REQUIRE_FALSE(got.has_value());
                else
                    REQUIRE(got == rects[static_cast<std::size_t>(o)].payload);
            }
        }
    }
}

TEST_CASE("range emptiness examples and differential test") {
    RangeEmptiness none(std::vector<GridPoint>{});
    CHECK(none.empty(0, 100, 0, 100));
    RangeEmptiness single({{3, 3}});
    CHECK_FALSE(single.empty(3, 3, 3, 3));
    CHECK(single.empty(4, 9, 0, 9));

    std::mt19937_64 rng(9);
    for (int round = 0; round < 10; ++round) {
        std::vector<GridPoint> pts;
        const int count = static_cast<int>(below(rng, 1000)) + 1;
        for (int t = 0; t < count; ++t) pts.push_back({below(rng, 500), below(rng, 500)});
        RangeEmptiness re(pts);
        for (int q = 0; q < 1000; ++q) {
            auto x1 = below(rng, 500), x2 = below(rng, 500), y1 = below(rng, 500), y2 = below(rng, 500);
            if (x1 > x2) std::swap(x1, x2);
            if (y1 > y2) std::swap(y1, y2);
            if (q % 2) x2 = std::min<std::int64_t>(499, x1 + below(rng, 20));
            bool naive = true;
            for (const auto& p : pts) naive &= !(x1 <= p.x && p.x <= x2 && y1 <= p.y && p.y <= y2);
            REQUIRE(re.empty(x1, x2, y1, y2) == naive);
        }
    }
}

TEST_CASE("ray shooter examples and differential test") {
    RayShooter none(10, {});
    CHECK_FALSE(none.ray_shoot(3, 2).has_value());
    CHECK(none.seg_intersect_empty(3, 2, 4));

    RayShooter one(10, {{5, 0, 10}});
    CHECK(one.ray_shoot(3, 2) == std::size_t{0});
    CHECK(one.seg_intersect_empty(3, 2, 4));
    CHECK_FALSE(one.seg_intersect_empty(3, 2, 5));
    CHECK_FALSE(one.ray_shoot(3, 6).has_value());

    std::mt19937_64 rng(31);
    for (int round = 0; round < 10; ++round) {
        const std::int64_t width = 200;
        std::vector<HSegment> segs;
        for (int t = 0; t < 1000; ++t) {
            const auto x1 = below(rng, width + 1);
            segs.push_back({below(rng, 300), x1, std::min(width, x1 + below(rng, 60))});
        }
        RayShooter rs(width, segs);
        for (int q = 0; q < 1000; ++q) {
            const auto x = below(rng, width + 1), y = below(rng, 300);
            std::optional<std::int64_t> best;
            for (const auto& s : segs)
                if (s.x1 <= x && x <= s.x2 && s.y >= y && (!best || s.y < *best)) best = s.y;
            const auto hit = rs.ray_shoot(x, y);
            REQUIRE(hit.has_value() == best.has_value());
            if (hit) {
                const auto& s = segs[*hit];
                REQUIRE(s.y == *best);
                REQUIRE((s.x1 <= x && x <= s.x2));
            }
            const auto y2 = y + below(rng, 40);
            REQUIRE(rs.seg_intersect_empty(x, y, y2) == (!best || *best > y2));
        }
    }
}
