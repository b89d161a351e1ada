#include <doctest.h>

#include <random>

#include "../support/corpus.hpp"
#include "twinmat/cover_maintainer.hpp"
#include "twinmat/errors.hpp"
#include "twinmat/zone_approx.hpp"

using namespace twinmat;

namespace {

using Cell = std::pair<int, int>;

// The same grid kept as a plain boolean array.
struct NaiveCover {
    explicit NaiveCover(int m) : m(m), covered(static_cast<std::size_t>(m) * m, false) {}

    std::optional<Cell> first() const {
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j)
                if (!at(i, j)) return Cell{i, j};
        return std::nullopt;
    }
    int extend_right() const {
        auto [i, j] = *first();
        while (j + 1 <= m && !at(i, j + 1)) ++j;
        return j;
    }
    void cover(int i2, int j2) {
        auto [i, j] = *first();
        for (int a = i; a <= i2; ++a)
            for (int b = j; b <= j2; ++b) covered[(a - 1) * m + (b - 1)] = true;
    }
    bool at(int i, int j) const { return covered[(i - 1) * m + (j - 1)]; }

    int m;
    std::vector<bool> covered;
};

void check_xi_contract(const BinaryMatrix& mat, const ZoneCover& zc) {
    const RegularDivision div{mat.n(), zc.s()};
    for (int i = 1; i <= zc.m(); ++i)
        for (int j = 1; j <= zc.m(); ++j) {
            const auto [a, b] = zc.xi(i, j);
            REQUIRE(mat.zone(zone_bounds(div, a, b)) == mat.zone(zone_bounds(div, i, j)));
        }
}

}  // namespace

TEST_CASE("cover maintainer examples") {
    CoverMaintainer fresh(4);
    CHECK(fresh.get_first() == Cell{1, 1});
    CHECK(fresh.extend_right() == 4);

    CoverMaintainer a(4);
    a.cover(2, 3);
    CHECK(a.heights() == std::vector<int>{2, 2, 2, 0});
    CHECK(a.get_first() == Cell{1, 4});
    CHECK(a.extend_right() == 4);

    CoverMaintainer b(4);
    b.cover(1, 2);
    CHECK(b.heights() == std::vector<int>{1, 1, 0, 0});
    CHECK(b.get_first() == Cell{1, 3});
    b.cover(1, 4);
    CHECK(b.heights() == std::vector<int>{1, 1, 1, 1});
    CHECK(b.runs() == std::vector<HeightRun>{{1, 1, 4}});

    CoverMaintainer c(4);
    c.cover(1, 1);
    c.cover(1, 2);
    CHECK(c.heights() == std::vector<int>{1, 1, 0, 0});
    c.cover(1, 3);
    c.cover(1, 4);
    c.cover(2, 1);  // H = [2, 1, 1, 1]
    CHECK(c.get_first() == Cell{2, 2});
    c.cover(2, 2);
    c.cover(2, 3);  // H = [2, 2, 2, 1] -> first (2, 4)
    CHECK(c.get_first() == Cell{2, 4});

    CoverMaintainer d(4);
    d.cover(1, 1);
    d.cover(2, 2);  // H = [1, 2, 0, 0]
    d.cover(1, 3);  // H = [1, 2, 1, 0]
    CHECK(d.heights() == std::vector<int>{1, 2, 1, 0});
    CHECK(d.get_first() == Cell{1, 4});
    d.cover(1, 4);  // H = [1, 2, 1, 1]
    CHECK(d.get_first() == Cell{2, 1});
    CHECK(d.extend_right() == 1);
    d.cover(2, 1);  // H = [2, 2, 1, 1]
    CHECK(d.get_first() == Cell{2, 3});
    CHECK(d.extend_right() == 4);

    CoverMaintainer full(4);
    full.cover(4, 4);
    CHECK_FALSE(full.get_first().has_value());
    CHECK(full.done());
    CHECK_THROWS_AS(full.extend_right(), EmptyError);
    CHECK_THROWS_AS(full.cover(4, 4), ContractViolation);

    CoverMaintainer bad(4);
    bad.cover(1, 2);
    CHECK_THROWS_AS(bad.cover(1, 2), ContractViolation);  // j' before the first uncovered column
    CHECK_THROWS_AS(bad.cover(0, 3), ContractViolation);
    CHECK_THROWS_AS(bad.cover(5, 3), ContractViolation);
    CoverMaintainer bad2(4);
    bad2.cover(2, 2);
    CHECK(bad2.extend_right() == 4);
    CoverMaintainer bad3(4);
    bad3.cover(1, 1);
    bad3.cover(2, 2);  // H = [1, 2, 0, 0]
    bad3.cover(1, 3);
    bad3.cover(3, 4);  // H = [1, 2, 1, 3]; first (2, 1), runs end at column 1
    CHECK_THROWS_AS(bad3.cover(2, 2), ContractViolation);
}

TEST_CASE("cover maintainer agrees with a naive grid under random covers") {
    std::mt19937_64 rng(6);
    for (int round = 0; round < 200; ++round) {
        const int m = 1 + static_cast<int>(rng() % 12);
        CoverMaintainer cm(m);
        NaiveCover naive(m);
        while (auto first = cm.get_first()) {
            REQUIRE(first == naive.first());
            const int jmax = cm.extend_right();
            REQUIRE(jmax == naive.extend_right());
            const auto [i, j] = *first;
            const int i2 = i + static_cast<int>(rng() % static_cast<unsigned>(m - i + 1));
            const int j2 = j + static_cast<int>(rng() % static_cast<unsigned>(jmax - j + 1));
            cm.cover(i2, j2);
            naive.cover(i2, j2);
            const auto runs = cm.runs();
            for (std::size_t k = 1; k < runs.size(); ++k) {
                REQUIRE(runs[k].l == runs[k - 1].r + 1);
                REQUIRE(runs[k].h != runs[k - 1].h);
            }
            const auto h = cm.heights();
            for (int c = 1; c <= m; ++c)
                for (int r = 1; r <= m; ++r) REQUIRE(naive.at(r, c) == (r <= h[c - 1]));
        }
        REQUIRE_FALSE(naive.first().has_value());
    }
}

TEST_CASE("zone approximation examples") {
    const TypesOracle zeros(RectangleDecomposition{8, {}});
    for (int s : {1, 2, 4, 8}) {
        const auto zc = zone_approximation(zeros, s);
        CHECK(zc.elements().size() == 1);
        CHECK(zc.elements()[0].tag == CoverTag::Constant0);
        CHECK(zc.xi(zc.m(), zc.m()) == Cell{1, 1});
    }

    const RectangleDecomposition blocks{4, {{1, 2, 1, 2}, {3, 4, 3, 4}}};
    const auto m = realize(blocks);
    const auto zc = zone_approximation(TypesOracle(blocks), 2);
    CHECK(zc.elements().size() >= 2);
    check_xi_contract(m, zc);
    CHECK(zc.xi(1, 1) == Cell{1, 1});
    CHECK(zc.xi(2, 2) == Cell{2, 2});
    CHECK_THROWS_AS(zc.xi(3, 1), BoundsError);
}

TEST_CASE("zone approximation on generated matrices") {
    std::mt19937_64 rng(15);
    for (int round = 0; round < 24; ++round) {
        const int n = 1 << (3 + round % 5);
        const int d = 1 + round % 3;
        const auto item = testing::materialize({n, d, rng()});
        const TypesOracle oracle(item.dec);
        for (int s = 1; s <= n; s *= 2) {
            const int m = n / s;
            // Invariant II: a strip is either one element or disjoint from the covered area.
            const auto strips = strips_naive(item.matrix, s);
            std::vector<bool> covered(static_cast<std::size_t>(m) * m, false);
            std::vector<Rect> added;
            ZoneApproxOptions options;
            options.debug_checks = true;
            options.observer = [&](const CoverMaintainer&, const CoverElement& e) {
                added.push_back(e.blocks);
                for (int i = e.blocks.r1; i <= e.blocks.r2; ++i)
                    for (int j = e.blocks.c1; j <= e.blocks.c2; ++j) covered[(i - 1) * m + (j - 1)] = true;
                for (const auto& strip : strips) {
                    bool any = false;
                    for (int i = strip.blocks.r1; i <= strip.blocks.r2; ++i)
                        for (int j = strip.blocks.c1; j <= strip.blocks.c2; ++j) any |= covered[(i - 1) * m + (j - 1)];
                    if (any) REQUIRE(std::find(added.begin(), added.end(), strip.blocks) != added.end());
                }
            };
            const auto zc = zone_approximation(oracle, s, options);
            check_xi_contract(item.matrix, zc);
            // Every element is what its tag says.
            for (const auto& e : zc.elements()) {
                const auto t = classify(item.matrix, zc.to_matrix(e.blocks));
                switch (e.tag) {
                    case CoverTag::MixedZone: REQUIRE(e.blocks.area() == 1); REQUIRE(t == SubmatrixType::Mixed); break;
                    case CoverTag::VStrip: REQUIRE(t == SubmatrixType::Vertical); break;
                    case CoverTag::HStrip: REQUIRE(t == SubmatrixType::Horizontal); break;
                    case CoverTag::Constant0: REQUIRE(t == SubmatrixType::Constant0); break;
                    case CoverTag::Constant1: REQUIRE(t == SubmatrixType::Constant1); break;
                }
            }
            REQUIRE(unguarded_constants(zc, oracle).empty());
        }
    }
}

TEST_CASE("zone cover rejects an incomplete tiling") {
    CHECK_THROWS_AS(ZoneCover(4, 2, {{Rect{1, 1, 1, 2}, CoverTag::Constant0}}), BoundsError);
    CHECK_THROWS_AS(ZoneCover(4, 2, {{Rect{1, 2, 1, 2}, CoverTag::Constant0}, {Rect{1, 1, 1, 1}, CoverTag::Constant0}}),
                    OverlapError);
}
