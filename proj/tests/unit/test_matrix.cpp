#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "twinmat/errors.hpp"
#include "twinmat/matrix.hpp"

using namespace twinmat;

namespace {

BinaryMatrix random_matrix(int n, std::mt19937_64& rng, int density_pct = 50) {
    BinaryMatrix m(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m.set(i, j, static_cast<int>(rng() % 100) < density_pct);
    return m;
}

// Row/column equality checked cell by cell, independently of classify().
SubmatrixType brute_type(const BinaryMatrix& m, const Rect& z) {
    std::set<std::vector<bool>> rows, cols;
    for (int i = z.r1; i <= z.r2; ++i) {
        std::vector<bool> row;
        for (int j = z.c1; j <= z.c2; ++j) row.push_back(m.get(i, j));
        rows.insert(row);
    }
    for (int j = z.c1; j <= z.c2; ++j) {
        std::vector<bool> col;
        for (int i = z.r1; i <= z.r2; ++i) col.push_back(m.get(i, j));
        cols.insert(col);
    }
    if (rows.size() == 1 && cols.size() == 1) return m.get(z.r1, z.c1) ? SubmatrixType::Constant1 : SubmatrixType::Constant0;
    if (rows.size() == 1) return SubmatrixType::Vertical;
    if (cols.size() == 1) return SubmatrixType::Horizontal;
    return SubmatrixType::Mixed;
}

}  // namespace

TEST_CASE("matrix literals round-trip") {
    auto m = BinaryMatrix::from_literal("011;100;001");
    CHECK(m.n() == 3);
    CHECK(m.entry(1, 2));
    CHECK_FALSE(m.entry(1, 1));
    CHECK(m.to_literal() == "011;100;001");
    CHECK_THROWS_AS(BinaryMatrix::from_literal("01;1"), FormatError);
    CHECK_THROWS_AS(m.entry(0, 1), BoundsError);
    CHECK_THROWS_AS(m.entry(1, 4), BoundsError);
}

TEST_CASE("realize paints rectangles") {
    CHECK(realize({2, {}}).to_literal() == "00;00");
    CHECK(realize({2, {{1, 2, 1, 2}}}).to_literal() == "11;11");
    CHECK(realize({3, {{1, 1, 1, 3}, {3, 3, 3, 3}}}).to_literal() == "111;000;001");
    CHECK_THROWS_AS(realize({3, {{1, 2, 1, 2}, {2, 3, 2, 3}}}), OverlapError);
    CHECK_THROWS_AS(realize({3, {{1, 4, 1, 1}}}), BoundsError);
    // Touching rectangles are fine.
    CHECK(realize({2, {{1, 1, 1, 2}, {2, 2, 1, 2}}}).to_literal() == "11;11");
}

TEST_CASE("validate agrees with a painted grid") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 300; ++round) {
        const int n = 2 + static_cast<int>(rng() % 9);
        RectangleDecomposition dec{n, {}};
        const int k = static_cast<int>(rng() % 5);
        for (int t = 0; t < k; ++t) {
            int r1 = 1 + static_cast<int>(rng() % n), r2 = 1 + static_cast<int>(rng() % n);
            int c1 = 1 + static_cast<int>(rng() % n), c2 = 1 + static_cast<int>(rng() % n);
            dec.rects.push_back({std::min(r1, r2), std::max(r1, r2), std::min(c1, c2), std::max(c1, c2)});
        }
        std::vector<int> hits(static_cast<std::size_t>(n * n), 0);
        bool overlap = false;
        for (const auto& r : dec.rects)
            for (int i = r.r1; i <= r.r2; ++i)
                for (int j = r.c1; j <= r.c2; ++j) overlap |= ++hits[(i - 1) * n + (j - 1)] > 1;
        if (overlap)
            CHECK_THROWS_AS(dec.validate(), OverlapError);
        else
            CHECK_NOTHROW(dec.validate());
    }
}

TEST_CASE("classify examples") {
    const Rect full2{1, 2, 1, 2};
    CHECK(classify(BinaryMatrix::from_literal("01;01"), full2) == SubmatrixType::Vertical);
    CHECK(classify(BinaryMatrix::from_literal("00;11"), full2) == SubmatrixType::Horizontal);
    CHECK(classify(BinaryMatrix::from_literal("01;11"), full2) == SubmatrixType::Mixed);
    CHECK(classify(BinaryMatrix::from_literal("11;11"), full2) == SubmatrixType::Constant1);
    CHECK(classify(BinaryMatrix::from_literal("00;00"), full2) == SubmatrixType::Constant0);
    CHECK_THROWS_AS(classify(BinaryMatrix(2), Rect{1, 3, 1, 1}), BoundsError);
}

TEST_CASE("classify matches brute force and the corner criterion") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 12; ++round) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const auto m = random_matrix(n, rng, round % 2 ? 20 : 50);
        const auto cs = corners(m);
        for (int r1 = 1; r1 <= n; ++r1)
            for (int r2 = r1; r2 <= n; ++r2)
                for (int c1 = 1; c1 <= n; ++c1)
                    for (int c2 = c1; c2 <= n; ++c2) {
                        const Rect z{r1, r2, c1, c2};
                        const auto t = classify(m, z);
                        REQUIRE(t == brute_type(m, z));
                        bool has_corner = false;
                        for (auto [i, j] : cs) has_corner |= r1 <= i && i + 1 <= r2 && c1 <= j && j + 1 <= c2;
                        REQUIRE((t == SubmatrixType::Mixed) == has_corner);
                    }
    }
}

TEST_CASE("corners examples") {
    CHECK(corners(BinaryMatrix::from_literal("00;00")).empty());
    CHECK(corners(BinaryMatrix::from_literal("01;11")) == std::vector<std::pair<int, int>>{{1, 1}});
    CHECK(corners(BinaryMatrix::from_literal("10;01")) == std::vector<std::pair<int, int>>{{1, 1}});
    CHECK(corners(BinaryMatrix::from_literal("01;01")).empty());
}

TEST_CASE("zone bounds of regular divisions") {
    CHECK(zone_bounds({4, 2}, 1, 1) == Rect{1, 2, 1, 2});
    CHECK(zone_bounds({4, 2}, 2, 2) == Rect{3, 4, 3, 4});
    CHECK(zone_bounds({5, 2}, 3, 3) == Rect{5, 5, 5, 5});
    CHECK(RegularDivision{5, 2}.blocks() == 3);
    CHECK_THROWS_AS(zone_bounds({4, 2}, 3, 1), BoundsError);
}

TEST_CASE("zone families deduplicate by content") {
    CHECK(zone_family_naive(BinaryMatrix(4), 2).size() == 1);
    CHECK(zone_family_naive(BinaryMatrix::from_literal("01;10"), 1).size() == 2);
    const auto f = zone_family_naive(BinaryMatrix::from_literal("1100;1100;0011;0011"), 2);
    REQUIRE(f.size() == 2);
    std::set<std::string> keys;
    for (const auto& z : f) keys.insert(z.key());
    CHECK(keys.count(BinaryMatrix(4).zone({1, 2, 1, 2}).key()) == 1);
    // Last blocks are smaller when s does not divide n: 2x2, 2x1, 1x2 and 1x1 shapes.
    CHECK(zone_family_naive(BinaryMatrix(5), 2).size() == 4);
}

TEST_CASE("diagnostics examples") {
    for (int s : {1, 2, 3}) CHECK(diagnostics(BinaryMatrix(6), s) == Diagnostics{});
    const auto d = diagnostics(BinaryMatrix::from_literal("01;11"), 1);
    CHECK(d.split_corners == 1);
    CHECK(d.mixed_zones == 0);
    CHECK(d.mixed_cuts == 0);
    // 1x1 zones are constant, so there is no non-constant zone to form a strip.
    CHECK(diagnostics(BinaryMatrix::from_literal("01;01"), 1).vertical_strips == 0);
    const auto whole = diagnostics(BinaryMatrix::from_literal("01;01"), 2);
    CHECK(whole.vertical_strips == 1);
    CHECK(whole.horizontal_strips == 0);
}

TEST_CASE("mixed cuts and strips on a hand-made matrix") {
    // Corners at (1,1), (1,2), (2,1), (3,2): (1,1) lies inside zone (1,1), the
    // other three straddle three different cuts.
    const auto m = BinaryMatrix::from_literal("0000;0100;1100;0000");
    const auto d = diagnostics(m, 2);
    CHECK(d.split_corners == 0);
    CHECK(d.mixed_cuts == 3);
    CHECK(d.mixed_zones == 1);
    CHECK(d.horizontal_strips == 1);

    // Two stacked vertical zones with identical rows form one strip.
    const auto v = BinaryMatrix::from_literal("0101;0101;0101;0101");
    const auto strips = strips_naive(v, 2);
    int vertical = 0;
    for (const auto& s : strips) {
        if (!s.vertical) continue;
        ++vertical;
        CHECK(s.blocks.r1 == 1);
        CHECK(s.blocks.r2 == 2);
    }
    CHECK(vertical == 2);
}

TEST_CASE("decomposition text format") {
    std::istringstream in("3 2\n1 1 1 3\n3 3 3 3\n");
    const auto dec = parse_decomposition(in);
    CHECK(dec.n == 3);
    CHECK(dec.rects.size() == 2);
    std::ostringstream out;
    write_decomposition(out, dec);
    CHECK(out.str() == "3 2\n1 1 1 3\n3 3 3 3\n");

    std::istringstream bad("3 2\n1 1 1 3\n3 x 3 3\n");
    try {
        parse_decomposition(bad);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.line() == 3);
    }
    std::istringstream short_input("3 2\n1 1 1 3\n");
    CHECK_THROWS_AS(parse_decomposition(short_input), FormatError);
}
