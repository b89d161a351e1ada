#include "twinmat/submatrix_types.hpp"

#include <algorithm>
#include <map>

#include "twinmat/errors.hpp"

namespace twinmat {

namespace {

using Span = std::pair<std::int64_t, std::int64_t>;

// Parts of the line covered by exactly one span, as maximal closed spans.
std::vector<Span> covered_once(std::vector<Span> spans) {
    std::vector<std::pair<std::int64_t, int>> events;
    events.reserve(spans.size() * 2);
    for (const auto& [a, b] : spans) {
        events.emplace_back(a, +1);
        events.emplace_back(b, -1);
    }
    std::sort(events.begin(), events.end());
    std::vector<Span> out;
    int depth = 0;
    for (std::size_t t = 0; t < events.size();) {
        const std::int64_t x = events[t].first;
        for (; t < events.size() && events[t].first == x; ++t) depth += events[t].second;
        if (t == events.size()) break;
        const std::int64_t next = events[t].first;
        if (depth != 1) continue;
        if (!out.empty() && out.back().second == x)
            out.back().second = next;
        else
            out.emplace_back(x, next);
    }
    return out;
}

std::vector<geom::HSegment> boundary_on_lines(std::map<std::int64_t, std::vector<Span>>& lines) {
    std::vector<geom::HSegment> out;
    for (auto& [line, spans] : lines)
        for (const auto& [a, b] : covered_once(std::move(spans))) out.push_back({line, a, b});
    return out;
}

std::vector<geom::LocatedRect> doubled_cells(const RectangleDecomposition& dec) {
    std::vector<geom::LocatedRect> out;
    out.reserve(dec.rects.size());
    for (const auto& r : dec.rects) {
        if (!r.inside(dec.n)) throw BoundsError("rectangle exceeds the matrix");
        out.push_back({2LL * (r.c1 - 1), 2LL * r.c2, 2LL * (r.r1 - 1), 2LL * r.r2, 0});
    }
    return out;
}

}  // namespace

AreaBoundary area_boundary(const RectangleDecomposition& dec) {
    std::map<std::int64_t, std::vector<Span>> rows, cols;
    for (const auto& r : dec.rects) {
        const Span xs{2LL * (r.c1 - 1), 2LL * r.c2}, ys{2LL * (r.r1 - 1), 2LL * r.r2};
        rows[ys.first].push_back(xs);
        rows[ys.second].push_back(xs);
        cols[xs.first].push_back(ys);
        cols[xs.second].push_back(ys);
    }
    AreaBoundary out;
    out.horizontal = boundary_on_lines(rows);
    out.vertical = boundary_on_lines(cols);
    return out;
}

TypesOracle::TypesOracle(const RectangleDecomposition& dec)
    : n_(dec.n),
      rect_count_(dec.rects.size()),
      cells_(2LL * dec.n, 2LL * dec.n, doubled_cells(dec)) {
    if (n_ < 1) throw BoundsError("matrix side must be positive");
    AreaBoundary boundary = area_boundary(dec);

    // Every corner window contains a corner cell of some rectangle.
    std::vector<std::pair<int, int>> found;
    auto probe_window = [&](int i, int j) {
        if (i < 1 || j < 1 || i >= n_ || j >= n_) return;
        const bool a = entry_unchecked(i, j), b = entry_unchecked(i, j + 1);
        const bool c = entry_unchecked(i + 1, j), d = entry_unchecked(i + 1, j + 1);
        const bool rows_same = a == c && b == d;
        const bool cols_same = a == b && c == d;
        if (!rows_same && !cols_same) found.emplace_back(j, i);
    };
    for (const auto& r : dec.rects)
        for (int ci : {r.r1, r.r2})
            for (int cj : {r.c1, r.c2})
                for (int di = -1; di <= 0; ++di)
                    for (int dj = -1; dj <= 0; ++dj) probe_window(ci + di, cj + dj);
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    corners_ = std::move(found);

    std::vector<geom::GridPoint> points;
    points.reserve(corners_.size());
    for (const auto& [j, i] : corners_) points.push_back({j, i});
    corner_index_ = geom::RangeEmptiness(std::move(points));
    horizontal_ = geom::RayShooter(2LL * n_, std::move(boundary.horizontal));
    vertical_ = geom::RayShooter(2LL * n_, std::move(boundary.vertical));
}

bool TypesOracle::entry_unchecked(int i, int j) const {
    return cells_.locate(2LL * j - 1, 2LL * i - 1).has_value();
}

bool TypesOracle::entry(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw BoundsError("entry outside the matrix");
    return entry_unchecked(i, j);
}

bool TypesOracle::has_corner(const Rect& z) const {
    return z.r1 < z.r2 && z.c1 < z.c2 && !corner_index_.empty(z.c1, z.c2 - 1, z.r1, z.r2 - 1);
}

SubmatrixType TypesOracle::query_type(const Rect& z) const {
    if (!z.inside(n_)) throw BoundsError("submatrix outside the matrix");
    if (has_corner(z)) return SubmatrixType::Mixed;
    // Column c1 constant: with no corner inside, every row equals every other.
    const bool vertical = horizontal_.seg_intersect_empty(2LL * z.c1 - 1, 2LL * z.r1 - 1, 2LL * z.r2 - 1);
    const bool horizontal = vertical_.seg_intersect_empty(2LL * z.r1 - 1, 2LL * z.c1 - 1, 2LL * z.c2 - 1);
    if (vertical && horizontal)
        return entry_unchecked(z.r1, z.c1) ? SubmatrixType::Constant1 : SubmatrixType::Constant0;
    if (vertical) return SubmatrixType::Vertical;
    if (horizontal) return SubmatrixType::Horizontal;
    throw ConstructionInvariantError("corner-free submatrix is neither vertical nor horizontal");
}

TypesOracleStats TypesOracle::stats() const {
    TypesOracleStats s;
    s.rects = rect_count_;
    s.horizontal_segments = horizontal_.segments().size();
    s.vertical_segments = vertical_.segments().size();
    s.corners = corners_.size();
    s.bits = cells_.bitsize() + corner_index_.bitsize() + horizontal_.bitsize() + vertical_.bitsize();
    return s;
}

}  // namespace twinmat
