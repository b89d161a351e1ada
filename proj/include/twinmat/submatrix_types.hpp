#pragma once

// Submatrix type oracle over a rectangle decomposition.
//
// Geometry lives in doubled coordinates: cell (i, j) is the unit square
// [2j-2, 2j] x [2i-2, 2i], so its centre (2j-1, 2i-1) never lies on a
// boundary. The boundary of the union of the rectangles is split into
// maximal horizontal and vertical segments; corners (mixed 2x2 windows) are
// indexed for range-emptiness queries.

#include <cstdint>
#include <vector>

#include "twinmat/geom/point_locator.hpp"
#include "twinmat/geom/range_emptiness.hpp"
#include "twinmat/geom/ray_shooter.hpp"
#include "twinmat/matrix.hpp"

namespace twinmat {

struct AreaBoundary {
    std::vector<geom::HSegment> horizontal;  // y even, spans in doubled x
    std::vector<geom::HSegment> vertical;    // transposed: y holds the x line, x1..x2 the y span
    std::vector<std::pair<int, int>> corners;  // (j, i): corner at rows i, i+1 and columns j, j+1
};

// Maximal segments of the boundary of the union of `dec` (doubled coordinates).
AreaBoundary area_boundary(const RectangleDecomposition& dec);

struct TypesOracleStats {
    std::size_t rects = 0;
    std::size_t horizontal_segments = 0;
    std::size_t vertical_segments = 0;
    std::size_t corners = 0;
    std::uint64_t bits = 0;
};

class TypesOracle {
public:
    // Throws OverlapError / BoundsError for an invalid decomposition.
    explicit TypesOracle(const RectangleDecomposition& dec);

    int n() const noexcept { return n_; }
    bool entry(int i, int j) const;
    SubmatrixType query_type(const Rect& z) const;

    const std::vector<std::pair<int, int>>& corners() const noexcept { return corners_; }
    TypesOracleStats stats() const;

private:
    bool has_corner(const Rect& z) const;
    bool entry_unchecked(int i, int j) const;

    int n_;
    std::size_t rect_count_;
    geom::PointLocator cells_;
    geom::RangeEmptiness corner_index_;
    geom::RayShooter horizontal_;  // crossed by vertical query segments
    geom::RayShooter vertical_;    // transposed; crossed by horizontal query segments
    std::vector<std::pair<int, int>> corners_;
};

}  // namespace twinmat
