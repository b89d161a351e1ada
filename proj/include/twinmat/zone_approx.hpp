#pragma once

// Partition of the blocks of an s-regular division into mixed zones, strips
// and constant submatrices, with a point locator mapping every block to the
// top-left block (its representative) of the part that contains it.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twinmat/cover_maintainer.hpp"
#include "twinmat/geom/point_locator.hpp"
#include "twinmat/matrix.hpp"
#include "twinmat/submatrix_types.hpp"

namespace twinmat {

enum class CoverTag : std::uint8_t { MixedZone, VStrip, HStrip, Constant0, Constant1 };

const char* to_string(CoverTag t) noexcept;

struct CoverElement {
    Rect blocks;  // block coordinates, 1-based inclusive
    CoverTag tag = CoverTag::MixedZone;
};

class ZoneCover {
public:
    // Throws BoundsError / OverlapError if `elements` do not tile the m x m grid.
    ZoneCover(int n, int s, std::vector<CoverElement> elements);

    int n() const noexcept { return n_; }
    int s() const noexcept { return s_; }
    int m() const noexcept { return m_; }
    const std::vector<CoverElement>& elements() const noexcept { return elements_; }

    // Index into elements() of the part containing block (i, j).
    std::size_t element_at(int i, int j) const;
    // Representative (top-left block) of the part containing block (i, j).
    std::pair<int, int> xi(int i, int j) const;

    // Matrix rectangle spanned by a block rectangle.
    Rect to_matrix(const Rect& blocks) const;

private:
    int n_, s_, m_;
    std::vector<CoverElement> elements_;
    geom::PointLocator locator_;
};

struct ZoneApproxOptions {
    // Re-check column-prefix coverage and disjointness against a naive grid
    // after every step.
    bool debug_checks = false;
    // Called after each element is added.
    std::function<void(const CoverMaintainer&, const CoverElement&)> observer;
};

ZoneCover zone_approximation(const TypesOracle& oracle, int s, const ZoneApproxOptions& options = {});

// Interior constant elements whose one-block shell is not mixed.
std::vector<std::size_t> unguarded_constants(const ZoneCover& cover, const TypesOracle& oracle);

}  // namespace twinmat
