#include "twinmat/zone_approx.hpp"

#include <string>

#include "twinmat/errors.hpp"

namespace twinmat {

namespace {

std::vector<geom::LocatedRect> block_regions(const std::vector<CoverElement>& elements) {
    std::vector<geom::LocatedRect> out;
    out.reserve(elements.size());
    for (std::size_t t = 0; t < elements.size(); ++t) {
        const Rect& b = elements[t].blocks;
        out.push_back({b.c1 - 1LL, b.c2, b.r1 - 1LL, b.r2, static_cast<std::uint32_t>(t)});
    }
    return out;
}

// Largest x in [lo, hi] with ok(x), given ok(lo) and ok monotone decreasing.
template <class Pred>
int last_true(int lo, int hi, Pred ok) {
    while (lo < hi) {
        const int mid = lo + (hi - lo + 1) / 2;
        if (ok(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

class NaiveGrid {
public:
    explicit NaiveGrid(int m) : m_(m), covered_(static_cast<std::size_t>(m) * m, false) {}

    void add(const Rect& b) {
        for (int i = b.r1; i <= b.r2; ++i)
            for (int j = b.c1; j <= b.c2; ++j) {
                const std::size_t k = index(i, j);
                if (covered_[k]) throw ConstructionInvariantError("cover element overlaps an earlier one");
                covered_[k] = true;
            }
    }

    void check_prefix(const CoverMaintainer& cm) const {
        const auto h = cm.heights();
        for (int j = 1; j <= m_; ++j)
            for (int i = 1; i <= m_; ++i)
                if (covered_[index(i, j)] != (i <= h[j - 1]))
                    throw ConstructionInvariantError("covered blocks are not a column prefix");
    }

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i - 1) * m_ + (j - 1); }

    int m_;
    std::vector<bool> covered_;
};

}  // namespace

const char* to_string(CoverTag t) noexcept {
    switch (t) {
        case CoverTag::MixedZone: return "mixed";
        case CoverTag::VStrip: return "vstrip";
        case CoverTag::HStrip: return "hstrip";
        case CoverTag::Constant0: return "const0";
        case CoverTag::Constant1: return "const1";
    }
    return "?";
}

ZoneCover::ZoneCover(int n, int s, std::vector<CoverElement> elements)
    : n_(n),
      s_(s),
      m_(RegularDivision{n, s}.blocks()),
      elements_(std::move(elements)),
      locator_(m_, m_, block_regions(elements_)) {
    long long area = 0;
    for (const auto& e : elements_) area += e.blocks.area();
    if (area != static_cast<long long>(m_) * m_) throw BoundsError("cover elements do not tile the grid");
}

std::size_t ZoneCover::element_at(int i, int j) const {
    if (i < 1 || i > m_ || j < 1 || j > m_) throw BoundsError("block outside the grid");
    const auto hit = locator_.locate(j - 1, i - 1);
    if (!hit) throw ConstructionInvariantError("block not covered");
    return *hit;
}

std::pair<int, int> ZoneCover::xi(int i, int j) const {
    const Rect& b = elements_[element_at(i, j)].blocks;
    return {b.r1, b.c1};
}

Rect ZoneCover::to_matrix(const Rect& b) const {
    return Rect{(b.r1 - 1) * s_ + 1, std::min(b.r2 * s_, n_), (b.c1 - 1) * s_ + 1, std::min(b.c2 * s_, n_)};
}

ZoneCover zone_approximation(const TypesOracle& oracle, int s, const ZoneApproxOptions& options) {
    const int n = oracle.n();
    if (s < 1 || s > n) throw BoundsError("zone size must lie in [1, n]");
    const RegularDivision div{n, s};
    const int m = div.blocks();
    auto type_of = [&](int i1, int i2, int j1, int j2) {
        const Rect top = zone_bounds(div, i1, j1), bottom = zone_bounds(div, i2, j2);
        return oracle.query_type(Rect{top.r1, bottom.r2, top.c1, bottom.c2});
    };

    CoverMaintainer cm(m);
    std::optional<NaiveGrid> grid;
    if (options.debug_checks) grid.emplace(m);
    std::vector<CoverElement> elements;

    while (auto first = cm.get_first()) {
        const auto [i, j] = *first;
        const int jmax = cm.extend_right();
        const SubmatrixType t = type_of(i, i, j, j);
        CoverElement e;
        switch (t) {
            case SubmatrixType::Mixed:
                e = {Rect{i, i, j, j}, CoverTag::MixedZone};
                break;
            case SubmatrixType::Vertical: {
                const int i2 = last_true(i, m, [&](int x) { return type_of(i, x, j, j) == SubmatrixType::Vertical; });
                e = {Rect{i, i2, j, j}, CoverTag::VStrip};
                break;
            }
            case SubmatrixType::Horizontal: {
                const int j2 = last_true(j, jmax, [&](int y) { return type_of(i, i, j, y) == SubmatrixType::Horizontal; });
                e = {Rect{i, i, j, j2}, CoverTag::HStrip};
                break;
            }
            case SubmatrixType::Constant0:
            case SubmatrixType::Constant1: {
                const int i2 = last_true(i, m, [&](int x) { return type_of(i, x, j, j) == t; });
                const int j2 = last_true(j, jmax, [&](int y) { return type_of(i, i2, j, y) == t; });
                e = {Rect{i, i2, j, j2}, t == SubmatrixType::Constant0 ? CoverTag::Constant0 : CoverTag::Constant1};
                break;
            }
        }
        cm.cover(e.blocks.r2, e.blocks.c2);
        if (grid) {
            grid->add(e.blocks);
            grid->check_prefix(cm);
        }
        elements.push_back(e);
        if (options.observer) options.observer(cm, e);
    }
    return ZoneCover(n, s, std::move(elements));
}

std::vector<std::size_t> unguarded_constants(const ZoneCover& cover, const TypesOracle& oracle) {
    std::vector<std::size_t> out;
    const int m = cover.m();
    for (std::size_t t = 0; t < cover.elements().size(); ++t) {
        const auto& e = cover.elements()[t];
        if (e.tag != CoverTag::Constant0 && e.tag != CoverTag::Constant1) continue;
        const Rect& b = e.blocks;
        if (b.r1 == 1 || b.c1 == 1 || b.r2 == m || b.c2 == m) continue;
        const Rect shell = cover.to_matrix(Rect{b.r1 - 1, b.r2 + 1, b.c1 - 1, b.c2 + 1});
        if (oracle.query_type(shell) != SubmatrixType::Mixed) out.push_back(t);
    }
    return out;
}

}  // namespace twinmat
