#include "twinmat/cover_maintainer.hpp"

#include <string>

#include "twinmat/errors.hpp"

namespace twinmat {

CoverMaintainer::CoverMaintainer(int m) : m_(m) {
    if (m < 1) throw BoundsError("cover grid must have positive side");
    add({0, 1, m});
}

void CoverMaintainer::add(const HeightRun& run) {
    by_pos_.emplace(run.l, run);
    by_key_.emplace(run.h, run.l);
}

void CoverMaintainer::erase(const HeightRun& run) {
    by_pos_.erase(run.l);
    by_key_.erase({run.h, run.l});
}

std::optional<std::pair<int, int>> CoverMaintainer::get_first() const {
    const auto [h, l] = *by_key_.begin();
    if (h == m_) return std::nullopt;
    return std::pair{h + 1, l};
}

int CoverMaintainer::extend_right() const {
    const auto [h, l] = *by_key_.begin();
    if (h == m_) throw EmptyError("grid fully covered");
    return by_pos_.at(l).r;
}

void CoverMaintainer::cover(int i2, int j2) {
    const auto [h, l] = *by_key_.begin();
    if (h == m_) throw ContractViolation("cover on a fully covered grid");
    const HeightRun first = by_pos_.at(l);
    if (i2 <= h || i2 > m_ || j2 < l || j2 > first.r)
        throw ContractViolation("cover(" + std::to_string(i2) + ", " + std::to_string(j2) + ") outside the allowed range");

    erase(first);
    HeightRun raised{i2, l, j2};
    if (j2 < first.r) add({h, j2 + 1, first.r});

    // Merge with equal-height neighbours.
    auto right = by_pos_.find(j2 + 1);
    if (right != by_pos_.end() && right->second.h == i2) {
        raised.r = right->second.r;
        erase(HeightRun{right->second});
    }
    auto left = by_pos_.lower_bound(l);
    if (left != by_pos_.begin()) {
        const HeightRun prev = std::prev(left)->second;
        if (prev.h == i2) {
            raised.l = prev.l;
            erase(prev);
        }
    }
    add(raised);
}

std::vector<HeightRun> CoverMaintainer::runs() const {
    std::vector<HeightRun> out;
    out.reserve(by_pos_.size());
    for (const auto& [l, run] : by_pos_) out.push_back(run);
    return out;
}

std::vector<int> CoverMaintainer::heights() const {
    std::vector<int> out(static_cast<std::size_t>(m_));
    for (const auto& [l, run] : by_pos_)
        for (int j = run.l; j <= run.r; ++j) out[j - 1] = run.h;
    return out;
}

}  // namespace twinmat
