#pragma once

// Granularities m_0 = n > m_1 > ... > m_l of the layered oracle. Sides shrink
// to the largest power of two not above m^(2/3) while m >= log^3 n, then halve,
// and stop at the first m below log n / (2 beta).

#include <vector>

namespace twinmat {

struct Schedule {
    int n = 0;
    double beta = 1.0;
    std::vector<int> m;

    int levels() const noexcept { return static_cast<int>(m.size()) - 1; }
    bool operator==(const Schedule&) const = default;
};

// Throws InvalidN unless n is a power of two >= 2, BoundsError unless beta > 0.
Schedule make_schedule(int n, double beta);

// ceil(log_{3/2} log2 n) + ceil(log2(log2^3 n)) + 2.
int schedule_depth_bound(int n);

}  // namespace twinmat
