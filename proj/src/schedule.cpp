#include "twinmat/schedule.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "twinmat/errors.hpp"

namespace twinmat {

Schedule make_schedule(int n, double beta) {
    if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw InvalidN("n = " + std::to_string(n) + " is not a power of two >= 2");
    if (!(beta > 0.0)) throw BoundsError("beta must be positive");
    const int log_n = std::countr_zero(static_cast<unsigned>(n));
    const double cube = static_cast<double>(log_n) * log_n * log_n;
    const double threshold = log_n / (2.0 * beta);

    Schedule s{n, beta, {n}};
    // m == 1 cannot shrink further, whatever the threshold.
    while (s.m.back() >= threshold && s.m.back() > 1) {
        const int m = s.m.back();
        const int e = std::countr_zero(static_cast<unsigned>(m));
        s.m.push_back(m >= cube ? 1 << (2 * e / 3) : m / 2);
    }
    return s;
}

int schedule_depth_bound(int n) {
    const double log_n = std::log2(static_cast<double>(n));
    const int shrink = log_n > 1.0 ? static_cast<int>(std::ceil(std::log(log_n) / std::log(1.5))) : 0;
    const int halve = log_n > 1.0 ? static_cast<int>(std::ceil(std::log2(log_n * log_n * log_n))) : 1;
    return shrink + halve + 2;
}

}  // namespace twinmat
