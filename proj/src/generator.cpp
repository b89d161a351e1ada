#include <algorithm>
#include <random>

#include "twinmat/contraction.hpp"
#include "twinmat/errors.hpp"

namespace twinmat {

namespace {

constexpr std::uint8_t kMixed = 2;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
    bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }
    std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() & 1u); }

private:
    std::mt19937_64 engine_;
};

// Builds the division sequence top-down: starting from the coarsest division,
// blocks are split one at a time. A constant zone passes its value to both
// halves; a non-constant zone picks the values of its halves subject to the
// per-block budget of d non-constant zones. Reversing the splits yields the
// contraction sequence.
class SplitBuilder {
public:
    SplitBuilder(int n, int d, std::uint64_t seed, const GeneratorOptions& options)
        : n_(n), d_(d), rng_(seed), options_(options) {
        const auto nn = static_cast<std::size_t>(n);
        value_.assign(nn * nn, 0);
        row_mixed_.assign(nn, 0);
        col_mixed_.assign(nn, 0);
        rows_ = {0};
        cols_ = {0};
        if (d >= 1 && n >= 2) {
            value_[0] = kMixed;
            row_mixed_[0] = col_mixed_[0] = 1;
        } else {
            value_[0] = rng_.bit();
        }
    }

    GeneratedMatrix run() {
        int rows_left = n_ - 1, cols_left = n_ - 1;
        std::vector<MergeStep> splits;
        splits.reserve(static_cast<std::size_t>(2 * n_));
        while (rows_left + cols_left > 0) {
            const bool split_rows = rng_.below(static_cast<std::uint64_t>(rows_left + cols_left)) <
                                    static_cast<std::uint64_t>(rows_left);
            splits.push_back(split(split_rows));
            (split_rows ? rows_left : cols_left) -= 1;
        }

        GeneratedMatrix out{BinaryMatrix(n_), ContractionSequence{n_, {}}};
        const auto nn = static_cast<std::size_t>(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (value_[i * nn + j] == 1) out.matrix.set(i + 1, j + 1, true);
        out.sequence.steps.assign(splits.rbegin(), splits.rend());
        return out;
    }

private:
    int extent_end(const std::vector<int>& starts, std::size_t q) const {
        return q + 1 < starts.size() ? starts[q + 1] - 1 : n_ - 1;
    }

    std::uint8_t& at(bool rows, int id, int other_id) {
        const auto nn = static_cast<std::size_t>(n_);
        return rows ? value_[id * nn + other_id] : value_[other_id * nn + id];
    }

    MergeStep split(bool rows) {
        auto& mine = rows ? rows_ : cols_;
        auto& other = rows ? cols_ : rows_;
        auto& mine_mixed = rows ? row_mixed_ : col_mixed_;
        auto& other_mixed = rows ? col_mixed_ : row_mixed_;

        std::vector<std::size_t> splittable;
        for (std::size_t q = 0; q < mine.size(); ++q)
            if (extent_end(mine, q) > mine[q]) splittable.push_back(q);
        const std::size_t q = splittable[rng_.below(splittable.size())];
        const int a = mine[q];
        const int a_end = extent_end(mine, q);
        const int b = a + 1 + static_cast<int>(rng_.below(static_cast<std::uint64_t>(a_end - a)));
        const long long top_len = b - a, bottom_len = a_end - b + 1;

        int top_mixed = 0, bottom_mixed = 0;
        for (std::size_t r = 0; r < other.size(); ++r) {
            const int c = other[r];
            const long long width = extent_end(other, r) - c + 1;
            auto& parent = at(rows, a, c);
            auto& child = at(rows, b, c);
            if (parent != kMixed) {
                child = parent;
                continue;
            }
            // A non-constant zone keeps at least one non-constant half while
            // that half has more than one cell, and both halves with
            // probability `divergence` if the column budget allows.
            const bool top_can = top_len * width > 1, bottom_can = bottom_len * width > 1;
            std::uint8_t x = rng_.bit(), y = rng_.bit();
            if (top_can && bottom_can && other_mixed[c] + 1 <= d_ && rng_.chance(options_.divergence)) {
                x = y = kMixed;
            } else if (top_can && (!bottom_can || rng_.bit())) {
                x = kMixed;
            } else if (bottom_can) {
                y = kMixed;
            } else if (x == y) {
                y = static_cast<std::uint8_t>(1 - y);
            }
            other_mixed[c] += (x == kMixed) + (y == kMixed) - 1;
            top_mixed += (x == kMixed);
            bottom_mixed += (y == kMixed);
            parent = x;
            child = y;
        }
        mine_mixed[a] = top_mixed;
        mine_mixed[b] = bottom_mixed;
        mine.insert(mine.begin() + static_cast<std::ptrdiff_t>(q) + 1, b);
        return MergeStep{rows ? Axis::Rows : Axis::Cols, static_cast<int>(q) + 1};
    }

    int n_;
    int d_;
    Rng rng_;
    GeneratorOptions options_;
    std::vector<std::uint8_t> value_;
    std::vector<int> rows_, cols_;
    std::vector<int> row_mixed_, col_mixed_;
};

}  // namespace

GeneratedMatrix generate(int n, int d, std::uint64_t seed, const GeneratorOptions& options) {
    if (n < 1) throw BoundsError("generator needs n >= 1");
    if (d < 0) throw BoundsError("generator needs d >= 0");
    return SplitBuilder(n, d, seed, options).run();
}

}  // namespace twinmat
