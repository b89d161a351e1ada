#include "twinmat/contraction.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "twinmat/errors.hpp"

namespace twinmat {

Division Division::finest(int n) {
    Division d;
    d.n = n;
    for (int i = 1; i <= n; ++i) {
        d.row_starts.push_back(i);
        d.col_starts.push_back(i);
    }
    return d;
}

Division Division::coarsest(int n) {
    return Division{n, {1}, {1}};
}

std::pair<int, int> Division::row_block(int p) const {
    const int end = p < static_cast<int>(row_starts.size()) ? row_starts[p] - 1 : n;
    return {row_starts[p - 1], end};
}

std::pair<int, int> Division::col_block(int p) const {
    const int end = p < static_cast<int>(col_starts.size()) ? col_starts[p] - 1 : n;
    return {col_starts[p - 1], end};
}

void Division::apply(const MergeStep& step) {
    auto& starts = step.axis == Axis::Rows ? row_starts : col_starts;
    if (step.p < 1 || step.p >= static_cast<int>(starts.size()))
        throw MalformedSequence("merge index " + std::to_string(step.p) + " out of range");
    starts.erase(starts.begin() + step.p);
}

void Division::validate() const {
    auto check = [this](const std::vector<int>& starts) {
        if (starts.empty() || starts.front() != 1) throw MalformedSequence("division must start at index 1");
        for (std::size_t k = 1; k < starts.size(); ++k)
            if (starts[k] <= starts[k - 1] || starts[k] > n) throw MalformedSequence("division blocks not consecutive");
    };
    check(row_starts);
    check(col_starts);
}

int error_value(const BinaryMatrix& m, const Division& div) {
    div.validate();
    const int rb = static_cast<int>(div.row_starts.size());
    const int cb = static_cast<int>(div.col_starts.size());
    std::vector<int> row_count(rb, 0), col_count(cb, 0);
    for (int p = 1; p <= rb; ++p) {
        auto [r1, r2] = div.row_block(p);
        for (int q = 1; q <= cb; ++q) {
            auto [c1, c2] = div.col_block(q);
            if (!is_constant(classify(m, Rect{r1, r2, c1, c2}))) {
                ++row_count[p - 1];
                ++col_count[q - 1];
            }
        }
    }
    int best = 0;
    for (int v : row_count) best = std::max(best, v);
    for (int v : col_count) best = std::max(best, v);
    return best;
}

namespace {

constexpr std::uint8_t kMixed = 2;

// Replays a contraction sequence while tracking the value of every zone:
// 0 / 1 for constant zones, kMixed for non-constant ones. Blocks are
// identified by their 0-based first index, so a zone's value lives at
// value[row_id * n + col_id] for as long as that zone exists.
class ZoneReplay {
public:
    explicit ZoneReplay(const BinaryMatrix& m) : n_(m.n()) {
        const auto n = static_cast<std::size_t>(n_);
        value_.resize(n * n);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) value_[i * n + j] = m.get(i + 1, j + 1) ? 1 : 0;
        for (int i = 0; i < n_; ++i) {
            rows_.push_back(i);
            cols_.push_back(i);
        }
        row_mixed_.assign(n, 0);
        col_mixed_.assign(n, 0);
    }

    int error() const {
        int best = 0;
        for (int id : rows_) best = std::max(best, row_mixed_[id]);
        for (int id : cols_) best = std::max(best, col_mixed_[id]);
        return best;
    }

    // `lost` is called for every zone that disappears in the merge with the
    // zone's rectangle, its value and the value of the zone that replaces it.
    template <class OnLost>
    void merge(const MergeStep& step, OnLost&& lost) {
        const bool rows = step.axis == Axis::Rows;
        auto& mine = rows ? rows_ : cols_;
        auto& other = rows ? cols_ : rows_;
        auto& mine_mixed = rows ? row_mixed_ : col_mixed_;
        auto& other_mixed = rows ? col_mixed_ : row_mixed_;
        if (step.p < 1 || step.p >= static_cast<int>(mine.size()))
            throw MalformedSequence("merge index " + std::to_string(step.p) + " out of range");

        const int a = mine[step.p - 1];
        const int b = mine[step.p];
        const int b_end = step.p + 1 < static_cast<int>(mine.size()) ? mine[step.p + 1] - 1 : n_ - 1;
        int merged_mixed = 0;
        for (std::size_t q = 0; q < other.size(); ++q) {
            const int c = other[q];
            const int c_end = q + 1 < other.size() ? other[q + 1] - 1 : n_ - 1;
            auto& va = at(rows, a, c);
            const std::uint8_t vb = at(rows, b, c);
            const std::uint8_t v = (va == vb && va != kMixed) ? va : kMixed;
            other_mixed[c] += (v == kMixed) - (va == kMixed) - (vb == kMixed);
            merged_mixed += (v == kMixed);
            lost(rect(rows, a, b - 1, c, c_end), va, v);
            lost(rect(rows, b, b_end, c, c_end), vb, v);
            va = v;
        }
        mine_mixed[a] = merged_mixed;
        mine_mixed[b] = 0;
        mine.erase(mine.begin() + step.p);
    }

    bool coarsest() const { return rows_.size() == 1 && cols_.size() == 1; }
    std::uint8_t root_value() const { return value_[0]; }

private:
    std::uint8_t& at(bool rows, int id, int other_id) {
        const auto n = static_cast<std::size_t>(n_);
        return rows ? value_[id * n + other_id] : value_[other_id * n + id];
    }

    // 0-based inclusive extents along the merged axis (lo..hi) and the other
    // axis (olo..ohi), converted to a 1-based Rect.
    Rect rect(bool rows, int lo, int hi, int olo, int ohi) const {
        return rows ? Rect{lo + 1, hi + 1, olo + 1, ohi + 1} : Rect{olo + 1, ohi + 1, lo + 1, hi + 1};
    }

    int n_;
    std::vector<std::uint8_t> value_;
    std::vector<int> rows_, cols_;
    std::vector<int> row_mixed_, col_mixed_;
};

void check_shape(const BinaryMatrix& m, const ContractionSequence& seq) {
    if (seq.n != m.n()) throw MalformedSequence("sequence side does not match matrix");
    if (static_cast<long long>(seq.steps.size()) != 2LL * seq.n - 2)
        throw MalformedSequence("sequence must have exactly 2n-2 steps");
}

}  // namespace

std::vector<int> error_trace(const BinaryMatrix& m, const ContractionSequence& seq) {
    check_shape(m, seq);
    ZoneReplay replay(m);
    std::vector<int> trace{replay.error()};
    for (const auto& step : seq.steps) {
        replay.merge(step, [](const Rect&, std::uint8_t, std::uint8_t) {});
        trace.push_back(replay.error());
    }
    if (!replay.coarsest()) throw MalformedSequence("sequence does not end in the coarsest division");
    return trace;
}

VerifyResult verify_sequence(const BinaryMatrix& m, const ContractionSequence& seq, int d) {
    const auto trace = error_trace(m, seq);
    VerifyResult out;
    out.max_error = *std::max_element(trace.begin(), trace.end());
    out.ok = out.max_error <= d;
    return out;
}

RectangleDecomposition extract_decomposition(const BinaryMatrix& m, const ContractionSequence& seq) {
    check_shape(m, seq);
    ZoneReplay replay(m);
    RectangleDecomposition dec;
    dec.n = m.n();
    // An all-one zone is maximal exactly when the zone it merges into is not all-one.
    auto on_lost = [&dec](const Rect& r, std::uint8_t value, std::uint8_t merged) {
        if (value == 1 && merged != 1) dec.rects.push_back(r);
    };
    for (const auto& step : seq.steps) replay.merge(step, on_lost);
    if (!replay.coarsest()) throw MalformedSequence("sequence does not end in the coarsest division");
    if (replay.root_value() == 1) dec.rects.push_back(Rect{1, m.n(), 1, m.n()});
    std::sort(dec.rects.begin(), dec.rects.end());
    return dec;
}

ContractionSequence parse_sequence(std::istream& in) {
    ContractionSequence seq;
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw FormatError("missing header line \"n\"", 1);
    {
        std::istringstream ss(line);
        std::string extra;
        if (!(ss >> seq.n) || (ss >> extra) || seq.n <= 0) throw FormatError("expected positive \"n\"", line_no);
    }
    const long long expected = 2LL * seq.n - 2;
    for (long long k = 0; k < expected; ++k) {
        if (!next_line()) throw FormatError("expected " + std::to_string(expected) + " steps", line_no + 1);
        std::istringstream ss(line);
        std::string axis, extra;
        MergeStep step;
        if (!(ss >> axis >> step.p) || (ss >> extra) || (axis != "R" && axis != "C"))
            throw FormatError("expected \"R p\" or \"C p\"", line_no);
        step.axis = axis == "R" ? Axis::Rows : Axis::Cols;
        seq.steps.push_back(step);
    }
    if (next_line()) throw FormatError("trailing content after steps", line_no);
    return seq;
}

void write_sequence(std::ostream& out, const ContractionSequence& seq) {
    out << seq.n << '\n';
    for (const auto& s : seq.steps) out << static_cast<char>(s.axis) << ' ' << s.p << '\n';
}

}  // namespace twinmat
