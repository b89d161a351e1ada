#include "twinmat/matrix.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "twinmat/errors.hpp"

namespace twinmat {

std::ostream& operator<<(std::ostream& os, const Rect& r) {
    return os << '(' << r.r1 << ',' << r.r2 << ',' << r.c1 << ',' << r.c2 << ')';
}

std::string ZoneContent::key() const {
    std::string out = std::to_string(rows) + "x" + std::to_string(cols) + ":";
    out.reserve(out.size() + static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out.push_back(at(i, j) ? '1' : '0');
    return out;
}

BinaryMatrix::BinaryMatrix(int n) : n_(n) {
    if (n <= 0) throw BoundsError("matrix side must be positive");
    words_per_row_ = (static_cast<std::size_t>(n) + 63) / 64;
    words_.assign(words_per_row_ * static_cast<std::size_t>(n), 0);
}

BinaryMatrix BinaryMatrix::from_literal(std::string_view literal) {
    std::vector<std::string_view> rows;
    std::size_t start = 0;
    while (true) {
        auto pos = literal.find(';', start);
        rows.push_back(literal.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    const int n = static_cast<int>(rows.size());
    BinaryMatrix m(n);
    for (int i = 1; i <= n; ++i) {
        const auto row = rows[i - 1];
        if (static_cast<int>(row.size()) != n) throw FormatError("matrix literal is not square");
        for (int j = 1; j <= n; ++j) {
            const char c = row[j - 1];
            if (c != '0' && c != '1') throw FormatError("matrix literal must contain only '0'/'1'");
            m.set(i, j, c == '1');
        }
    }
    return m;
}

std::string BinaryMatrix::to_literal() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(n_) * (n_ + 1));
    for (int i = 1; i <= n_; ++i) {
        if (i > 1) out.push_back(';');
        for (int j = 1; j <= n_; ++j) out.push_back(get(i, j) ? '1' : '0');
    }
    return out;
}

bool BinaryMatrix::entry(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw BoundsError("entry index out of range");
    return get(i, j);
}

void BinaryMatrix::set(int i, int j, bool value) {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw BoundsError("entry index out of range");
    auto& w = words_[row_offset(i) + ((j - 1) >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << ((j - 1) & 63);
    w = value ? (w | bit) : (w & ~bit);
}

ZoneContent BinaryMatrix::zone(const Rect& z) const {
    if (!z.inside(n_)) throw BoundsError("zone outside matrix");
    ZoneContent out;
    out.rows = z.rows();
    out.cols = z.cols();
    out.bits.assign((static_cast<std::size_t>(out.rows) * out.cols + 63) / 64, 0);
    std::size_t k = 0;
    for (int i = z.r1; i <= z.r2; ++i)
        for (int j = z.c1; j <= z.c2; ++j, ++k)
            if (get(i, j)) out.bits[k >> 6] |= std::uint64_t{1} << (k & 63);
    return out;
}

long long BinaryMatrix::count_ones() const {
    long long total = 0;
    for (auto w : words_) total += __builtin_popcountll(w);
    return total;
}

void RectangleDecomposition::validate() const {
    if (n <= 0) throw BoundsError("decomposition side must be positive");
    for (const auto& r : rects)
        if (!r.inside(n)) throw BoundsError("rectangle outside matrix");

    // Row sweep; active column intervals are pairwise disjoint so only the
    // neighbours of a newly inserted interval need checking.
    struct Event {
        int row;
        bool insert;
        std::size_t idx;
    };
    std::vector<Event> events;
    events.reserve(rects.size() * 2);
    for (std::size_t k = 0; k < rects.size(); ++k) {
        events.push_back({rects[k].r1, true, k});
        events.push_back({rects[k].r2 + 1, false, k});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.row != b.row) return a.row < b.row;
        return a.insert < b.insert;  // removals first
    });
    std::map<int, std::size_t> active;  // c1 -> rect index
    for (const auto& e : events) {
        const Rect& r = rects[e.idx];
        if (!e.insert) {
            active.erase(r.c1);
            continue;
        }
        auto it = active.lower_bound(r.c1);
        if (it != active.end() && rects[it->second].c1 <= r.c2)
            throw OverlapError("rectangles overlap");
        if (it != active.begin() && rects[std::prev(it)->second].c2 >= r.c1)
            throw OverlapError("rectangles overlap");
        active.emplace(r.c1, e.idx);
    }
}

const char* to_string(SubmatrixType t) noexcept {
    switch (t) {
        case SubmatrixType::Constant0: return "Constant0";
        case SubmatrixType::Constant1: return "Constant1";
        case SubmatrixType::Horizontal: return "Horizontal";
        case SubmatrixType::Vertical: return "Vertical";
        case SubmatrixType::Mixed: return "Mixed";
    }
    return "?";
}

BinaryMatrix realize(const RectangleDecomposition& dec) {
    dec.validate();
    BinaryMatrix m(dec.n);
    for (const auto& r : dec.rects)
        for (int i = r.r1; i <= r.r2; ++i)
            for (int j = r.c1; j <= r.c2; ++j) m.set(i, j, true);
    return m;
}

SubmatrixType classify(const BinaryMatrix& m, const Rect& z) {
    if (!z.inside(m.n())) throw BoundsError("submatrix outside matrix");

    bool rows_equal = true;
    for (int i = z.r1 + 1; i <= z.r2 && rows_equal; ++i)
        for (int j = z.c1; j <= z.c2; ++j)
            if (m.get(i, j) != m.get(z.r1, j)) {
                rows_equal = false;
                break;
            }

    bool cols_equal = true;
    for (int j = z.c1 + 1; j <= z.c2 && cols_equal; ++j)
        for (int i = z.r1; i <= z.r2; ++i)
            if (m.get(i, j) != m.get(i, z.c1)) {
                cols_equal = false;
                break;
            }

    if (rows_equal && cols_equal)
        return m.get(z.r1, z.c1) ? SubmatrixType::Constant1 : SubmatrixType::Constant0;
    if (rows_equal) return SubmatrixType::Vertical;
    if (cols_equal) return SubmatrixType::Horizontal;
    return SubmatrixType::Mixed;
}

namespace {

bool window_mixed(const BinaryMatrix& m, int i, int j) {
    const bool a = m.get(i, j), b = m.get(i, j + 1), c = m.get(i + 1, j), d = m.get(i + 1, j + 1);
    // A 2x2 block is non-mixed iff its rows are equal or its columns are equal.
    return !((a == c && b == d) || (a == b && c == d));
}

}  // namespace

std::vector<std::pair<int, int>> corners(const BinaryMatrix& m) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i < m.n(); ++i)
        for (int j = 1; j < m.n(); ++j)
            if (window_mixed(m, i, j)) out.emplace_back(i, j);
    return out;
}

Rect zone_bounds(const RegularDivision& div, int i, int j) {
    const int t = div.blocks();
    if (div.s <= 0 || i < 1 || i > t || j < 1 || j > t) throw BoundsError("zone index out of range");
    return Rect{(i - 1) * div.s + 1, std::min(i * div.s, div.n), (j - 1) * div.s + 1, std::min(j * div.s, div.n)};
}

std::vector<ZoneContent> zone_family_naive(const BinaryMatrix& m, int s) {
    if (s < 1 || s > m.n()) throw BoundsError("granularity out of range");
    const RegularDivision div{m.n(), s};
    std::set<ZoneContent> seen;
    for (int i = 1; i <= div.blocks(); ++i)
        for (int j = 1; j <= div.blocks(); ++j) seen.insert(m.zone(zone_bounds(div, i, j)));
    return {seen.begin(), seen.end()};
}

std::vector<Strip> strips_naive(const BinaryMatrix& m, int s) {
    if (s < 1 || s > m.n()) throw BoundsError("granularity out of range");
    const RegularDivision div{m.n(), s};
    const int t = div.blocks();
    std::vector<SubmatrixType> type(static_cast<std::size_t>(t) * t);
    for (int a = 1; a <= t; ++a)
        for (int b = 1; b <= t; ++b) type[(a - 1) * t + (b - 1)] = classify(m, zone_bounds(div, a, b));
    auto type_at = [&](int a, int b) { return type[(a - 1) * t + (b - 1)]; };

    std::vector<Strip> out;
    // Vertical strips: maximal runs down a column block with equal row vectors.
    for (int b = 1; b <= t; ++b) {
        int a = 1;
        while (a <= t) {
            if (type_at(a, b) != SubmatrixType::Vertical) {
                ++a;
                continue;
            }
            int end = a;
            while (end + 1 <= t && type_at(end + 1, b) == SubmatrixType::Vertical) {
                Rect pair = zone_bounds(div, end, b);
                pair.r2 = zone_bounds(div, end + 1, b).r2;
                if (classify(m, pair) != SubmatrixType::Vertical) break;
                ++end;
            }
            out.push_back({Rect{a, end, b, b}, true});
            a = end + 1;
        }
    }
    for (int a = 1; a <= t; ++a) {
        int b = 1;
        while (b <= t) {
            if (type_at(a, b) != SubmatrixType::Horizontal) {
                ++b;
                continue;
            }
            int end = b;
            while (end + 1 <= t && type_at(a, end + 1) == SubmatrixType::Horizontal) {
                Rect pair = zone_bounds(div, a, end);
                pair.c2 = zone_bounds(div, a, end + 1).c2;
                if (classify(m, pair) != SubmatrixType::Horizontal) break;
                ++end;
            }
            out.push_back({Rect{a, a, b, end}, false});
            b = end + 1;
        }
    }
    return out;
}

Diagnostics diagnostics(const BinaryMatrix& m, int s) {
    if (s < 1 || s > m.n()) throw BoundsError("granularity out of range");
    const RegularDivision div{m.n(), s};
    const int t = div.blocks();
    Diagnostics out;

    for (int a = 1; a <= t; ++a)
        for (int b = 1; b <= t; ++b)
            if (classify(m, zone_bounds(div, a, b)) == SubmatrixType::Mixed) ++out.mixed_zones;

    auto block_of = [s](int idx) { return (idx - 1) / s + 1; };
    // Adjacent pairs keyed by (first zone row, first zone col, direction).
    std::set<std::tuple<int, int, int>> cuts;
    for (auto [i, j] : corners(m)) {
        const bool row_split = block_of(i) != block_of(i + 1);
        const bool col_split = block_of(j) != block_of(j + 1);
        if (row_split && col_split)
            ++out.split_corners;
        else if (col_split)
            cuts.emplace(block_of(i), block_of(j), 0);
        else if (row_split)
            cuts.emplace(block_of(i), block_of(j), 1);
    }
    out.mixed_cuts = static_cast<long long>(cuts.size());

    for (const auto& strip : strips_naive(m, s)) {
        if (strip.vertical)
            ++out.vertical_strips;
        else
            ++out.horizontal_strips;
    }
    return out;
}

RectangleDecomposition parse_decomposition(std::istream& in) {
    RectangleDecomposition dec;
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw FormatError("missing header line \"n k\"", 1);
    long long n = 0, k = 0;
    {
        std::istringstream ss(line);
        std::string extra;
        if (!(ss >> n >> k) || (ss >> extra)) throw FormatError("expected \"n k\"", line_no);
        if (n <= 0 || k < 0) throw FormatError("n must be positive and k non-negative", line_no);
    }
    dec.n = static_cast<int>(n);
    dec.rects.reserve(static_cast<std::size_t>(k));
    for (long long idx = 0; idx < k; ++idx) {
        if (!next_line()) throw FormatError("expected " + std::to_string(k) + " rectangles, got " + std::to_string(idx), line_no + 1);
        std::istringstream ss(line);
        Rect r;
        std::string extra;
        if (!(ss >> r.r1 >> r.r2 >> r.c1 >> r.c2) || (ss >> extra))
            throw FormatError("expected \"r1 r2 c1 c2\"", line_no);
        if (!r.inside(dec.n)) throw FormatError("rectangle out of bounds", line_no);
        dec.rects.push_back(r);
    }
    if (next_line()) throw FormatError("trailing content after rectangles", line_no);
    return dec;
}

void write_decomposition(std::ostream& out, const RectangleDecomposition& dec) {
    out << dec.n << ' ' << dec.rects.size() << '\n';
    for (const auto& r : dec.rects) out << r.r1 << ' ' << r.r2 << ' ' << r.c1 << ' ' << r.c2 << '\n';
}

}  // namespace twinmat
