#pragma once

// Matrix primitives and brute-force reference routines.
//
// All row/column indices are 1-based and inclusive. The naive routines here
// (classify, corners, zone_family_naive, diagnostics) are the ground truth the
// geometric and compact structures are tested against.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twinmat {

struct Rect {
    int r1 = 1, r2 = 1, c1 = 1, c2 = 1;

    int rows() const noexcept { return r2 - r1 + 1; }
    int cols() const noexcept { return c2 - c1 + 1; }
    long long area() const noexcept { return static_cast<long long>(rows()) * cols(); }
    bool contains(int i, int j) const noexcept { return r1 <= i && i <= r2 && c1 <= j && j <= c2; }
    bool intersects(const Rect& o) const noexcept {
        return r1 <= o.r2 && o.r1 <= r2 && c1 <= o.c2 && o.c1 <= c2;
    }
    bool inside(int n) const noexcept { return 1 <= r1 && r1 <= r2 && r2 <= n && 1 <= c1 && c1 <= c2 && c2 <= n; }

    auto operator<=>(const Rect&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Rect& r);

// Rectangular block of bits, used for zones cut out of a matrix. Two zones
// compare equal iff they have the same dimensions and the same entries.
struct ZoneContent {
    int rows = 0, cols = 0;
    std::vector<std::uint64_t> bits;  // row-major, rows*cols bits

    bool at(int i, int j) const noexcept {  // 0-based
        std::size_t k = static_cast<std::size_t>(i) * cols + j;
        return (bits[k >> 6] >> (k & 63)) & 1u;
    }
    std::string key() const;  // canonical "RxC:bits" string

    auto operator<=>(const ZoneContent&) const = default;
};

// Square n x n bit grid, stored row-major with each row padded to 64-bit words.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    explicit BinaryMatrix(int n);

    // Rows joined by ';', characters '0'/'1', e.g. "01;11".
    static BinaryMatrix from_literal(std::string_view literal);
    std::string to_literal() const;

    int n() const noexcept { return n_; }

    bool entry(int i, int j) const;
    void set(int i, int j, bool value);

    bool get(int i, int j) const noexcept {  // unchecked, 1-based
        return (words_[row_offset(i) + ((j - 1) >> 6)] >> ((j - 1) & 63)) & 1u;
    }

    ZoneContent zone(const Rect& z) const;
    long long count_ones() const;

    bool operator==(const BinaryMatrix&) const = default;

private:
    std::size_t row_offset(int i) const noexcept { return static_cast<std::size_t>(i - 1) * words_per_row_; }

    int n_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

// Set of pairwise disjoint all-one rectangles covering exactly the 1-entries.
struct RectangleDecomposition {
    int n = 0;
    std::vector<Rect> rects;

    // Throws BoundsError / OverlapError. O(k log k).
    void validate() const;
};

enum class SubmatrixType : std::uint8_t { Constant0, Constant1, Horizontal, Vertical, Mixed };

const char* to_string(SubmatrixType t) noexcept;
inline bool is_constant(SubmatrixType t) noexcept {
    return t == SubmatrixType::Constant0 || t == SubmatrixType::Constant1;
}

// s-regular division of an n x n matrix: blocks of s rows/columns, the last
// block holding n mod s when s does not divide n.
struct RegularDivision {
    int n = 0;
    int s = 1;

    int blocks() const noexcept { return (n + s - 1) / s; }
};

BinaryMatrix realize(const RectangleDecomposition& dec);

// Vertical: all rows equal. Horizontal: all columns equal. Both: constant.
SubmatrixType classify(const BinaryMatrix& m, const Rect& z);

// Top-left (i, j) of every mixed 2x2 window over consecutive rows/columns.
std::vector<std::pair<int, int>> corners(const BinaryMatrix& m);

Rect zone_bounds(const RegularDivision& div, int i, int j);

// Distinct zones of the s-regular division, sorted.
std::vector<ZoneContent> zone_family_naive(const BinaryMatrix& m, int s);

struct Diagnostics {
    long long mixed_zones = 0;
    long long mixed_cuts = 0;
    long long split_corners = 0;
    long long vertical_strips = 0;
    long long horizontal_strips = 0;

    bool operator==(const Diagnostics&) const = default;
};

Diagnostics diagnostics(const BinaryMatrix& m, int s);

// A strip as a block-coordinate rectangle (rows/cols are block indices).
struct Strip {
    Rect blocks;
    bool vertical = true;
};

// Brute-force strip enumeration in the s-regular division. Singleton runs
// count as strips.
std::vector<Strip> strips_naive(const BinaryMatrix& m, int s);

// Text format: "n k" then k lines "r1 r2 c1 c2". Parse errors carry line
// numbers; geometric validation is left to validate().
RectangleDecomposition parse_decomposition(std::istream& in);
void write_decomposition(std::ostream& out, const RectangleDecomposition& dec);

}  // namespace twinmat
