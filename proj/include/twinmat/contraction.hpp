#pragma once

// Contraction sequences over a square binary matrix: replay, error-value
// verification, rectangle-decomposition extraction, and a generator of
// d-twin-ordered matrices together with a witnessing sequence.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "twinmat/matrix.hpp"

namespace twinmat {

enum class Axis : char { Rows = 'R', Cols = 'C' };

// Merge consecutive blocks p and p+1 (1-based, counted in the current division).
struct MergeStep {
    Axis axis = Axis::Rows;
    int p = 1;

    bool operator==(const MergeStep&) const = default;
};

struct ContractionSequence {
    int n = 0;
    std::vector<MergeStep> steps;

    bool operator==(const ContractionSequence&) const = default;
};

// Ordered partitions of rows and columns into consecutive blocks, stored as
// the 1-based first index of each block.
struct Division {
    int n = 0;
    std::vector<int> row_starts;
    std::vector<int> col_starts;

    static Division finest(int n);
    static Division coarsest(int n);

    // Inclusive extent of row block p / column block p (1-based p).
    std::pair<int, int> row_block(int p) const;
    std::pair<int, int> col_block(int p) const;

    // Throws MalformedSequence if the step does not name two existing blocks.
    void apply(const MergeStep& step);
    void validate() const;

    bool operator==(const Division&) const = default;
};

// Max over row and column blocks of the number of non-constant zones they hold.
int error_value(const BinaryMatrix& m, const Division& div);

// Error value of every division of the sequence, maintained incrementally
// (index 0 is the finest division, index 2n-2 the coarsest).
std::vector<int> error_trace(const BinaryMatrix& m, const ContractionSequence& seq);

struct VerifyResult {
    bool ok = false;
    int max_error = 0;
};

VerifyResult verify_sequence(const BinaryMatrix& m, const ContractionSequence& seq, int d);

// Inclusion-maximal all-one zones among all zones of all divisions.
RectangleDecomposition extract_decomposition(const BinaryMatrix& m, const ContractionSequence& seq);

struct GeneratorOptions {
    // Probability that a split non-constant zone leaves two non-constant
    // halves rather than one (budget permitting).
    double divergence = 0.5;
};

struct GeneratedMatrix {
    BinaryMatrix matrix;
    ContractionSequence sequence;
};

// Random d-twin-ordered n x n matrix with a witnessing contraction sequence.
GeneratedMatrix generate(int n, int d, std::uint64_t seed, const GeneratorOptions& options = {});

// Text format: "n", then 2n-2 lines "R p" / "C p".
ContractionSequence parse_sequence(std::istream& in);
void write_sequence(std::ostream& out, const ContractionSequence& seq);

}  // namespace twinmat
