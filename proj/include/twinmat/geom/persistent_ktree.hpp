#pragma once

// Persistent perfect k-ary tree over the integer universe [0, k^h).
//
// Every node carries a 32-bit tag and k child ids. An update stores an
// interval by tagging its canonical nodes (at most 2(k-1) per depth) and
// copying the paths that lead to them; older versions stay valid. A point
// belongs to a version iff some node on its root-to-leaf path has a nonzero
// tag. Intervals stored in one version must be pairwise disjoint, which makes
// the tag seen on a lookup path unique.

#include <cstdint>
#include <vector>

namespace twinmat::geom {

struct KTreeShape {
    int k = 2;
    int h = 1;

    std::uint64_t universe() const;
};

// Depth ceil(2/epsilon)+1 with the smallest k >= 2 whose k^h covers `universe`.
KTreeShape shape_for_epsilon(std::uint64_t universe, double epsilon);
// k = 2 and the smallest h with 2^h >= universe (at least 1).
KTreeShape binary_shape(std::uint64_t universe);

class PersistentKTree {
public:
    using Version = std::uint32_t;

    explicit PersistentKTree(KTreeShape shape);

    const KTreeShape& shape() const noexcept { return shape_; }
    std::uint64_t universe() const noexcept { return universe_; }

    // Version 0 is the empty set.
    static constexpr Version empty_version() noexcept { return 0; }
    std::size_t version_count() const noexcept { return roots_.size(); }

    // Each returns a new version id; `from` is left untouched. Tag must be nonzero.
    Version insert(Version from, std::uint64_t lo, std::uint64_t hi, std::uint32_t tag = 1);
    // Clears the tags that insert(lo, hi) set. Removing an interval that was
    // not inserted as-is is a caller error (ContractViolation).
    Version remove(Version from, std::uint64_t lo, std::uint64_t hi);

    // Tag of the interval containing y, 0 if none. `hops` receives the number
    // of nodes visited, always h + 1.
    std::uint32_t lookup(Version v, std::uint64_t y, int* hops = nullptr) const;
    bool member(Version v, std::uint64_t y, int* hops = nullptr) const { return lookup(v, y, hops) != 0; }

    std::size_t node_count() const noexcept { return tags_.size(); }
    // Logical size: per node a tag of `tag_bits` bits plus k child ids of
    // ceil(log2(node_count)) bits each.
    std::uint64_t bitsize(int tag_bits = 1) const;

private:
    std::uint32_t copy_node(std::uint32_t from);
    std::uint32_t update(std::uint32_t node, int depth, std::uint64_t base, std::uint64_t lo, std::uint64_t hi,
                         std::uint32_t tag, bool clearing);
    void check_interval(std::uint64_t lo, std::uint64_t hi) const;
    void check_version(Version v) const;

    KTreeShape shape_;
    std::uint64_t universe_;
    std::vector<std::uint64_t> span_;  // leaves below a node at depth t
    std::vector<std::uint32_t> tags_;
    std::vector<std::uint32_t> children_;  // k per node
    std::vector<std::uint32_t> roots_;
};

}  // namespace twinmat::geom
