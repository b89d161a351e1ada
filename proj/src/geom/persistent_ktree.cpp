#include "twinmat/geom/persistent_ktree.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "twinmat/errors.hpp"

namespace twinmat::geom {

namespace {

// k^h, or 0 when it does not fit in 62 bits.
std::uint64_t power(int k, int h) {
    std::uint64_t out = 1;
    for (int t = 0; t < h; ++t) {
        if (out > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(k)) return 0;
        out *= static_cast<std::uint64_t>(k);
    }
    return out;
}

int ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : std::bit_width(x - 1); }

}  // namespace

std::uint64_t KTreeShape::universe() const { return power(k, h); }

KTreeShape shape_for_epsilon(std::uint64_t universe, double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 2.0) throw BoundsError("epsilon must lie in (0, 2]");
    KTreeShape s;
    s.h = static_cast<int>(std::ceil(2.0 / epsilon)) + 1;
    s.k = 2;
    while (true) {
        const std::uint64_t u = power(s.k, s.h);
        if (u == 0 || u >= universe) break;
        ++s.k;
    }
    return s;
}

KTreeShape binary_shape(std::uint64_t universe) {
    return KTreeShape{2, std::max(1, ceil_log2(universe))};
}

PersistentKTree::PersistentKTree(KTreeShape shape) : shape_(shape) {
    if (shape.k < 2 || shape.h < 1) throw BoundsError("k-ary tree needs k >= 2 and h >= 1");
    universe_ = power(shape.k, shape.h);
    if (universe_ == 0) throw BoundsError("k^h exceeds the supported universe");
    span_.resize(static_cast<std::size_t>(shape.h) + 1);
    span_[shape.h] = 1;
    for (int t = shape.h - 1; t >= 0; --t) span_[t] = span_[t + 1] * static_cast<std::uint64_t>(shape.k);
    // Node 0: the shared empty subtree, its own child at every depth.
    tags_.push_back(0);
    children_.assign(static_cast<std::size_t>(shape.k), 0);
    roots_.push_back(0);
}

std::uint32_t PersistentKTree::copy_node(std::uint32_t from) {
    if (tags_.size() >= std::numeric_limits<std::uint32_t>::max()) throw BoundsError("node pool exhausted");
    const auto id = static_cast<std::uint32_t>(tags_.size());
    const auto k = static_cast<std::size_t>(shape_.k);
    tags_.push_back(tags_[from]);
    children_.resize(children_.size() + k);
    for (std::size_t c = 0; c < k; ++c) children_[id * k + c] = children_[from * k + c];
    return id;
}

std::uint32_t PersistentKTree::update(std::uint32_t node, int depth, std::uint64_t base, std::uint64_t lo,
                                      std::uint64_t hi, std::uint32_t tag, bool clearing) {
    const std::uint64_t span = span_[depth];
    if (lo <= base && base + span - 1 <= hi) {
        if (clearing && tags_[node] == 0)
            throw ContractViolation("remove of an interval that was not inserted");
        if (!clearing && tags_[node] != 0) throw ContractViolation("insert overlaps a stored interval");
        const std::uint32_t copy = copy_node(node);
        tags_[copy] = clearing ? 0 : tag;
        return copy;
    }
    const std::uint32_t copy = copy_node(node);
    const auto k = static_cast<std::size_t>(shape_.k);
    const std::uint64_t child_span = span_[depth + 1];
    for (std::size_t c = 0; c < k; ++c) {
        const std::uint64_t cb = base + c * child_span;
        if (cb > hi || cb + child_span - 1 < lo) continue;
        const std::uint32_t child = children_[copy * k + c];
        const std::uint32_t updated = update(child, depth + 1, cb, lo, hi, tag, clearing);
        children_[copy * k + c] = updated;
    }
    return copy;
}

void PersistentKTree::check_interval(std::uint64_t lo, std::uint64_t hi) const {
    if (lo > hi || hi >= universe_)
        throw BoundsError("interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "] outside universe");
}

void PersistentKTree::check_version(Version v) const {
    if (v >= roots_.size()) throw BoundsError("unknown version " + std::to_string(v));
}

PersistentKTree::Version PersistentKTree::insert(Version from, std::uint64_t lo, std::uint64_t hi,
                                                 std::uint32_t tag) {
    check_version(from);
    check_interval(lo, hi);
    if (tag == 0) throw BoundsError("tag must be nonzero");
    roots_.push_back(update(roots_[from], 0, 0, lo, hi, tag, false));
    return static_cast<Version>(roots_.size() - 1);
}

PersistentKTree::Version PersistentKTree::remove(Version from, std::uint64_t lo, std::uint64_t hi) {
    check_version(from);
    check_interval(lo, hi);
    roots_.push_back(update(roots_[from], 0, 0, lo, hi, 0, true));
    return static_cast<Version>(roots_.size() - 1);
}

std::uint32_t PersistentKTree::lookup(Version v, std::uint64_t y, int* hops) const {
    check_version(v);
    if (y >= universe_) throw BoundsError("point " + std::to_string(y) + " outside universe");
    const auto k = static_cast<std::size_t>(shape_.k);
    std::uint32_t node = roots_[v];
    std::uint32_t found = tags_[node];
    int visited = 1;
    for (int depth = 1; depth <= shape_.h; ++depth) {
        const std::uint64_t digit = (y / span_[depth]) % k;
        node = children_[node * k + digit];
        ++visited;
        if (found == 0) found = tags_[node];
    }
    if (hops) *hops = visited;
    return found;
}

std::uint64_t PersistentKTree::bitsize(int tag_bits) const {
    const auto nodes = static_cast<std::uint64_t>(tags_.size());
    const auto id_bits = static_cast<std::uint64_t>(std::max(1, ceil_log2(nodes)));
    return nodes * (static_cast<std::uint64_t>(tag_bits) + static_cast<std::uint64_t>(shape_.k) * id_bits);
}

}  // namespace twinmat::geom
