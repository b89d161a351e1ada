#include "twinmat/compact_oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <random>
#include <utility>

#include "twinmat/errors.hpp"
#include "twinmat/submatrix_types.hpp"
#include "twinmat/zone_approx.hpp"

namespace twinmat {

namespace {

int ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1)); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Order of `count` keys of `width` words each (word 0 most significant), by
// LSD radix sort on 16-bit digits.
std::vector<std::uint32_t> radix_order(const std::vector<std::uint64_t>& keys, std::size_t width, std::size_t count) {
    std::vector<std::uint32_t> order(count), next(count);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<std::size_t> bucket(1u << 16);
    for (std::size_t w = width; w-- > 0;) {
        for (int shift = 0; shift < 64; shift += 16) {
            std::fill(bucket.begin(), bucket.end(), 0);
            auto digit = [&](std::uint32_t t) { return (keys[t * width + w] >> shift) & 0xFFFF; };
            for (std::uint32_t t : order) ++bucket[digit(t)];
            std::size_t sum = 0;
            for (auto& b : bucket) sum += std::exchange(b, sum);
            for (std::uint32_t t : order) next[bucket[digit(t)]++] = t;
            order.swap(next);
        }
    }
    return order;
}

struct Classes {
    std::vector<std::uint32_t> psi;       // element -> class id
    std::vector<std::uint32_t> leaders;   // class id -> first element of the class
};

// Class ids follow `order`; consecutive elements in `order` share a class iff same(a, b).
template <class Same>
Classes group_sorted(const std::vector<std::uint32_t>& order, Same same) {
    Classes c;
    c.psi.assign(order.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || !same(order[k - 1], order[k])) c.leaders.push_back(order[k]);
        c.psi[order[k]] = static_cast<std::uint32_t>(c.leaders.size() - 1);
    }
    return c;
}

}  // namespace

const char* to_string(Accounting a) noexcept { return a == Accounting::Packed ? "packed" : "paper"; }

Accounting parse_accounting(const std::string& name) {
    if (name == "packed") return Accounting::Packed;
    if (name == "paper") return Accounting::Paper;
    throw FormatError("unknown accounting mode \"" + name + "\"");
}

bool debug_env_enabled() {
    const char* v = std::getenv("TWINMAT_DEBUG");
    return v != nullptr && std::string(v) == "1";
}

class OracleBuilder {
public:
    OracleBuilder(const RectangleDecomposition& dec, const BuildOptions& options)
        : options_(options), debug_(options.debug_checks || debug_env_enabled()) {
        if (dec.n < 1) throw BoundsError("matrix side must be positive");
        dec.validate();
        padded_ = dec;
        padded_.n = std::max(2, static_cast<int>(std::bit_ceil(static_cast<unsigned>(dec.n))));
        out_.n_original_ = dec.n;
        out_.schedule_ = make_schedule(padded_.n, options.beta);
    }

    CompactOracle run() {
        auto start = std::chrono::steady_clock::now();
        const TypesOracle oracle(padded_);
        out_.timings_.types_oracle_s = seconds_since(start);

        start = std::chrono::steady_clock::now();
        const auto& m = out_.schedule_.m;
        const int levels = out_.schedule_.levels();
        out_.layers_.resize(static_cast<std::size_t>(levels) + 1);
        ZoneApproxOptions za;
        za.debug_checks = debug_;

        ZoneCover below = zone_approximation(oracle, m[levels], za);
        Classes below_classes = build_bottom(oracle, below, levels);
        for (int i = levels - 1; i >= 0; --i) {
            ZoneCover cover = zone_approximation(oracle, m[i], za);
            Classes classes = build_upper(oracle, cover, below, below_classes, i);
            below = std::move(cover);
            below_classes = std::move(classes);
        }
        if (out_.layers_[0].objects != 1) throw ConstructionInvariantError("top layer must hold exactly one object");
        if (debug_) check_reachability();
        out_.timings_.layers_s = seconds_since(start);
        return std::move(out_);
    }

private:
    Classes build_bottom(const TypesOracle& oracle, const ZoneCover& cover, int layer) {
        const int s = cover.s();
        const std::size_t cells = static_cast<std::size_t>(s) * s;
        const std::size_t width = (cells + 63) / 64;
        const std::size_t count = cover.elements().size();
        std::vector<std::uint64_t> keys(count * width, 0);
        for (std::size_t t = 0; t < count; ++t) {
            const Rect z = cover.to_matrix(zone_rect(cover, t));
            for (int a = 0; a < s; ++a)
                for (int b = 0; b < s; ++b)
                    if (oracle.entry(z.r1 + a, z.c1 + b)) {
                        const std::size_t bit = static_cast<std::size_t>(a) * s + b;
                        keys[t * width + bit / 64] |= std::uint64_t{1} << (63 - bit % 64);
                    }
        }
        const auto order = radix_order(keys, width, count);
        Classes classes = group_sorted(order, [&](std::uint32_t x, std::uint32_t y) {
            return std::equal(keys.begin() + x * width, keys.begin() + (x + 1) * width, keys.begin() + y * width);
        });

        auto& out = out_.layers_[static_cast<std::size_t>(layer)];
        out.objects = classes.leaders.size();
        out.data = PackedArray(out.objects * cells, 1);
        for (std::size_t c = 0; c < classes.leaders.size(); ++c) {
            const std::size_t t = classes.leaders[c];
            for (std::size_t bit = 0; bit < cells; ++bit)
                if ((keys[t * width + bit / 64] >> (63 - bit % 64)) & 1u) out.data.set(c * cells + bit, 1);
        }
        if (debug_) check_classes(oracle, cover, classes);
        return classes;
    }

    Classes build_upper(const TypesOracle& oracle, const ZoneCover& cover, const ZoneCover& below,
                        const Classes& below_classes, int layer) {
        const int q = cover.s() / below.s();
        const std::size_t cells = static_cast<std::size_t>(q) * q;
        const std::size_t count = cover.elements().size();
        std::vector<std::uint32_t> desc(count * cells);
        for (std::size_t t = 0; t < count; ++t) {
            const Rect& b = cover.elements()[t].blocks;
            for (int a = 0; a < q; ++a)
                for (int c = 0; c < q; ++c) {
                    const std::size_t e = below.element_at((b.r1 - 1) * q + a + 1, (b.c1 - 1) * q + c + 1);
                    desc[t * cells + static_cast<std::size_t>(a) * q + c] = below_classes.psi[e];
                }
        }
        auto span_of = [&](std::uint32_t t) { return desc.begin() + static_cast<std::ptrdiff_t>(t * cells); };
        std::vector<std::uint32_t> order(count);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
            return std::lexicographical_compare(span_of(x), span_of(x) + cells, span_of(y), span_of(y) + cells);
        });
        Classes classes = group_sorted(order, [&](std::uint32_t x, std::uint32_t y) {
            return std::equal(span_of(x), span_of(x) + cells, span_of(y));
        });

        auto& out = out_.layers_[static_cast<std::size_t>(layer)];
        const auto children = out_.layers_[static_cast<std::size_t>(layer) + 1].objects;
        out.objects = classes.leaders.size();
        out.data = PackedArray(out.objects * cells, std::max(1, ceil_log2(children)));
        for (std::size_t c = 0; c < classes.leaders.size(); ++c)
            for (std::size_t k = 0; k < cells; ++k) out.data.set(c * cells + k, *(span_of(classes.leaders[c]) + k));
        if (debug_) check_classes(oracle, cover, classes);
        return classes;
    }

    static Rect zone_rect(const ZoneCover& cover, std::size_t t) {
        const Rect& b = cover.elements()[t].blocks;
        return Rect{b.r1, b.r1, b.c1, b.c1};
    }

    // Every representative must equal the leader of its class entrywise.
    void check_classes(const TypesOracle& oracle, const ZoneCover& cover, const Classes& classes) const {
        const int s = cover.s();
        const long long cells = static_cast<long long>(s) * s;
        std::mt19937_64 rng(0x5eed);
        for (std::size_t t = 0; t < classes.psi.size(); ++t) {
            const std::size_t leader = classes.leaders[classes.psi[t]];
            if (leader == t) continue;
            const Rect zt = cover.to_matrix(zone_rect(cover, t));
            const Rect zl = cover.to_matrix(zone_rect(cover, leader));
            const long long probes = std::min<long long>(cells, 256);
            for (long long p = 0; p < probes; ++p) {
                const long long k = cells <= 256 ? p : static_cast<long long>(rng() % static_cast<std::uint64_t>(cells));
                const int a = static_cast<int>(k / s), b = static_cast<int>(k % s);
                if (oracle.entry(zt.r1 + a, zt.c1 + b) != oracle.entry(zl.r1 + a, zl.c1 + b))
                    throw ConstructionInvariantError("deduplicated zones differ at s=" + std::to_string(s));
            }
        }
    }

    void check_reachability() const {
        const auto& layers = out_.layers_;
        for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
            std::vector<bool> seen(layers[i + 1].objects, false);
            const auto& data = layers[i].data;
            for (std::size_t k = 0; k < data.size(); ++k) seen[data.get(k)] = true;
            if (std::find(seen.begin(), seen.end(), false) != seen.end())
                throw ConstructionInvariantError("unreachable object in layer " + std::to_string(i + 1));
        }
    }

    BuildOptions options_;
    bool debug_;
    RectangleDecomposition padded_;
    CompactOracle out_;
};

CompactOracle CompactOracle::build(const RectangleDecomposition& dec, const BuildOptions& options) {
    return OracleBuilder(dec, options).run();
}

bool CompactOracle::query(int i, int j, int* hops) const {
    if (i < 1 || i > n_original_ || j < 1 || j > n_original_)
        throw BoundsError("query (" + std::to_string(i) + ", " + std::to_string(j) + ") outside the matrix");
    const auto& m = schedule_.m;
    const int levels = schedule_.levels();
    std::uint64_t x = static_cast<std::uint64_t>(i - 1), y = static_cast<std::uint64_t>(j - 1);
    std::uint64_t object = 0;
    for (int k = 0; k < levels; ++k) {
        const std::uint64_t child = static_cast<std::uint64_t>(m[k + 1]);
        const std::uint64_t q = static_cast<std::uint64_t>(m[k]) / child;
        object = layers_[static_cast<std::size_t>(k)].data.get(object * q * q + (x / child) * q + y / child);
        x %= child;
        y %= child;
    }
    if (hops) *hops = levels;
    const std::uint64_t s = static_cast<std::uint64_t>(m[levels]);
    return layers_[static_cast<std::size_t>(levels)].data.get(object * s * s + x * s + y) != 0;
}

std::uint64_t CompactOracle::object_count(int layer) const {
    return layers_.at(static_cast<std::size_t>(layer)).objects;
}

BitsizeReport CompactOracle::bitsize(Accounting mode) const {
    BitsizeReport r;
    r.mode = mode;
    const auto& m = schedule_.m;
    const int levels = schedule_.levels();
    for (int i = 0; i <= levels; ++i) {
        const auto& layer = layers_[static_cast<std::size_t>(i)];
        LayerStats st;
        st.index = i;
        st.m = m[i];
        st.objects = layer.objects;
        if (i < levels) {
            st.table_side = m[i] / m[i + 1];
            st.id_width = mode == Accounting::Packed ? layer.data.width() : std::max(1, ceil_log2(n_padded()));
            st.bits = layer.objects * static_cast<std::uint64_t>(st.table_side) * st.table_side * st.id_width;
        } else {
            st.bits = layer.objects * static_cast<std::uint64_t>(m[i]) * m[i];
            r.bottom_bits = st.bits;
        }
        r.total_bits += st.bits;
        r.layers.push_back(st);
    }
    r.bits_per_n = static_cast<double>(r.total_bits) / n_original_;
    return r;
}

void CompactOracle::check_structure() const {
    const auto& m = schedule_.m;
    const int levels = schedule_.levels();
    if (layers_.size() != static_cast<std::size_t>(levels) + 1) throw FormatError("layer count does not match schedule");
    if (layers_[0].objects != 1) throw FormatError("top layer must hold one object");
    for (int i = 0; i <= levels; ++i) {
        const auto& layer = layers_[static_cast<std::size_t>(i)];
        if (layer.objects == 0) throw FormatError("empty layer " + std::to_string(i));
        if (i < levels) {
            const std::uint64_t q = static_cast<std::uint64_t>(m[i] / m[i + 1]);
            if (layer.data.size() != layer.objects * q * q) throw FormatError("child table size mismatch");
            const auto children = layers_[static_cast<std::size_t>(i) + 1].objects;
            for (std::size_t k = 0; k < layer.data.size(); ++k)
                if (layer.data.get(k) >= children) throw FormatError("child id out of range in layer " + std::to_string(i));
        } else if (layer.data.size() != layer.objects * static_cast<std::uint64_t>(m[i]) * m[i] || layer.data.width() != 1) {
            throw FormatError("bottom block size mismatch");
        }
    }
}

}  // namespace twinmat
