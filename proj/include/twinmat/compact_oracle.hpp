#pragma once

// Layered compact representation of a square binary matrix. Layer i holds the
// distinct zones of the m_i-regular division; an upper-layer object is a
// table of child ids into layer i+1, a bottom-layer object is an explicit
// m_l x m_l bit block. A query descends one layer per step.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "twinmat/matrix.hpp"
#include "twinmat/packed_array.hpp"
#include "twinmat/schedule.hpp"

namespace twinmat {

enum class Accounting { Packed, Paper };

const char* to_string(Accounting a) noexcept;
Accounting parse_accounting(const std::string& name);

struct LayerStats {
    int index = 0;
    int m = 0;
    std::uint64_t objects = 0;
    int table_side = 0;  // m_i / m_{i+1}; 0 for the bottom layer
    int id_width = 0;    // bits per child id; 0 for the bottom layer
    std::uint64_t bits = 0;
};

struct BitsizeReport {
    Accounting mode = Accounting::Packed;
    std::vector<LayerStats> layers;
    std::uint64_t total_bits = 0;
    std::uint64_t bottom_bits = 0;
    double bits_per_n = 0.0;
};

struct BuildOptions {
    double beta = 1.0;
    // Cross-check deduplication and reachability while building. Also
    // switched on by the environment variable TWINMAT_DEBUG=1.
    bool debug_checks = false;
};

struct BuildTimings {
    double types_oracle_s = 0.0;
    double layers_s = 0.0;
};

class CompactOracle {
public:
    // Pads to the next power of two (at least 2) with zeros.
    static CompactOracle build(const RectangleDecomposition& dec, const BuildOptions& options = {});

    // 1-based; throws BoundsError outside the original n x n range. `hops`
    // receives the number of child-table dereferences (always levels()).
    bool query(int i, int j, int* hops = nullptr) const;

    int n() const noexcept { return n_original_; }
    int n_padded() const noexcept { return schedule_.n; }
    double beta() const noexcept { return schedule_.beta; }
    const Schedule& schedule() const noexcept { return schedule_; }
    int levels() const noexcept { return schedule_.levels(); }

    std::uint64_t object_count(int layer) const;
    const PackedArray& layer_data(int layer) const { return layers_.at(static_cast<std::size_t>(layer)).data; }

    BitsizeReport bitsize(Accounting mode = Accounting::Packed) const;
    const BuildTimings& timings() const noexcept { return timings_; }

    std::vector<std::uint8_t> serialize() const;
    void serialize(std::ostream& out) const;
    // Throws FormatError on bad magic, version, checksum, truncation or
    // out-of-range child ids.
    static CompactOracle deserialize(std::span<const std::uint8_t> bytes);
    static CompactOracle deserialize(std::istream& in);

    bool operator==(const CompactOracle& o) const {
        return n_original_ == o.n_original_ && schedule_ == o.schedule_ && layers_ == o.layers_;
    }

private:
    struct Layer {
        std::uint64_t objects = 0;
        PackedArray data;  // child ids (upper layers) or bits (bottom layer)

        bool operator==(const Layer&) const = default;
    };

    void check_structure() const;

    int n_original_ = 0;
    Schedule schedule_;
    std::vector<Layer> layers_;
    BuildTimings timings_;

    friend class OracleBuilder;
};

bool debug_env_enabled();

}  // namespace twinmat
