#include <zlib.h>

#include <bit>
#include <cstring>
#include <istream>
#include <iterator>
#include <ostream>

#include "twinmat/compact_oracle.hpp"
#include "twinmat/errors.hpp"

namespace twinmat {

namespace {

constexpr char kMagic[4] = {'T', 'W', 'M', 'X'};
constexpr std::uint16_t kVersion = 1;

class Writer {
public:
    template <class T>
    void put(T value) {
        std::uint64_t bits;
        if constexpr (std::is_same_v<T, double>)
            bits = std::bit_cast<std::uint64_t>(value);
        else
            bits = static_cast<std::uint64_t>(value);
        for (std::size_t k = 0; k < sizeof(T); ++k) bytes.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
    }

    void put_packed(const PackedArray& a) {
        const std::size_t n = (a.bit_count() + 7) / 8;
        for (std::size_t k = 0; k < n; ++k) bytes.push_back(static_cast<std::uint8_t>(a.words()[k / 8] >> (8 * (k % 8))));
    }

    std::vector<std::uint8_t> bytes;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    template <class T>
    T get() {
        need(sizeof(T));
        std::uint64_t bits = 0;
        for (std::size_t k = 0; k < sizeof(T); ++k) bits |= std::uint64_t{bytes_[pos_ + k]} << (8 * k);
        pos_ += sizeof(T);
        if constexpr (std::is_same_v<T, double>)
            return std::bit_cast<double>(bits);
        else
            return static_cast<T>(bits);
    }

    PackedArray get_packed(std::uint64_t size, int width) {
        if (width < 1 || width > 64) throw FormatError("invalid id width");
        if (size > (std::uint64_t{1} << 40)) throw FormatError("layer size implausibly large");
        const std::size_t n = (size * static_cast<std::uint64_t>(width) + 7) / 8;
        need(n);
        PackedArray a(size, width);
        for (std::size_t k = 0; k < n; ++k) a.words()[k / 8] |= std::uint64_t{bytes_[pos_ + k]} << (8 * (k % 8));
        pos_ += n;
        const std::size_t used = a.bit_count();
        if (used % 64 != 0 && !a.words().empty() && (a.words().back() >> (used % 64)) != 0)
            throw FormatError("nonzero padding bits");
        return a;
    }

    void need(std::size_t n) const {
        if (bytes_.size() - pos_ < n) throw FormatError("truncated oracle stream");
    }
    std::size_t position() const noexcept { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    std::size_t done = 0;
    while (done < bytes.size()) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - done, 1u << 30));
        crc = crc32(crc, bytes.data() + done, chunk);
        done += chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::vector<std::uint8_t> CompactOracle::serialize() const {
    Writer w;
    for (char c : kMagic) w.put(static_cast<std::uint8_t>(c));
    w.put(kVersion);
    w.put(static_cast<std::uint64_t>(n_original_));
    w.put(static_cast<std::uint64_t>(schedule_.n));
    w.put(schedule_.beta);
    w.put(static_cast<std::uint16_t>(schedule_.levels()));
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        w.put(static_cast<std::uint64_t>(layers_[i].objects));
        if (i + 1 < layers_.size()) w.put(static_cast<std::uint8_t>(layers_[i].data.width()));
        w.put_packed(layers_[i].data);
    }
    w.put(crc_of(w.bytes));
    return std::move(w.bytes);
}

void CompactOracle::serialize(std::ostream& out) const {
    const auto bytes = serialize();
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

CompactOracle CompactOracle::deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4) throw FormatError("truncated oracle stream");
    const auto body = bytes.first(bytes.size() - 4);
    Reader r(bytes);
    for (char c : kMagic)
        if (r.get<std::uint8_t>() != static_cast<std::uint8_t>(c)) throw FormatError("bad magic");
    if (r.get<std::uint16_t>() != kVersion) throw FormatError("unsupported format version");
    const auto n_original = r.get<std::uint64_t>();
    const auto n_padded = r.get<std::uint64_t>();
    const auto beta = r.get<double>();
    const auto levels = r.get<std::uint16_t>();
    if (n_original < 1 || n_padded > (1u << 30) || n_original > n_padded) throw FormatError("invalid matrix side");

    CompactOracle o;
    o.n_original_ = static_cast<int>(n_original);
    try {
        o.schedule_ = make_schedule(static_cast<int>(n_padded), beta);
    } catch (const Error& e) {
        throw FormatError(std::string("invalid schedule parameters: ") + e.what());
    }
    if (o.schedule_.levels() != levels) throw FormatError("layer count does not match schedule");
    const auto& m = o.schedule_.m;
    for (int i = 0; i <= levels; ++i) {
        Layer layer;
        layer.objects = r.get<std::uint64_t>();
        if (i < levels) {
            const int width = r.get<std::uint8_t>();
            const std::uint64_t q = static_cast<std::uint64_t>(m[i] / m[i + 1]);
            layer.data = r.get_packed(layer.objects * q * q, width);
        } else {
            layer.data = r.get_packed(layer.objects * static_cast<std::uint64_t>(m[i]) * m[i], 1);
        }
        o.layers_.push_back(std::move(layer));
    }
    if (r.position() > body.size()) throw FormatError("truncated oracle stream");
    if (r.position() < body.size()) throw FormatError("unexpected bytes after the last layer");
    const auto stored = r.get<std::uint32_t>();
    if (stored != crc_of(body)) throw FormatError("checksum mismatch");
    o.check_structure();
    return o;
}

CompactOracle CompactOracle::deserialize(std::istream& in) {
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace twinmat
