#pragma once

// Fixed-width unsigned integers packed back to back into 64-bit words.

#include <cstdint>
#include <vector>

namespace twinmat {

class PackedArray {
public:
    PackedArray() = default;
    PackedArray(std::size_t size, int width)
        : size_(size), width_(width), words_((size * static_cast<std::size_t>(width) + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }
    int width() const noexcept { return width_; }
    std::size_t bit_count() const noexcept { return size_ * static_cast<std::size_t>(width_); }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }
    std::vector<std::uint64_t>& words() noexcept { return words_; }

    std::uint64_t get(std::size_t index) const noexcept {
        const std::size_t bit = index * static_cast<std::size_t>(width_);
        const std::size_t word = bit >> 6;
        const unsigned offset = bit & 63;
        std::uint64_t value = words_[word] >> offset;
        if (offset + static_cast<unsigned>(width_) > 64) value |= words_[word + 1] << (64 - offset);
        return value & mask();
    }

    void set(std::size_t index, std::uint64_t value) noexcept {
        value &= mask();
        const std::size_t bit = index * static_cast<std::size_t>(width_);
        const std::size_t word = bit >> 6;
        const unsigned offset = bit & 63;
        words_[word] = (words_[word] & ~(mask() << offset)) | (value << offset);
        if (offset + static_cast<unsigned>(width_) > 64) {
            const unsigned spill = 64 - offset;
            words_[word + 1] = (words_[word + 1] & ~(mask() >> spill)) | (value >> spill);
        }
    }

    bool operator==(const PackedArray&) const = default;

private:
    std::uint64_t mask() const noexcept { return width_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1; }

    std::size_t size_ = 0;
    int width_ = 1;
    std::vector<std::uint64_t> words_;
};

}  // namespace twinmat
