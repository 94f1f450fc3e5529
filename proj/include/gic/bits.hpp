#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gic {

/// Raised when a sealed invariant fails at runtime (CLI exit code 2).
struct invariant_violation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Packed bit blob, MSB-first within each byte. Used for codec parameter
/// blobs, where the charged cost is the exact bit count.
struct Bits {
    std::vector<std::uint8_t> bytes;
    std::uint64_t nbits = 0;

    void push_bit(bool b) {
        if (nbits % 8 == 0) bytes.push_back(0);
        if (b) bytes.back() |= static_cast<std::uint8_t>(0x80u >> (nbits % 8));
        ++nbits;
    }

    void push(std::uint64_t value, int width) {
        for (int i = width - 1; i >= 0; --i) push_bit((value >> i) & 1);
    }

    bool get(std::uint64_t i) const {
        if (i >= nbits) throw std::out_of_range("Bits::get");
        return (bytes[i / 8] >> (7 - i % 8)) & 1;
    }

    bool operator==(const Bits& o) const {
        return nbits == o.nbits && bytes == o.bytes;
    }
};

struct BitReader {
    const Bits& bits;
    std::uint64_t pos = 0;

    explicit BitReader(const Bits& b) : bits(b) {}

    bool read_bit() { return bits.get(pos++); }

    std::uint64_t read(int width) {
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) v = (v << 1) | (read_bit() ? 1 : 0);
        return v;
    }

    std::uint64_t remaining() const { return bits.nbits - pos; }
};

}  // namespace gic
