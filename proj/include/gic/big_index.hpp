#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gic {

// Arbitrary-precision nonnegative rank. Ranks are 0-based everywhere in the
// library; the CLI documents its own index convention.
using BigIndex = boost::multiprecision::cpp_int;

inline std::uint64_t bit_length(const BigIndex& x) {
    if (x <= 0) return 0;
    return static_cast<std::uint64_t>(boost::multiprecision::msb(x)) + 1;
}

// Smallest w with x <= 2^w, i.e. the bit budget needed to address x values.
inline std::uint64_t ceil_log2(const BigIndex& x) {
    if (x <= 1) return 0;
    return bit_length(x - 1);
}

inline BigIndex pow2(std::uint64_t bits) {
    return BigIndex(1) << bits;
}

inline double to_double(const BigIndex& x) {
    return x.convert_to<double>();
}

inline std::uint64_t to_u64(const BigIndex& x) {
    if (x < 0 || x > BigIndex(UINT64_MAX))
        throw std::domain_error("BigIndex does not fit in 64 bits");
    return x.convert_to<std::uint64_t>();
}

inline std::string to_string(const BigIndex& x) {
    return x.str();
}

}  // namespace gic
