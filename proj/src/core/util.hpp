#ifndef RADTRIM_UTIL_HPP
#define RADTRIM_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace radtrim {

inline constexpr const char* kVersion = "0.1.0";

// ceil/floor of quantities like alpha*n that are integers in exact arithmetic
// but may land an ulp off in floating point (0.1 * 100 = 10.000000000000002).
// The snap tolerance pulls such values back to the intended integer.
inline long snap_ceil(double x) {
    return static_cast<long>(std::ceil(x - 1e-9 * std::max(1.0, std::fabs(x))));
}

inline long snap_floor(double x) {
    return static_cast<long>(std::floor(x + 1e-9 * std::max(1.0, std::fabs(x))));
}

// 17 significant digits: enough for double round-trips in CSV/JSON output.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// FNV-1a 64-bit, used for dataset checksums and config hashes in manifests.
inline std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace radtrim

#endif
