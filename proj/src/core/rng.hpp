#ifndef RADTRIM_RNG_HPP
#define RADTRIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace radtrim {

// splitmix64 finalizer; full-period 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Substream seed = element (index + 1) of the splitmix64 sequence started at
// `master`. Distinct indices give decorrelated engine seeds, so replication i
// can be rerun in isolation.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + (index + 1) * 0x9e3779b97f4a7c15ull);
}

// Deterministic normal generator: mt19937_64 (bit-exact by the standard) and
// an explicit Box-Muller transform, because std::normal_distribution is
// implementation-defined and would tie outputs to one standard library.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    static RngStream substream(std::uint64_t master, std::uint64_t index) {
        return RngStream(substream_seed(master, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on (0, 1]: never 0, so log() below is safe.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace radtrim

#endif
