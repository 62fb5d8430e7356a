#ifndef PHISHML_COMMON_HPP
#define PHISHML_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace phishml {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kModelFormatVersion = 1;

/// Bad configuration or usage (CLI maps this to exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad input data: malformed files, schema mismatches (CLI exit code 2).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Deterministic randomness helpers. std::mt19937 is fully specified by the
// standard; std::uniform_int_distribution and std::shuffle are not, so all
// bounded draws and shuffles go through these.
// ---------------------------------------------------------------------------

/// Uniform draw in [0, n) by rejection sampling, portable across platforms.
inline std::uint32_t bounded_uniform(std::mt19937& rng, std::uint32_t n) {
    if (n <= 1) return 0;
    // 64-bit arithmetic throughout: when n divides 2^32 the limit is exactly
    // 2^32, which would truncate to 0 in 32 bits and reject forever.
    const std::uint64_t limit = (0x100000000ULL / n) * n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return static_cast<std::uint32_t>(x % n);
}

/// Uniform double in [0, 1) from one 32-bit draw.
inline double unit_uniform(std::mt19937& rng) {
    return static_cast<double>(rng()) * (1.0 / 4294967296.0);
}

/// Deterministic Fisher-Yates shuffle.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::uint32_t j = bounded_uniform(rng, static_cast<std::uint32_t>(i));
        std::swap(items[i - 1], items[j]);
    }
}

// ---------------------------------------------------------------------------
// FNV-1a 64-bit hashing, used for dataset fingerprints and stage audit hashes.
// ---------------------------------------------------------------------------

struct Fnv1a {
    std::uint64_t state = 0xcbf29ce484222325ULL;

    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state ^= p[i];
            state *= 0x100000001b3ULL;
        }
    }
    void update(const std::string& s) { update(s.data(), s.size()); }
    void update(std::int64_t v) { update(&v, sizeof(v)); }
    void update(double v) { update(&v, sizeof(v)); }

    std::uint64_t digest() const { return state; }
};

std::string to_hex(std::uint64_t value);

}  // namespace phishml

#endif
