#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace infoflow {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of stream `index` under `master`. Counter-based, so any stream can be
/// constructed without generating the ones before it.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// A random stream with portable variate generation. The standard library's
/// distributions are implementation-defined, so normal and gamma variates are
/// generated here to keep outputs identical across toolchains.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    RandomStream(std::uint64_t master, std::uint64_t index) : engine_(derive_seed(master, index)) {}

    static constexpr result_type min() noexcept { return std::mt19937_64::min(); }
    static constexpr result_type max() noexcept { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double uniform();
    /// Standard normal (Marsaglia polar method).
    double normal();
    /// Gamma(shape, 1), shape > 0 (Marsaglia-Tsang, with the U^(1/shape) boost below 1).
    double gamma(double shape);
    /// log of a Gamma(shape, 1) variate; stays finite for very small shapes.
    double log_gamma(double shape);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace infoflow
