#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "infoflow/errors.hpp"
#include "solve_impl.hpp"

namespace infoflow::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(INFOFLOW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

SimdLevel best_level() noexcept {
#if defined(INFOFLOW_HAVE_NEON)
    return SimdLevel::Neon;
#else
    return cpu_has_avx2() ? SimdLevel::Avx2 : SimdLevel::Scalar;
#endif
}

std::atomic<SimdLevel>& active() noexcept {
    static std::atomic<SimdLevel> level{detected_level()};
    return level;
}

}  // namespace

std::string_view to_string(SimdLevel level) noexcept {
    switch (level) {
        case SimdLevel::Scalar: return "scalar";
        case SimdLevel::Avx2: return "avx2";
        case SimdLevel::Neon: return "neon";
    }
    return "unknown";
}

bool supported(SimdLevel level) noexcept {
    switch (level) {
        case SimdLevel::Scalar: return true;
        case SimdLevel::Avx2: return cpu_has_avx2();
        case SimdLevel::Neon:
#if defined(INFOFLOW_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

SimdLevel detected_level() noexcept {
    if (const char* env = std::getenv("INFOFLOW_SIMD")) {
        const std::string_view want(env);
        for (SimdLevel l : {SimdLevel::Scalar, SimdLevel::Avx2, SimdLevel::Neon})
            if (want == to_string(l) && supported(l)) return l;
    }
    return best_level();
}

SimdLevel active_level() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_level(SimdLevel level) {
    if (!supported(level))
        throw std::invalid_argument("SIMD level " + std::string(to_string(level)) + " is not available");
    active().store(level, std::memory_order_relaxed);
}

std::size_t solve_batch(const SolveBatch& batch, SimdLevel level) {
    if (batch.a.size() < batch.n * batch.n * batch.lanes || batch.b.size() < batch.n * batch.m * batch.lanes)
        throw std::invalid_argument("solve_batch: buffers smaller than n, m, lanes imply");
    switch (level) {
#if defined(INFOFLOW_HAVE_AVX2)
        case SimdLevel::Avx2:
            if (cpu_has_avx2()) return detail::solve_avx2(batch);
            break;
#endif
#if defined(INFOFLOW_HAVE_NEON)
        case SimdLevel::Neon: return detail::solve_neon(batch);
#endif
        default: break;
    }
    if (level != SimdLevel::Scalar)
        throw std::invalid_argument("SIMD level " + std::string(to_string(level)) + " is not available");
    return detail::solve_scalar(batch);
}

std::size_t solve_batch(const SolveBatch& batch) { return solve_batch(batch, active_level()); }

std::vector<Matrix> absorption_batch(std::span<const TransitionMatrix> chains, SimdLevel level) {
    if (chains.empty()) return {};
    const std::size_t n = chains.front().n_transient();
    const std::size_t m = chains.front().n_absorbing();
    const std::size_t lanes = chains.size();
    std::vector<double> a(n * n * lanes);
    std::vector<double> b(n * m * lanes);
    for (std::size_t l = 0; l < lanes; ++l) {
        const TransitionMatrix& tm = chains[l];
        if (tm.n_transient() != n || tm.n_absorbing() != m)
            throw std::invalid_argument("absorption_batch: chains differ in dimensions");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                a[(i * n + j) * lanes + l] = (i == j ? 1.0 : 0.0) - tm.q()(i, j);
            for (std::size_t c = 0; c < m; ++c) b[(i * m + c) * lanes + l] = tm.r()(i, c);
        }
    }
    const std::size_t failed = solve_batch({n, m, lanes, a, b}, level);
    if (failed != kNoFailure)
        throw SingularSystemError("I - Q is numerically singular for chain " + std::to_string(failed));

    std::vector<Matrix> out(lanes, Matrix(n, m));
    for (std::size_t l = 0; l < lanes; ++l)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < m; ++c) out[l](i, c) = b[(i * m + c) * lanes + l];
    return out;
}

std::vector<Matrix> absorption_batch(std::span<const TransitionMatrix> chains) {
    return absorption_batch(chains, active_level());
}

}  // namespace infoflow::kernels
