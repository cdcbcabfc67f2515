#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "infoflow/markov_core.hpp"

namespace infoflow::kernels {

enum class SimdLevel { Scalar, Avx2, Neon };

std::string_view to_string(SimdLevel level) noexcept;

/// True if this binary carries a kernel for `level` and the CPU can run it.
bool supported(SimdLevel level) noexcept;

/// Best supported level, or the level named by INFOFLOW_SIMD
/// ("scalar", "avx2", "neon") when that is set and supported.
SimdLevel detected_level() noexcept;

SimdLevel active_level() noexcept;
/// Throws std::invalid_argument if `level` is not supported.
void set_active_level(SimdLevel level);

/// A batch of independent n x n systems A X = B with m right-hand sides,
/// stored lane-interleaved: entry (i, j) of lane l lives at
/// a[(i * n + j) * lanes + l], and likewise b[(i * m + c) * lanes + l].
struct SolveBatch {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t lanes = 0;
    std::span<double> a;
    std::span<double> b;
};

inline constexpr std::size_t kNoFailure = std::numeric_limits<std::size_t>::max();

/// Gaussian elimination without pivoting, in place: `a` is destroyed and `b`
/// receives X. Every level performs the same IEEE operations in the same
/// order, so results are bit-identical across levels.
///
/// Requires nonzero leading principal minors, which holds for I - Q of any
/// chain accepted by build_canonical (I - Q is then a nonsingular M-matrix).
/// Returns the first lane whose pivot fell below 1e-13 in magnitude, or
/// kNoFailure.
std::size_t solve_batch(const SolveBatch& batch, SimdLevel level);
std::size_t solve_batch(const SolveBatch& batch);

/// Absorption matrices of many equally-sized chains through solve_batch.
/// Throws SingularSystemError naming the offending chain index.
std::vector<Matrix> absorption_batch(std::span<const TransitionMatrix> chains);
std::vector<Matrix> absorption_batch(std::span<const TransitionMatrix> chains, SimdLevel level);

}  // namespace infoflow::kernels
