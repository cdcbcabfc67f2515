#pragma once

// Internal: per-level kernel entry points and the shared scalar lane loop.

#include <cmath>
#include <cstddef>

#include "infoflow/kernels/batched_solve.hpp"

namespace infoflow::kernels::detail {

inline constexpr double kPivotFloor = 1e-13;

/// Scalar reference for lanes [first, last). The SIMD variants use it for
/// their tails and must match its operation order exactly.
inline std::size_t solve_lanes_scalar(const SolveBatch& s, std::size_t first, std::size_t last) {
    const std::size_t n = s.n, m = s.m, L = s.lanes;
    double* a = s.a.data();
    double* b = s.b.data();
    std::size_t failed = kNoFailure;
    for (std::size_t l = first; l < last; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
            const double piv = a[(k * n + k) * L + l];
            if (!(std::abs(piv) >= kPivotFloor) && failed == kNoFailure) failed = l;
            for (std::size_t i = k + 1; i < n; ++i) {
                const double f = a[(i * n + k) * L + l] / piv;
                for (std::size_t j = k + 1; j < n; ++j)
                    a[(i * n + j) * L + l] = a[(i * n + j) * L + l] - f * a[(k * n + j) * L + l];
                for (std::size_t c = 0; c < m; ++c)
                    b[(i * m + c) * L + l] = b[(i * m + c) * L + l] - f * b[(k * m + c) * L + l];
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            const double d = a[(i * n + i) * L + l];
            for (std::size_t c = 0; c < m; ++c) {
                double acc = b[(i * m + c) * L + l];
                for (std::size_t j = i + 1; j < n; ++j)
                    acc = acc - a[(i * n + j) * L + l] * b[(j * m + c) * L + l];
                b[(i * m + c) * L + l] = acc / d;
            }
        }
    }
    return failed;
}

std::size_t solve_scalar(const SolveBatch& s);
#if defined(INFOFLOW_HAVE_AVX2)
std::size_t solve_avx2(const SolveBatch& s);
#endif
#if defined(INFOFLOW_HAVE_NEON)
std::size_t solve_neon(const SolveBatch& s);
#endif

}  // namespace infoflow::kernels::detail
