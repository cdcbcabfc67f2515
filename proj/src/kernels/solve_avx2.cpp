// Compiled with -mavx2 (no -mfma: a fused multiply-add would round
// differently from the scalar reference).
#include <immintrin.h>

#include "solve_impl.hpp"

namespace infoflow::kernels::detail {

std::size_t solve_avx2(const SolveBatch& s) {
    const std::size_t n = s.n, m = s.m, L = s.lanes;
    double* a = s.a.data();
    double* b = s.b.data();
    const std::size_t vec_end = L - L % 4;
    const __m256d floor = _mm256_set1_pd(kPivotFloor);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    std::size_t failed = kNoFailure;

    for (std::size_t l = 0; l < vec_end; l += 4) {
        int bad = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const __m256d piv = _mm256_loadu_pd(a + (k * n + k) * L + l);
            // NaN compares false under _CMP_GE_OQ, so it is flagged too.
            const int ok = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_and_pd(piv, abs_mask), floor, _CMP_GE_OQ));
            bad |= ~ok & 0xF;
            for (std::size_t i = k + 1; i < n; ++i) {
                const __m256d f = _mm256_div_pd(_mm256_loadu_pd(a + (i * n + k) * L + l), piv);
                for (std::size_t j = k + 1; j < n; ++j) {
                    double* dst = a + (i * n + j) * L + l;
                    const __m256d prod = _mm256_mul_pd(f, _mm256_loadu_pd(a + (k * n + j) * L + l));
                    _mm256_storeu_pd(dst, _mm256_sub_pd(_mm256_loadu_pd(dst), prod));
                }
                for (std::size_t c = 0; c < m; ++c) {
                    double* dst = b + (i * m + c) * L + l;
                    const __m256d prod = _mm256_mul_pd(f, _mm256_loadu_pd(b + (k * m + c) * L + l));
                    _mm256_storeu_pd(dst, _mm256_sub_pd(_mm256_loadu_pd(dst), prod));
                }
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            const __m256d d = _mm256_loadu_pd(a + (i * n + i) * L + l);
            for (std::size_t c = 0; c < m; ++c) {
                __m256d acc = _mm256_loadu_pd(b + (i * m + c) * L + l);
                for (std::size_t j = i + 1; j < n; ++j) {
                    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + (i * n + j) * L + l),
                                                       _mm256_loadu_pd(b + (j * m + c) * L + l));
                    acc = _mm256_sub_pd(acc, prod);
                }
                _mm256_storeu_pd(b + (i * m + c) * L + l, _mm256_div_pd(acc, d));
            }
        }
        if (bad != 0 && failed == kNoFailure) failed = l + static_cast<std::size_t>(__builtin_ctz(bad));
    }

    const std::size_t tail = solve_lanes_scalar(s, vec_end, L);
    return failed != kNoFailure ? failed : tail;
}

}  // namespace infoflow::kernels::detail
