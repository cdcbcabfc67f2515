#include <arm_neon.h>

#include "solve_impl.hpp"

namespace infoflow::kernels::detail {

// Two double lanes per register. Uses separate vmulq/vsubq rather than vfmsq
// so rounding matches the scalar reference.
std::size_t solve_neon(const SolveBatch& s) {
    const std::size_t n = s.n, m = s.m, L = s.lanes;
    double* a = s.a.data();
    double* b = s.b.data();
    const std::size_t vec_end = L - L % 2;
    const float64x2_t floor = vdupq_n_f64(kPivotFloor);
    std::size_t failed = kNoFailure;

    for (std::size_t l = 0; l < vec_end; l += 2) {
        bool bad0 = false, bad1 = false;
        for (std::size_t k = 0; k < n; ++k) {
            const float64x2_t piv = vld1q_f64(a + (k * n + k) * L + l);
            const uint64x2_t ok = vcgeq_f64(vabsq_f64(piv), floor);
            bad0 = bad0 || vgetq_lane_u64(ok, 0) == 0;
            bad1 = bad1 || vgetq_lane_u64(ok, 1) == 0;
            for (std::size_t i = k + 1; i < n; ++i) {
                const float64x2_t f = vdivq_f64(vld1q_f64(a + (i * n + k) * L + l), piv);
                for (std::size_t j = k + 1; j < n; ++j) {
                    double* dst = a + (i * n + j) * L + l;
                    vst1q_f64(dst, vsubq_f64(vld1q_f64(dst), vmulq_f64(f, vld1q_f64(a + (k * n + j) * L + l))));
                }
                for (std::size_t c = 0; c < m; ++c) {
                    double* dst = b + (i * m + c) * L + l;
                    vst1q_f64(dst, vsubq_f64(vld1q_f64(dst), vmulq_f64(f, vld1q_f64(b + (k * m + c) * L + l))));
                }
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            const float64x2_t d = vld1q_f64(a + (i * n + i) * L + l);
            for (std::size_t c = 0; c < m; ++c) {
                float64x2_t acc = vld1q_f64(b + (i * m + c) * L + l);
                for (std::size_t j = i + 1; j < n; ++j)
                    acc = vsubq_f64(acc, vmulq_f64(vld1q_f64(a + (i * n + j) * L + l),
                                                   vld1q_f64(b + (j * m + c) * L + l)));
                vst1q_f64(b + (i * m + c) * L + l, vdivq_f64(acc, d));
            }
        }
        if (failed == kNoFailure && (bad0 || bad1)) failed = bad0 ? l : l + 1;
    }

    const std::size_t tail = solve_lanes_scalar(s, vec_end, L);
    return failed != kNoFailure ? failed : tail;
}

}  // namespace infoflow::kernels::detail
