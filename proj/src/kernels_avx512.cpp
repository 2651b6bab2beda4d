// AVX-512 variant of the fused cyclic sweep, the only kernel hot enough for
// 512-bit lanes (it runs d^2 pairs per group over thousands of groups). The
// short mod/compose kernels stay on the 256-bit paths.

#include <cstdint>
#include <immintrin.h>

namespace gtower::kern::avx512 {

bool supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx512f") != 0;
#else
    return false;
#endif
}

std::uint64_t cyclic_commutator_sweep(std::uint32_t d) {
    __m512i vd = _mm512_set1_epi32(static_cast<int>(d));
    __m512i vz = _mm512_setzero_si512();
    __m512i step = _mm512_set1_epi32(16);
    std::uint64_t bad = 0;
    for (std::uint32_t x = 0; x < d; ++x) {
        __m512i vx = _mm512_set1_epi32(static_cast<int>(x));
        __m512i vy = _mm512_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15);
        std::uint64_t lane_bad = 0;
        std::uint32_t y = 0;
        for (; y + 16 <= d; y += 16) {
            __m512i u = _mm512_add_epi32(vx, vy);
            u = _mm512_mask_sub_epi32(u, _mm512_cmpge_epu32_mask(u, vd), u, vd);
            __m512i v = _mm512_add_epi32(vy, vx);
            v = _mm512_mask_sub_epi32(v, _mm512_cmpge_epu32_mask(v, vd), v, vd);
            __m512i w = _mm512_maskz_sub_epi32(_mm512_cmpneq_epu32_mask(v, vz), vd, v);
            __m512i c = _mm512_add_epi32(w, u);
            c = _mm512_mask_sub_epi32(c, _mm512_cmpge_epu32_mask(c, vd), c, vd);
            lane_bad += static_cast<unsigned>(
                __builtin_popcount(_mm512_cmpneq_epu32_mask(c, vz)));
            vy = _mm512_add_epi32(vy, step);
        }
        for (; y < d; ++y) {
            std::uint32_t u = x + y;
            if (u >= d) u -= d;
            std::uint32_t v = y + x;
            if (v >= d) v -= d;
            std::uint32_t w = v == 0 ? 0 : d - v;
            std::uint32_t c = w + u;
            if (c >= d) c -= d;
            lane_bad += (c != 0);
        }
        bad += lane_bad;
    }
    return bad;
}

} // namespace gtower::kern::avx512
