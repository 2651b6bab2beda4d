// AVX2 kernel variants. Compiled with -mavx2; callers must check supported()
// (the dispatcher in kernels.cpp does) before routing work here.

#include <cstddef>
#include <cstdint>
#include <immintrin.h>

namespace gtower::kern::avx2 {

bool supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

void compose_u16(const std::uint16_t* lhs, const std::uint32_t* rhs,
                 std::uint16_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m128i idx16 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(lhs + i));
        __m256i idx = _mm256_cvtepu16_epi32(idx16);
        __m256i g = _mm256_i32gather_epi32(reinterpret_cast<const int*>(rhs), idx, 4);
        __m256i packed = _mm256_packus_epi32(g, _mm256_setzero_si256());
        packed = _mm256_permute4x64_epi64(packed, 0xD8);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i),
                         _mm256_castsi256_si128(packed));
    }
    for (; i < n; ++i) out[i] = static_cast<std::uint16_t>(rhs[lhs[i]]);
}

namespace {

inline __m256i fold_ge(__m256i t, __m256i vm) {
    // t in [0, 2m): subtract m where t >= m. Values stay well below 2^31 so
    // signed compares are safe.
    __m256i ge = _mm256_cmpgt_epi32(vm, t);            // m > t
    __m256i sub = _mm256_andnot_si256(ge, vm);         // m where t >= m
    return _mm256_sub_epi32(t, sub);
}

// r = v mod m for v < 2^24, via float reciprocal plus fixup.
inline __m256i mod_small(__m256i v, __m256i vm, __m256 rcp) {
    __m256 fv = _mm256_cvtepi32_ps(v);
    __m256i q = _mm256_cvttps_epi32(_mm256_mul_ps(fv, rcp));
    __m256i r = _mm256_sub_epi32(v, _mm256_mullo_epi32(q, vm));
    // q may be off by one either way; fix both directions twice for margin.
    __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
    r = _mm256_add_epi32(r, _mm256_and_si256(neg, vm));
    neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
    r = _mm256_add_epi32(r, _mm256_and_si256(neg, vm));
    r = fold_ge(r, vm);
    r = fold_ge(r, vm);
    return r;
}

} // namespace

void mod_add_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m) {
    __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i t = fold_ge(_mm256_add_epi32(va, vb), vm);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), t);
    }
    for (; i < n; ++i) {
        std::uint32_t t = a[i] + b[i];
        out[i] = t >= m ? t - m : t;
    }
}

void mod_add_scalar_vec(std::uint32_t s, const std::uint32_t* b,
                        std::uint32_t* out, std::size_t n, std::uint32_t m) {
    __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
    __m256i vs = _mm256_set1_epi32(static_cast<int>(s));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i t = fold_ge(_mm256_add_epi32(vs, vb), vm);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), t);
    }
    for (; i < n; ++i) {
        std::uint32_t t = s + b[i];
        out[i] = t >= m ? t - m : t;
    }
}

void mod_sub_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m) {
    __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i t = fold_ge(_mm256_sub_epi32(_mm256_add_epi32(va, vm), vb), vm);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), t);
    }
    for (; i < n; ++i) {
        std::uint32_t t = a[i] + m - b[i];
        out[i] = t >= m ? t - m : t;
    }
}

void mod_neg_vec(const std::uint32_t* a, std::uint32_t* out, std::size_t n,
                 std::uint32_t m) {
    __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
    __m256i vz = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i t = _mm256_sub_epi32(vm, va);
        __m256i zero = _mm256_cmpeq_epi32(va, vz);
        t = _mm256_andnot_si256(zero, t);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), t);
    }
    for (; i < n; ++i) out[i] = a[i] == 0 ? 0 : m - a[i];
}

void mod_mul_scalar_vec(std::uint32_t f, const std::uint32_t* b,
                        std::uint32_t* out, std::size_t n, std::uint32_t m) {
    __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
    __m256i vf = _mm256_set1_epi32(static_cast<int>(f));
    __m256 rcp = _mm256_set1_ps(1.0f / static_cast<float>(m));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i prod = _mm256_mullo_epi32(vf, vb);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                            mod_small(prod, vm, rcp));
    }
    for (; i < n; ++i)
        out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(f) * b[i]) % m);
}

void mod_mul_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m) {
    __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
    __m256 rcp = _mm256_set1_ps(1.0f / static_cast<float>(m));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i prod = _mm256_mullo_epi32(va, vb);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                            mod_small(prod, vm, rcp));
    }
    for (; i < n; ++i)
        out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a[i]) * b[i]) % m);
}

std::uint64_t cyclic_commutator_sweep(std::uint32_t d) {
    __m256i vd = _mm256_set1_epi32(static_cast<int>(d));
    __m256i vz = _mm256_setzero_si256();
    __m256i step = _mm256_set1_epi32(8);
    std::uint64_t bad = 0;
    for (std::uint32_t x = 0; x < d; ++x) {
        __m256i vx = _mm256_set1_epi32(static_cast<int>(x));
        __m256i vy = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
        std::uint64_t lane_bad = 0;
        std::uint32_t y = 0;
        for (; y + 8 <= d; y += 8) {
            __m256i u = fold_ge(_mm256_add_epi32(vx, vy), vd);
            __m256i v = fold_ge(_mm256_add_epi32(vy, vx), vd);
            __m256i w = _mm256_sub_epi32(vd, v);
            w = _mm256_andnot_si256(_mm256_cmpeq_epi32(v, vz), w);
            __m256i c = fold_ge(_mm256_add_epi32(w, u), vd);
            __m256i ok = _mm256_cmpeq_epi32(c, vz);
            lane_bad += static_cast<unsigned>(
                __builtin_popcount(~static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(ok))) & 0xFFu));
            vy = _mm256_add_epi32(vy, step);
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

} // namespace gtower::kern::avx2
