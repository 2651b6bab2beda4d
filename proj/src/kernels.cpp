#include "gtower/kernels.hpp"

#include <stdexcept>

namespace gtower::kern {

// ---------------------------------------------------------------- reference

namespace ref {

void compose_u16(const std::uint16_t* lhs, const std::uint32_t* rhs,
                 std::uint16_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<std::uint16_t>(rhs[lhs[i]]);
}

void mod_add_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t t = a[i] + b[i];
        out[i] = t >= m ? t - m : t;
    }
}

void mod_add_scalar_vec(std::uint32_t s, const std::uint32_t* b,
                        std::uint32_t* out, std::size_t n, std::uint32_t m) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t t = s + b[i];
        out[i] = t >= m ? t - m : t;
    }
}

void mod_sub_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t t = a[i] + m - b[i];
        out[i] = t >= m ? t - m : t;
    }
}

void mod_neg_vec(const std::uint32_t* a, std::uint32_t* out, std::size_t n,
                 std::uint32_t m) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a[i] == 0 ? 0 : m - a[i];
}

void mod_mul_scalar_vec(std::uint32_t f, const std::uint32_t* b,
                        std::uint32_t* out, std::size_t n, std::uint32_t m) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(f) * b[i]) % m);
}

void mod_mul_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a[i]) * b[i]) % m);
}

std::size_t mismatch_count(const std::uint32_t* a, const std::uint32_t* b,
                           std::size_t n, std::size_t* first_out) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) {
            if (bad == 0 && first_out) *first_out = i;
            ++bad;
        }
    }
    return bad;
}

std::uint64_t cyclic_commutator_sweep(std::uint32_t d) {
    std::uint64_t bad = 0;
    for (std::uint32_t x = 0; x < d; ++x) {
        for (std::uint32_t y = 0; y < d; ++y) {
            std::uint32_t u = x + y;
            if (u >= d) u -= d;
            std::uint32_t v = y + x;
            if (v >= d) v -= d;
            std::uint32_t w = v == 0 ? 0 : d - v; // v^-1
            std::uint32_t c = w + u;
            if (c >= d) c -= d;
            bad += (c != 0);
        }
    }
    return bad;
}

} // namespace ref

// ----------------------------------------------------------------- dispatch

#if defined(GT_BUILD_AVX2)
namespace avx2 {
bool supported();
void compose_u16(const std::uint16_t*, const std::uint32_t*, std::uint16_t*, std::size_t);
void mod_add_vec(const std::uint32_t*, const std::uint32_t*, std::uint32_t*, std::size_t, std::uint32_t);
void mod_add_scalar_vec(std::uint32_t, const std::uint32_t*, std::uint32_t*, std::size_t, std::uint32_t);
void mod_sub_vec(const std::uint32_t*, const std::uint32_t*, std::uint32_t*, std::size_t, std::uint32_t);
void mod_neg_vec(const std::uint32_t*, std::uint32_t*, std::size_t, std::uint32_t);
void mod_mul_scalar_vec(std::uint32_t, const std::uint32_t*, std::uint32_t*, std::size_t, std::uint32_t);
void mod_mul_vec(const std::uint32_t*, const std::uint32_t*, std::uint32_t*, std::size_t, std::uint32_t);
std::uint64_t cyclic_commutator_sweep(std::uint32_t);
} // namespace avx2
#endif

#if defined(GT_BUILD_AVX512)
namespace avx512 {
bool supported();
std::uint64_t cyclic_commutator_sweep(std::uint32_t);
} // namespace avx512
#endif

namespace {

Isa detect() {
#if defined(GT_BUILD_AVX512) && defined(GT_BUILD_AVX2)
    if (avx512::supported() && avx2::supported()) return Isa::avx512;
#endif
#if defined(GT_BUILD_AVX2)
    if (avx2::supported()) return Isa::avx2;
#endif
    return Isa::scalar;
}

Isa g_active = detect();

bool use_avx2() { return g_active != Isa::scalar; }

} // namespace

Isa active() { return g_active; }

bool avx2_available() {
#if defined(GT_BUILD_AVX2)
    return avx2::supported();
#else
    return false;
#endif
}

bool avx512_available() {
#if defined(GT_BUILD_AVX512)
    return avx512::supported() && avx2_available();
#else
    return false;
#endif
}

void force(Isa isa) {
    if (isa == Isa::avx2 && !avx2_available())
        throw std::runtime_error("avx2 kernels unavailable on this host");
    if (isa == Isa::avx512 && !avx512_available())
        throw std::runtime_error("avx512 kernels unavailable on this host");
    g_active = isa;
}

void reset_auto() { g_active = detect(); }

void widen_u16_to_u32(const std::uint16_t* src, std::uint32_t* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
}

void compose_u16(const std::uint16_t* lhs, const std::uint32_t* rhs,
                 std::uint16_t* out, std::size_t n) {
#if defined(GT_BUILD_AVX2)
    if (use_avx2()) { avx2::compose_u16(lhs, rhs, out, n); return; }
#endif
    ref::compose_u16(lhs, rhs, out, n);
}

void mod_add_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m) {
#if defined(GT_BUILD_AVX2)
    if (use_avx2()) { avx2::mod_add_vec(a, b, out, n, m); return; }
#endif
    ref::mod_add_vec(a, b, out, n, m);
}

void mod_add_scalar_vec(std::uint32_t s, const std::uint32_t* b,
                        std::uint32_t* out, std::size_t n, std::uint32_t m) {
#if defined(GT_BUILD_AVX2)
    if (use_avx2()) { avx2::mod_add_scalar_vec(s, b, out, n, m); return; }
#endif
    ref::mod_add_scalar_vec(s, b, out, n, m);
}

void mod_sub_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m) {
#if defined(GT_BUILD_AVX2)
    if (use_avx2()) { avx2::mod_sub_vec(a, b, out, n, m); return; }
#endif
    ref::mod_sub_vec(a, b, out, n, m);
}

void mod_neg_vec(const std::uint32_t* a, std::uint32_t* out, std::size_t n,
                 std::uint32_t m) {
#if defined(GT_BUILD_AVX2)
    if (use_avx2()) { avx2::mod_neg_vec(a, out, n, m); return; }
#endif
    ref::mod_neg_vec(a, out, n, m);
}

void mod_mul_scalar_vec(std::uint32_t f, const std::uint32_t* b,
                        std::uint32_t* out, std::size_t n, std::uint32_t m) {
#if defined(GT_BUILD_AVX2)
    if (use_avx2()) { avx2::mod_mul_scalar_vec(f, b, out, n, m); return; }
#endif
    ref::mod_mul_scalar_vec(f, b, out, n, m);
}

void mod_mul_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m) {
#if defined(GT_BUILD_AVX2)
    if (use_avx2()) { avx2::mod_mul_vec(a, b, out, n, m); return; }
#endif
    ref::mod_mul_vec(a, b, out, n, m);
}

std::size_t mismatch_count(const std::uint32_t* a, const std::uint32_t* b,
                           std::size_t n, std::size_t* first_out) {
    // Memory-bound scan; one implementation is enough.
    return ref::mismatch_count(a, b, n, first_out);
}

std::uint64_t cyclic_commutator_sweep(std::uint32_t d) {
#if defined(GT_BUILD_AVX512)
    if (g_active == Isa::avx512) return avx512::cyclic_commutator_sweep(d);
#endif
#if defined(GT_BUILD_AVX2)
    if (g_active == Isa::avx2) return avx2::cyclic_commutator_sweep(d);
#endif
    return ref::cyclic_commutator_sweep(d);
}

} // namespace gtower::kern
