#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and (on x86-64 with AVX2) a vectorized variant; the active
// variant is picked once at startup from CPUID and can be forced for testing.
// Both variants are bit-for-bit equivalent; tests/test_kernels.cpp compares
// them on randomized inputs.

namespace gtower::kern {

// avx512 selects the 512-bit fused sweep and keeps the 256-bit paths for the
// short kernels (their arrays are cache-resident; wider lanes gain nothing).
enum class Isa { scalar, avx2, avx512 };

// Currently active instruction set.
Isa active();
// True if the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available();
bool avx512_available();
// Force a specific variant (tests). Throws std::runtime_error if unavailable.
void force(Isa isa);
// Return to runtime auto-detection.
void reset_auto();

// out[i] = rhs[lhs[i]] for i in [0, n). `rhs` is pre-widened to 32 bits so the
// AVX2 variant can gather without reading past the buffer.
void compose_u16(const std::uint16_t* lhs, const std::uint32_t* rhs,
                 std::uint16_t* out, std::size_t n);

void widen_u16_to_u32(const std::uint16_t* src, std::uint32_t* dst, std::size_t n);

// Lane-parallel arithmetic mod m on uint32 values. All inputs are < m.
void mod_add_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m);
void mod_add_scalar_vec(std::uint32_t s, const std::uint32_t* b,
                        std::uint32_t* out, std::size_t n, std::uint32_t m);
void mod_sub_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m);
void mod_neg_vec(const std::uint32_t* a, std::uint32_t* out, std::size_t n,
                 std::uint32_t m);
// f * b[i] mod m with f < m, b[i] < m. Requires m <= 4096 so products stay
// below 2^24 and are exact in the float reduction used by the vector variant.
void mod_mul_scalar_vec(std::uint32_t f, const std::uint32_t* b,
                        std::uint32_t* out, std::size_t n, std::uint32_t m);
void mod_mul_vec(const std::uint32_t* a, const std::uint32_t* b,
                 std::uint32_t* out, std::size_t n, std::uint32_t m);

// Number of positions where a and b differ; if nonzero and first_out is given,
// *first_out is the smallest differing index.
std::size_t mismatch_count(const std::uint32_t* a, const std::uint32_t* b,
                           std::size_t n, std::size_t* first_out = nullptr);

// Fused sweep for cyclic groups Z/d: checks that the commutator of every pair
// (x, y), computed as (y+x)^-1 + (x+y) through genuine mod-d arithmetic,
// vanishes. Returns the number of failing pairs (0 for a correct kernel).
std::uint64_t cyclic_commutator_sweep(std::uint32_t d);

} // namespace gtower::kern
