#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtower/group.hpp"
#include "gtower/limits.hpp"

namespace gtower {

// Checked 64-bit arithmetic; throws Overflow.
std::int64_t add_i64(std::int64_t a, std::int64_t b);
std::int64_t sub_i64(std::int64_t a, std::int64_t b);
std::int64_t mul_i64(std::int64_t a, std::int64_t b);
std::uint64_t mul_u64(std::uint64_t a, std::uint64_t b);

struct IntMat {
    std::size_t rows = 0, cols = 0;
    std::vector<std::int64_t> a;

    IntMat() = default;
    IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    std::int64_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    static IntMat identity(std::size_t n);
    bool operator==(const IntMat&) const = default;
};

IntMat mat_mul(const IntMat& x, const IntMat& y);
// Determinant by fraction-free elimination.
std::int64_t determinant(const IntMat& m);

// d = u * m * v with u, v unimodular and d diagonal, each diagonal entry
// dividing the next. Verified before returning.
struct SmithResult {
    IntMat d, u, v;
    std::vector<std::int64_t> diagonal; // nonzero entries, divisibility chain
};
SmithResult smith_normal_form(const IntMat& m);

// Finite abelian group in invariant factor form d_1 | d_2 | ... | d_k, every
// factor at least 2; the trivial group has no factors.
class AbelianGroup {
public:
    AbelianGroup() = default;
    // Normalizes any list of moduli (entries >= 1) into invariant factors.
    static AbelianGroup from_factors(std::vector<std::uint64_t> moduli);

    const std::vector<std::uint64_t>& invariant_factors() const { return d_; }
    std::size_t rank() const { return d_.size(); }
    std::uint64_t order() const;
    std::uint64_t exponent() const { return d_.empty() ? 1 : d_.back(); }
    bool trivial() const { return d_.empty(); }
    std::string to_string() const;
    bool operator==(const AbelianGroup&) const = default;

private:
    std::vector<std::uint64_t> d_;
};

// Alternating square: one cyclic factor gcd(d_i, d_j) per unordered pair.
AbelianGroup exterior_square(const AbelianGroup& a);

// Invariant factors of an abelian permutation group, recovered from the sizes
// of its prime-power torsion layers. Throws NotAbelian.
AbelianGroup abelian_from_group(const FiniteGroup& g);

// Minimal-degree permutation realization: one cycle per prime-power block of
// the primary decomposition. Keeps the coordinate chart over the invariant
// factors in both directions.
struct AbelianModel {
    AbelianGroup type;
    GroupPtr group;
    std::vector<Perm> factor_generators;              // one per invariant factor
    std::vector<std::vector<std::uint32_t>> coords;   // by element id
    std::uint32_t element_for(const std::vector<std::uint32_t>& c) const;

    std::vector<std::uint32_t> rank_to_id; // mixed-radix rank -> element id
};
AbelianModel abelian_perm_model(const AbelianGroup& a, const Limits& lim = {});

} // namespace gtower
