#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace gtower {

// Permutation of {0, ..., degree-1}. Composition reads left to right:
// (p.then(q))(x) = q(p(x)). Degree is capped at 65535 so images pack into
// uint16 and the compose kernels can gather on 32-bit indices.
class Perm {
public:
    static constexpr std::uint32_t max_degree = 65535;

    Perm() = default;
    explicit Perm(std::vector<std::uint16_t> images);

    // Skips the permutation check; only for construction paths whose output
    // is a permutation by construction (windows of a rotation template,
    // compositions of existing permutations).
    static Perm unchecked(std::vector<std::uint16_t> images);

    static Perm identity(std::uint32_t degree);
    // Product of the given cycles, applied left to right. Cycles need not be
    // disjoint; points must be < degree.
    static Perm from_cycles(const std::vector<std::vector<std::uint32_t>>& cycles,
                            std::uint32_t degree);

    std::uint32_t degree() const { return static_cast<std::uint32_t>(img_.size()); }
    std::uint16_t operator[](std::uint32_t i) const { return img_[i]; }
    const std::vector<std::uint16_t>& images() const { return img_; }

    Perm then(const Perm& q) const;
    // Compose against a permutation already widened to u32 (same degree).
    // Closure loops widen each generator once instead of per product.
    Perm then_widened(const std::uint32_t* wide_rhs) const;
    Perm inverse() const;
    bool is_identity() const;
    std::uint64_t order() const;
    std::vector<std::uint32_t> cycle_lengths() const; // ascending, fixed points included
    std::string to_cycle_string() const;

    bool operator==(const Perm&) const = default;
    std::strong_ordering operator<=>(const Perm&) const = default;

private:
    std::vector<std::uint16_t> img_;
};

} // namespace gtower
