#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "gtower/limits.hpp"
#include "gtower/perm.hpp"

namespace gtower {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Fully enumerated permutation group. Elements are stored sorted
// lexicographically by image vector, which puts the identity at index 0 and
// makes every derived computation deterministic. Lookup is binary search on
// that order (no hashing); a multiplication table is filled lazily for small
// groups. Immutable once built apart from that table.
class FiniteGroup {
public:
    // BFS closure of the generators. Throws LimitExceeded past lim.max_order.
    static GroupPtr close(const std::vector<Perm>& generators, const Limits& lim = {});
    // Wrap a known element list; verifies it is exactly the closure of
    // `generators` (throws std::invalid_argument if not).
    static GroupPtr from_elements(std::vector<Perm> elements,
                                  const std::vector<Perm>& generators,
                                  const Limits& lim = {});
    static GroupPtr trivial(std::uint32_t degree);
    // Rotation group on d points (the regular representation of Z/d). Element
    // i is the rotation by i, so element order and index coincide. Built
    // directly and verified by the generator edge chain rot_i * rot_1 =
    // rot_{i+1}, which pins every element as a power of rot_1.
    static GroupPtr cyclic(std::uint32_t d);

    std::uint32_t degree() const { return degree_; }
    std::uint64_t order() const { return elems_.size(); }
    const std::vector<Perm>& elements() const { return elems_; }
    const Perm& element(std::uint32_t i) const { return elems_[i]; }
    const std::vector<std::uint32_t>& generator_ids() const { return gen_ids_; }
    static constexpr std::uint32_t identity_id = 0;

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
    // Conjugate of x by g: g^-1 x g.
    std::uint32_t conj(std::uint32_t x, std::uint32_t g) const;
    // Commutator x^-1 y^-1 x y.
    std::uint32_t comm(std::uint32_t x, std::uint32_t y) const;
    std::uint64_t element_order(std::uint32_t a) const { return elems_[a].order(); }

    std::optional<std::uint32_t> find(const Perm& p) const;
    std::uint32_t index_of(const Perm& p) const; // throws if absent
    bool same_group(const FiniteGroup& other) const;

private:
    FiniteGroup() = default;
    static GroupPtr build(std::vector<Perm> elems, const std::vector<Perm>& gens);

    std::uint32_t degree_ = 0;
    std::vector<Perm> elems_;
    std::vector<std::uint32_t> gen_ids_;
    std::vector<std::uint32_t> inv_;
    // Lazy multiplication table for groups up to mul_table_limit elements.
    static constexpr std::uint64_t mul_table_limit = 1024;
    mutable std::vector<std::uint32_t> table_;
    mutable std::once_flag table_once_;
};

// Subgroup of a fixed parent group: sorted member ids, product-closed.
struct Subgroup {
    GroupPtr parent;
    std::vector<std::uint32_t> members; // sorted, includes the identity

    std::uint64_t order() const { return members.size(); }
    bool contains(std::uint32_t id) const;
    bool is_whole() const { return members.size() == parent->order(); }

    // Validates closure under products (hence a subgroup).
    static Subgroup checked(GroupPtr parent, std::vector<std::uint32_t> members);
};

// Total homomorphism between enumerated groups, validated at construction:
// identity goes to identity and f(xy) = f(x) f(y). The check is a full pair
// sweep up to `pair_check_limit` elements; beyond that it walks every
// (element, generator) product, which forces multiplicativity on all pairs by
// induction on word length.
class GroupHom {
public:
    static constexpr std::uint64_t pair_check_limit = 1024;

    static GroupHom checked(GroupPtr dom, GroupPtr cod,
                            std::vector<std::uint32_t> image_ids);

    const GroupPtr& domain() const { return dom_; }
    const GroupPtr& codomain() const { return cod_; }
    std::uint32_t apply(std::uint32_t x) const { return map_[x]; }
    const std::vector<std::uint32_t>& image_map() const { return map_; }

    bool is_injective() const;
    bool is_surjective() const;
    Subgroup kernel() const;
    Subgroup image() const;

private:
    GroupHom() = default;
    GroupPtr dom_, cod_;
    std::vector<std::uint32_t> map_;
};

// ------------------------------------------------------------ constructions

Subgroup trivial_subgroup(GroupPtr g);
Subgroup whole_subgroup(GroupPtr g);

// Subgroup generated by the given element ids.
Subgroup subgroup_generated(GroupPtr g, const std::vector<std::uint32_t>& seed);

// Ids of the subgroup generated by `seed`, sorted. Throws LimitExceeded if it
// grows past `limit` (0 = no limit).
std::vector<std::uint32_t> closure_ids(const FiniteGroup& g,
                                       const std::vector<std::uint32_t>& seed,
                                       std::uint64_t limit = 0);

// Standalone group with the same degree whose elements are `members`.
GroupPtr group_from_members(const FiniteGroup& parent,
                            const std::vector<std::uint32_t>& members);

// Greedy small generating set (canonical, not guaranteed minimum).
std::vector<std::uint32_t> generating_ids(const FiniteGroup& g);
std::vector<std::uint32_t> generating_ids_of(const FiniteGroup& parent,
                                             const std::vector<std::uint32_t>& members);

// -------------------------------------------------------------- invariants

bool is_abelian(const FiniteGroup& g);
Subgroup center(GroupPtr g);
Subgroup derived_subgroup(GroupPtr g);
std::vector<std::uint64_t> derived_series_orders(GroupPtr g);
bool is_solvable(GroupPtr g);
std::uint64_t exponent(const FiniteGroup& g);
// Element orders indexed by element id.
std::vector<std::uint64_t> element_orders(const FiniteGroup& g);

// Conjugacy classes as sorted id vectors, ordered by smallest member.
std::vector<std::vector<std::uint32_t>> conjugacy_classes(const FiniteGroup& g);

bool is_normal(const FiniteGroup& g, const std::vector<std::uint32_t>& members);

// Every normal subgroup, sorted by (order, members). Throws LimitExceeded when
// g.order() > lim.normal_enum_limit.
std::vector<Subgroup> normal_subgroups(GroupPtr g, const Limits& lim = {});

Subgroup normalizer(GroupPtr g, const Subgroup& h);

// Quotient by a normal subgroup, realized on the cosets, plus the projection.
// Kernel of the projection is re-checked to equal n.
std::pair<GroupPtr, GroupHom> quotient_group(GroupPtr g, const Subgroup& n);

// Sylow ell-subgroup (ell prime); trivial when ell does not divide the order.
Subgroup sylow_subgroup(GroupPtr g, std::uint64_t ell);

// Complement search: H with H ∩ N = 1 and |H| * |N| = |G|, N normal.
// nullopt means none exists (the search is exhaustive unless it throws
// LimitExceeded).
std::optional<Subgroup> find_complement(GroupPtr g, const Subgroup& n,
                                        const Limits& lim = {});

// Extends generator images to a homomorphism; throws NotAHomomorphism if the
// assignment does not extend.
GroupHom hom_from_images(GroupPtr dom, GroupPtr cod,
                         const std::vector<Perm>& generator_images);

// Isomorphism search by backtracking over generator images with order and
// class-size pruning. Throws LimitExceeded past lim.iso_limit.
std::optional<GroupHom> is_isomorphic(GroupPtr g, GroupPtr h, const Limits& lim = {});

// Backtracking core shared with the isoclinism search: enumerates isomorphisms
// g -> h; `extension_ok` (if set) can veto a partial map (arguments: ids of
// the subgroup spanned so far in discovery order, current image array with
// UINT32_MAX for unassigned); `on_found` returns true to stop the search.
bool enumerate_isomorphisms(
    GroupPtr g, GroupPtr h, const Limits& lim,
    const std::function<bool(const std::vector<std::uint32_t>&,
                             const std::vector<std::uint32_t>&)>& extension_ok,
    const std::function<bool(const std::vector<std::uint32_t>&)>& on_found);

} // namespace gtower
