#include "gtower/group.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gtower {

namespace {

// BFS closure over a node-stable ordered set; pointers into the set stay valid
// across inserts, so the worklist can hold them directly. The set order is the
// canonical element order, so extraction yields the sorted element list.
std::vector<Perm> bfs_closure(const std::vector<Perm>& generators, std::uint64_t max_order) {
    if (generators.empty())
        throw std::invalid_argument("closure needs at least one generator");
    const std::uint32_t deg = generators.front().degree();
    for (const Perm& g : generators)
        if (g.degree() != deg)
            throw DegreeMismatch("generators have mixed degrees");

    std::vector<std::vector<std::uint32_t>> wide(generators.size(),
                                                 std::vector<std::uint32_t>(deg));
    for (std::size_t k = 0; k < generators.size(); ++k)
        kern::widen_u16_to_u32(generators[k].images().data(), wide[k].data(), deg);

    std::set<Perm> seen;
    std::vector<const Perm*> work;
    auto push = [&](Perm p) {
        auto [it, fresh] = seen.insert(std::move(p));
        if (fresh) {
            work.push_back(&*it);
            if (max_order != 0 && seen.size() > max_order)
                throw LimitExceeded("group closure exceeds the element limit");
        }
    };

    push(Perm::identity(deg));
    for (std::size_t i = 0; i < work.size(); ++i) {
        const Perm& cur = *work[i]; // set nodes are stable across inserts
        for (const auto& w : wide)
            push(cur.then_widened(w.data()));
    }

    std::vector<Perm> out;
    out.reserve(seen.size());
    while (!seen.empty()) {
        auto nh = seen.extract(seen.begin());
        out.push_back(std::move(nh.value()));
    }
    return out;
}

} // namespace

GroupPtr FiniteGroup::build(std::vector<Perm> elems, const std::vector<Perm>& gens) {
    if (!std::is_sorted(elems.begin(), elems.end()))
        std::sort(elems.begin(), elems.end());
    if (elems.empty() || !elems.front().is_identity())
        throw std::logic_error("element list must contain the identity");

    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->degree_ = elems.front().degree();
    g->elems_ = std::move(elems);

    g->inv_.resize(g->elems_.size());
    for (std::uint32_t i = 0; i < g->elems_.size(); ++i)
        g->inv_[i] = g->index_of(g->elems_[i].inverse());

    g->gen_ids_.reserve(gens.size());
    for (const Perm& p : gens)
        g->gen_ids_.push_back(g->index_of(p));

    return g;
}

GroupPtr FiniteGroup::close(const std::vector<Perm>& generators, const Limits& lim) {
    return build(bfs_closure(generators, lim.max_order), generators);
}

GroupPtr FiniteGroup::from_elements(std::vector<Perm> elements,
                                    const std::vector<Perm>& generators,
                                    const Limits& lim) {
    std::vector<Perm> closed = bfs_closure(generators, lim.max_order);
    std::sort(elements.begin(), elements.end());
    if (closed != elements)
        throw std::invalid_argument("element list is not the closure of the generators");
    return build(std::move(closed), generators);
}

GroupPtr FiniteGroup::trivial(std::uint32_t degree) {
    return build({Perm::identity(degree)}, {Perm::identity(degree)});
}

GroupPtr FiniteGroup::cyclic(std::uint32_t d) {
    if (d == 0)
        throw std::invalid_argument("cyclic group needs d >= 1");
    if (d == 1)
        return trivial(1);
    if (d > Perm::max_degree)
        throw LimitExceeded("cyclic degree exceeds the permutation degree limit");

    // Doubled index template; rotation by k is the window starting at k.
    std::vector<std::uint16_t> tmpl(2 * d);
    for (std::uint32_t i = 0; i < 2 * d; ++i)
        tmpl[i] = static_cast<std::uint16_t>(i % d);

    std::vector<Perm> rots;
    rots.reserve(d);
    for (std::uint32_t k = 0; k < d; ++k)
        rots.push_back(Perm::unchecked(
            std::vector<std::uint16_t>(tmpl.begin() + k, tmpl.begin() + k + d)));

    const Perm& step = rots[1];
    std::vector<std::uint32_t> wide(d);
    kern::widen_u16_to_u32(step.images().data(), wide.data(), d);
    for (std::uint32_t k = 0; k < d; ++k)
        if (rots[k].then_widened(wide.data()) != rots[(k + 1) % d])
            throw std::logic_error("rotation edge chain failed");

    // rots[k] has image 0 -> k, so the list is sorted already.
    return build(std::move(rots), {step});
}

std::uint32_t FiniteGroup::mul(std::uint32_t a, std::uint32_t b) const {
    const std::uint64_t n = elems_.size();
    if (n <= mul_table_limit) {
        std::call_once(table_once_, [this, n] {
            table_.resize(n * n);
            for (std::uint32_t x = 0; x < n; ++x)
                for (std::uint32_t y = 0; y < n; ++y)
                    table_[x * n + y] = index_of(elems_[x].then(elems_[y]));
        });
        return table_[a * n + b];
    }
    return index_of(elems_[a].then(elems_[b]));
}

std::uint32_t FiniteGroup::conj(std::uint32_t x, std::uint32_t g) const {
    return mul(mul(inv_[g], x), g);
}

std::uint32_t FiniteGroup::comm(std::uint32_t x, std::uint32_t y) const {
    // x^-1 y^-1 x y = (yx)^-1 (xy)
    return mul(inv_[mul(y, x)], mul(x, y));
}

std::optional<std::uint32_t> FiniteGroup::find(const Perm& p) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
    if (it == elems_.end() || *it != p)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - elems_.begin());
}

std::uint32_t FiniteGroup::index_of(const Perm& p) const {
    auto id = find(p);
    if (!id)
        throw std::logic_error("permutation is not an element of the group");
    return *id;
}

bool FiniteGroup::same_group(const FiniteGroup& other) const {
    return this == &other || elems_ == other.elems_;
}

// ------------------------------------------------------------------ Subgroup

bool Subgroup::contains(std::uint32_t id) const {
    return std::binary_search(members.begin(), members.end(), id);
}

Subgroup Subgroup::checked(GroupPtr parent, std::vector<std::uint32_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members.front() != FiniteGroup::identity_id)
        throw std::invalid_argument("subgroup must contain the identity");
    if (members.back() >= parent->order())
        throw std::invalid_argument("member id out of range");
    for (std::uint32_t a : members)
        for (std::uint32_t b : members)
            if (!std::binary_search(members.begin(), members.end(), parent->mul(a, b)))
                throw std::invalid_argument("member set is not closed under products");
    Subgroup s;
    s.parent = std::move(parent);
    s.members = std::move(members);
    return s;
}

// ------------------------------------------------------------------ GroupHom

GroupHom GroupHom::checked(GroupPtr dom, GroupPtr cod, std::vector<std::uint32_t> image_ids) {
    if (image_ids.size() != dom->order())
        throw NotAHomomorphism("image map must cover the whole domain");
    for (std::uint32_t v : image_ids)
        if (v >= cod->order())
            throw NotAHomomorphism("image id out of range");
    if (image_ids[FiniteGroup::identity_id] != FiniteGroup::identity_id)
        throw NotAHomomorphism("identity must map to the identity");

    const std::uint64_t n = dom->order();
    if (n <= pair_check_limit) {
        for (std::uint32_t x = 0; x < n; ++x)
            for (std::uint32_t y = 0; y < n; ++y)
                if (image_ids[dom->mul(x, y)] != cod->mul(image_ids[x], image_ids[y]))
                    throw NotAHomomorphism("map is not multiplicative");
    } else {
        // Edge sweep: checking f(xg) = f(x) f(g) for every element x and
        // generator g forces multiplicativity on all pairs by induction on
        // word length.
        for (std::uint32_t x = 0; x < n; ++x)
            for (std::uint32_t g : dom->generator_ids())
                if (image_ids[dom->mul(x, g)] != cod->mul(image_ids[x], image_ids[g]))
                    throw NotAHomomorphism("map is not multiplicative");
    }

    GroupHom h;
    h.dom_ = std::move(dom);
    h.cod_ = std::move(cod);
    h.map_ = std::move(image_ids);
    return h;
}

bool GroupHom::is_injective() const {
    std::vector<bool> hit(cod_->order(), false);
    for (std::uint32_t v : map_) {
        if (hit[v])
            return false;
        hit[v] = true;
    }
    return true;
}

bool GroupHom::is_surjective() const {
    std::vector<bool> hit(cod_->order(), false);
    std::uint64_t distinct = 0;
    for (std::uint32_t v : map_)
        if (!hit[v]) {
            hit[v] = true;
            ++distinct;
        }
    return distinct == cod_->order();
}

Subgroup GroupHom::kernel() const {
    std::vector<std::uint32_t> ids;
    for (std::uint32_t x = 0; x < map_.size(); ++x)
        if (map_[x] == FiniteGroup::identity_id)
            ids.push_back(x);
    return Subgroup::checked(dom_, std::move(ids));
}

Subgroup GroupHom::image() const {
    std::vector<std::uint32_t> ids(map_);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return Subgroup::checked(cod_, std::move(ids));
}

} // namespace gtower
