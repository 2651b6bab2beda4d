#include "gtower/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace gtower {

namespace {

constexpr std::uint32_t unset = UINT32_MAX;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Derived subgroup of the subgroup generated by `hgens`, as sorted ids.
// Commutators of the generators, then normal closure under conjugation by
// `hgens`; conjugating a generating set conjugates the whole subgroup, so
// stabilizing on generators stabilizes the subgroup.
std::vector<std::uint32_t> derived_ids(const FiniteGroup& g,
                                       const std::vector<std::uint32_t>& hgens) {
    std::vector<std::uint32_t> seed;
    for (std::uint32_t a : hgens)
        for (std::uint32_t b : hgens) {
            std::uint32_t c = g.comm(a, b);
            if (c != FiniteGroup::identity_id) seed.push_back(c);
        }
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());

    std::vector<std::uint32_t> closure = closure_ids(g, seed);
    for (std::size_t i = 0; i < seed.size(); ++i) {
        for (std::uint32_t h : hgens) {
            std::uint32_t c = g.conj(seed[i], h);
            if (!std::binary_search(closure.begin(), closure.end(), c)) {
                seed.push_back(c);
                closure = closure_ids(g, seed);
            }
        }
    }
    return closure;
}

} // namespace

std::vector<std::uint32_t> closure_ids(const FiniteGroup& g,
                                       const std::vector<std::uint32_t>& seed,
                                       std::uint64_t limit) {
    std::vector<char> in(g.order(), 0);
    std::vector<std::uint32_t> out{FiniteGroup::identity_id};
    in[FiniteGroup::identity_id] = 1;
    for (std::uint32_t s : seed)
        if (!in[s]) {
            in[s] = 1;
            out.push_back(s);
        }
    for (std::size_t p = 0; p < out.size(); ++p)
        for (std::uint32_t s : seed) {
            std::uint32_t y = g.mul(out[p], s);
            if (!in[y]) {
                in[y] = 1;
                out.push_back(y);
                if (limit != 0 && out.size() > limit)
                    throw LimitExceeded("subgroup closure exceeds the configured limit");
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

Subgroup subgroup_generated(GroupPtr g, const std::vector<std::uint32_t>& seed) {
    std::vector<std::uint32_t> members = closure_ids(*g, seed);
    return Subgroup{std::move(g), std::move(members)};
}

std::vector<std::uint32_t> generating_ids_of(const FiniteGroup& parent,
                                             const std::vector<std::uint32_t>& members) {
    std::vector<std::uint32_t> gens;
    std::vector<std::uint32_t> cl{FiniteGroup::identity_id};
    for (std::uint32_t m : members) {
        if (cl.size() == members.size()) break;
        if (std::binary_search(cl.begin(), cl.end(), m)) continue;
        gens.push_back(m);
        cl = closure_ids(parent, gens);
    }
    if (cl.size() != members.size())
        throw std::invalid_argument("member set is not a subgroup");
    return gens;
}

std::vector<std::uint32_t> generating_ids(const FiniteGroup& g) {
    std::vector<std::uint32_t> all(g.order());
    std::iota(all.begin(), all.end(), 0u);
    return generating_ids_of(g, all);
}

GroupPtr group_from_members(const FiniteGroup& parent,
                            const std::vector<std::uint32_t>& members) {
    std::vector<std::uint32_t> gen_ids = generating_ids_of(parent, members);
    std::vector<Perm> gens;
    for (std::uint32_t i : gen_ids) gens.push_back(parent.element(i));
    if (gens.empty()) gens.push_back(Perm::identity(parent.degree()));
    std::vector<Perm> elems;
    elems.reserve(members.size());
    for (std::uint32_t i : members) elems.push_back(parent.element(i));
    Limits lim;
    lim.max_order = members.size();
    return FiniteGroup::from_elements(std::move(elems), gens, lim);
}

bool is_abelian(const FiniteGroup& g) {
    for (std::uint32_t a : g.generator_ids())
        for (std::uint32_t b : g.generator_ids())
            if (g.mul(a, b) != g.mul(b, a)) return false;
    return true;
}

Subgroup center(GroupPtr g) {
    std::vector<std::uint32_t> z;
    for (std::uint32_t x = 0; x < g->order(); ++x) {
        bool central = true;
        for (std::uint32_t gen : g->generator_ids())
            if (g->mul(x, gen) != g->mul(gen, x)) {
                central = false;
                break;
            }
        if (central) z.push_back(x);
    }
    return Subgroup{std::move(g), std::move(z)};
}

Subgroup derived_subgroup(GroupPtr g) {
    std::vector<std::uint32_t> ids = derived_ids(*g, g->generator_ids());
    return Subgroup{std::move(g), std::move(ids)};
}

std::vector<std::uint64_t> derived_series_orders(GroupPtr g) {
    std::vector<std::uint64_t> orders{g->order()};
    std::vector<std::uint32_t> gens = g->generator_ids();
    while (true) {
        std::vector<std::uint32_t> next = derived_ids(*g, gens);
        if (next.size() == orders.back()) break;
        orders.push_back(next.size());
        if (next.size() == 1) break;
        gens = generating_ids_of(*g, next);
    }
    return orders;
}

bool is_solvable(GroupPtr g) { return derived_series_orders(std::move(g)).back() == 1; }

std::vector<std::uint64_t> element_orders(const FiniteGroup& g) {
    std::vector<std::uint64_t> out(g.order());
    for (std::uint32_t i = 0; i < g.order(); ++i) out[i] = g.element_order(i);
    return out;
}

std::uint64_t exponent(const FiniteGroup& g) {
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i < g.order(); ++i) e = std::lcm(e, g.element_order(i));
    return e;
}

std::vector<std::vector<std::uint32_t>> conjugacy_classes(const FiniteGroup& g) {
    std::vector<char> seen(g.order(), 0);
    std::vector<std::vector<std::uint32_t>> classes;
    for (std::uint32_t x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        std::vector<std::uint32_t> orbit{x};
        seen[x] = 1;
        for (std::size_t p = 0; p < orbit.size(); ++p)
            for (std::uint32_t gen : g.generator_ids()) {
                std::uint32_t y = g.conj(orbit[p], gen);
                if (!seen[y]) {
                    seen[y] = 1;
                    orbit.push_back(y);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        classes.push_back(std::move(orbit));
    }
    return classes;
}

bool is_normal(const FiniteGroup& g, const std::vector<std::uint32_t>& members) {
    std::vector<std::uint32_t> hgens = generating_ids_of(g, members);
    for (std::uint32_t h : hgens)
        for (std::uint32_t gen : g.generator_ids())
            if (!std::binary_search(members.begin(), members.end(), g.conj(h, gen)))
                return false;
    return true;
}

// Every normal subgroup is the join of the normal closures of the conjugacy
// classes it contains, so closing the class atoms under pairwise joins
// enumerates the full lattice.
std::vector<Subgroup> normal_subgroups(GroupPtr g, const Limits& lim) {
    if (g->order() > lim.normal_enum_limit)
        throw LimitExceeded("normal subgroup enumeration limit exceeded");

    struct Node {
        std::vector<std::uint32_t> members;
        std::vector<std::uint32_t> gens;
    };
    std::vector<Node> atoms;
    std::map<std::vector<std::uint32_t>, std::size_t> seen;
    for (const auto& cls : conjugacy_classes(*g)) {
        std::vector<std::uint32_t> members = closure_ids(*g, cls);
        if (seen.count(members)) continue;
        seen.emplace(members, atoms.size());
        atoms.push_back({members, generating_ids_of(*g, members)});
    }

    std::vector<Node> lattice;
    std::map<std::vector<std::uint32_t>, std::size_t> have;
    for (const Node& a : atoms) {
        if (have.count(a.members)) continue;
        have.emplace(a.members, lattice.size());
        lattice.push_back(a);
    }
    for (std::size_t p = 0; p < lattice.size(); ++p)
        for (const Node& a : atoms) {
            std::vector<std::uint32_t> jg = lattice[p].gens;
            jg.insert(jg.end(), a.gens.begin(), a.gens.end());
            std::vector<std::uint32_t> join = closure_ids(*g, jg);
            if (have.count(join)) continue;
            have.emplace(join, lattice.size());
            lattice.push_back({std::move(join), std::move(jg)});
        }

    std::vector<Subgroup> out;
    out.reserve(lattice.size());
    for (auto& node : lattice) out.push_back(Subgroup{g, std::move(node.members)});
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    });
    return out;
}

Subgroup normalizer(GroupPtr g, const Subgroup& h) {
    std::vector<std::uint32_t> hgens = generating_ids_of(*g, h.members);
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < g->order(); ++x) {
        bool ok = true;
        for (std::uint32_t hg : hgens)
            if (!h.contains(g->conj(hg, x))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return Subgroup{std::move(g), std::move(out)};
}

std::pair<GroupPtr, GroupHom> quotient_group(GroupPtr g, const Subgroup& n) {
    if (!is_normal(*g, n.members)) throw NotNormal("quotient requires a normal subgroup");
    const std::uint64_t order = g->order();
    const std::uint64_t cosets = order / n.members.size();
    if (cosets > Perm::max_degree)
        throw LimitExceeded("quotient degree exceeds permutation degree limit");

    // Right cosets, numbered by their smallest representative.
    std::vector<std::uint32_t> coset_of(order, unset);
    std::vector<std::uint32_t> rep;
    for (std::uint32_t x = 0; x < order; ++x) {
        if (coset_of[x] != unset) continue;
        const auto c = static_cast<std::uint32_t>(rep.size());
        rep.push_back(x);
        for (std::uint32_t m : n.members) coset_of[g->mul(m, x)] = c;
    }

    const auto deg = static_cast<std::uint32_t>(cosets);
    std::vector<Perm> action;
    action.reserve(order);
    for (std::uint32_t x = 0; x < order; ++x) {
        std::vector<std::uint16_t> img(deg);
        for (std::uint32_t c = 0; c < deg; ++c)
            img[c] = static_cast<std::uint16_t>(coset_of[g->mul(rep[c], x)]);
        action.emplace_back(std::move(img));
    }

    std::vector<Perm> qelems;
    {
        std::vector<Perm> tmp(action);
        std::sort(tmp.begin(), tmp.end());
        tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
        qelems = std::move(tmp);
    }
    std::vector<Perm> qgens;
    for (std::uint32_t gi : g->generator_ids()) qgens.push_back(action[gi]);
    if (qgens.empty()) qgens.push_back(Perm::identity(deg));
    Limits lim;
    lim.max_order = qelems.size();
    GroupPtr q = FiniteGroup::from_elements(std::move(qelems), qgens, lim);

    std::vector<std::uint32_t> map(order);
    for (std::uint32_t x = 0; x < order; ++x) map[x] = q->index_of(action[x]);
    GroupHom pi = GroupHom::checked(g, q, std::move(map));

    std::vector<std::uint32_t> ker;
    for (std::uint32_t x = 0; x < order; ++x)
        if (pi.apply(x) == FiniteGroup::identity_id) ker.push_back(x);
    if (ker != n.members) throw std::logic_error("projection kernel differs from the subgroup");
    return {std::move(q), std::move(pi)};
}

Subgroup sylow_subgroup(GroupPtr g, std::uint64_t ell) {
    if (!is_prime(ell)) throw std::invalid_argument("sylow prime must be prime");
    std::uint64_t target = 1;
    for (std::uint64_t o = g->order(); o % ell == 0; o /= ell) target *= ell;

    auto ell_power = [&](std::uint64_t o) {
        while (o % ell == 0) o /= ell;
        return o == 1;
    };
    const std::vector<std::uint64_t> orders = element_orders(*g);

    std::vector<std::uint32_t> members{FiniteGroup::identity_id};
    std::vector<std::uint32_t> gens;
    std::vector<char> in(g->order(), 0);
    in[FiniteGroup::identity_id] = 1;
    while (members.size() < target) {
        // Any element of prime-power order normalizing the current subgroup
        // extends it to a strictly larger one of the same prime power shape;
        // such an element exists while the subgroup is not yet Sylow.
        bool grew = false;
        for (std::uint32_t x = 0; x < g->order() && !grew; ++x) {
            if (in[x] || orders[x] < 2 || !ell_power(orders[x])) continue;
            bool normalizes = true;
            for (std::uint32_t hg : gens)
                if (!in[g->conj(hg, x)]) {
                    normalizes = false;
                    break;
                }
            if (!normalizes) continue;
            gens.push_back(x);
            members = closure_ids(*g, gens, target);
            std::fill(in.begin(), in.end(), 0);
            for (std::uint32_t m : members) in[m] = 1;
            grew = true;
        }
        if (!grew) throw std::logic_error("sylow extension step found no element");
    }
    return Subgroup{std::move(g), std::move(members)};
}

std::optional<Subgroup> find_complement(GroupPtr g, const Subgroup& n, const Limits& lim) {
    const std::uint64_t target = g->order() / n.members.size();
    if (n.members.size() == 1) return whole_subgroup(g);
    if (target == 1) return trivial_subgroup(g);

    auto [q, pi] = quotient_group(g, n);
    std::vector<std::uint32_t> qgens = generating_ids(*q);
    std::vector<char> in_n(g->order(), 0);
    for (std::uint32_t m : n.members) in_n[m] = 1;

    // Lift fibers of the quotient generators, in canonical order. Restricting
    // pi to any complement is an isomorphism onto q, so every complement is
    // generated by one lift per quotient generator; the tuple search is
    // exhaustive.
    std::vector<std::vector<std::uint32_t>> fibers(qgens.size());
    for (std::uint32_t x = 0; x < g->order(); ++x)
        for (std::size_t j = 0; j < qgens.size(); ++j)
            if (pi.apply(x) == qgens[j]) fibers[j].push_back(x);

    // Closure of the chosen lifts, abandoned as soon as it meets n beyond the
    // identity or outgrows the complement order.
    auto try_close = [&](const std::vector<std::uint32_t>& seed,
                         std::vector<std::uint32_t>& out) {
        std::vector<char> in(g->order(), 0);
        out.assign(1, FiniteGroup::identity_id);
        in[FiniteGroup::identity_id] = 1;
        for (std::uint32_t s : seed) {
            if (in[s]) continue;
            if (in_n[s]) return false;
            in[s] = 1;
            out.push_back(s);
        }
        for (std::size_t p = 0; p < out.size(); ++p)
            for (std::uint32_t s : seed) {
                std::uint32_t y = g->mul(out[p], s);
                if (in[y]) continue;
                if (in_n[y] || out.size() >= target) return false;
                in[y] = 1;
                out.push_back(y);
            }
        return true;
    };

    std::uint64_t tuples = 0;
    std::vector<std::uint32_t> chosen(qgens.size());
    std::vector<std::uint32_t> closure;
    std::function<std::optional<Subgroup>(std::size_t)> dfs =
        [&](std::size_t level) -> std::optional<Subgroup> {
        if (level == qgens.size()) {
            if (++tuples > lim.complement_tuples)
                throw LimitExceeded("complement search tuple limit exceeded");
            std::vector<std::uint32_t> seed(chosen.begin(), chosen.end());
            if (!try_close(seed, closure)) return std::nullopt;
            if (closure.size() != target) return std::nullopt;
            std::sort(closure.begin(), closure.end());
            return Subgroup{g, closure};
        }
        for (std::uint32_t lift : fibers[level]) {
            chosen[level] = lift;
            // Prune on the partial tuple before descending.
            std::vector<std::uint32_t> seed(chosen.begin(), chosen.begin() + level + 1);
            std::vector<std::uint32_t> partial;
            if (!try_close(seed, partial)) continue;
            if (auto found = dfs(level + 1)) return found;
        }
        return std::nullopt;
    };
    return dfs(0);
}

GroupHom hom_from_images(GroupPtr dom, GroupPtr cod,
                         const std::vector<Perm>& generator_images) {
    const std::vector<std::uint32_t>& gens = dom->generator_ids();
    if (generator_images.size() != gens.size())
        throw std::invalid_argument("one image per domain generator required");
    std::vector<std::uint32_t> img_ids;
    for (const Perm& p : generator_images) {
        auto got = cod->find(p);
        if (!got) throw NotAHomomorphism("image is not an element of the codomain");
        img_ids.push_back(*got);
    }

    std::vector<std::uint32_t> map(dom->order(), unset);
    std::vector<std::uint32_t> span{FiniteGroup::identity_id};
    map[FiniteGroup::identity_id] = FiniteGroup::identity_id;
    for (std::size_t p = 0; p < span.size(); ++p)
        for (std::size_t j = 0; j < gens.size(); ++j) {
            std::uint32_t y = dom->mul(span[p], gens[j]);
            std::uint32_t fy = cod->mul(map[span[p]], img_ids[j]);
            if (map[y] == unset) {
                map[y] = fy;
                span.push_back(y);
            } else if (map[y] != fy) {
                throw NotAHomomorphism("generator images do not extend to a homomorphism");
            }
        }
    if (span.size() != dom->order())
        throw std::logic_error("domain generators do not generate the domain");
    return GroupHom::checked(std::move(dom), std::move(cod), std::move(map));
}

namespace {

struct IsoSearch {
    const FiniteGroup& g;
    const FiniteGroup& h;
    const std::function<bool(const std::vector<std::uint32_t>&,
                             const std::vector<std::uint32_t>&)>& extension_ok;
    const std::function<bool(const std::vector<std::uint32_t>&)>& on_found;

    std::vector<std::uint32_t> dgens;
    std::vector<std::vector<std::uint32_t>> candidates;
    std::vector<std::uint32_t> map;
    std::vector<char> used;
    std::vector<std::uint32_t> span;
    bool stopped = false;

    bool assign(std::uint32_t x, std::uint32_t y) {
        if (used[y]) return false;
        map[x] = y;
        used[y] = 1;
        span.push_back(x);
        return true;
    }

    void undo(std::size_t mark) {
        while (span.size() > mark) {
            std::uint32_t x = span.back();
            span.pop_back();
            used[map[x]] = 0;
            map[x] = unset;
        }
    }

    // Close the span under the first `ngens` assigned generators, mapping as
    // it goes. Elements present before this call are already closed under the
    // previous generators, so they only need products with the new one.
    bool extend(std::size_t ngens, std::size_t old_size) {
        for (std::size_t p = 0; p < span.size(); ++p) {
            const std::size_t fromgen = p < old_size ? ngens - 1 : 0;
            for (std::size_t j = fromgen; j < ngens; ++j) {
                std::uint32_t x = span[p];
                std::uint32_t y = g.mul(x, dgens[j]);
                std::uint32_t fy = h.mul(map[x], map[dgens[j]]);
                if (map[y] == unset) {
                    if (!assign(y, fy)) return false;
                } else if (map[y] != fy) {
                    return false;
                }
            }
        }
        return true;
    }

    bool dfs(std::size_t level) {
        if (level == dgens.size()) {
            if (on_found && on_found(map)) stopped = true;
            return stopped;
        }
        for (std::uint32_t cand : candidates[level]) {
            const std::size_t mark = span.size();
            bool ok = map[dgens[level]] == unset ? assign(dgens[level], cand)
                                                 : map[dgens[level]] == cand;
            if (ok) ok = extend(level + 1, mark);
            if (ok && extension_ok) ok = extension_ok(span, map);
            if (ok && dfs(level + 1)) return true;
            undo(mark);
        }
        return false;
    }
};

std::vector<std::uint64_t> sorted_copy(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

bool enumerate_isomorphisms(
    GroupPtr g, GroupPtr h, const Limits& lim,
    const std::function<bool(const std::vector<std::uint32_t>&,
                             const std::vector<std::uint32_t>&)>& extension_ok,
    const std::function<bool(const std::vector<std::uint32_t>&)>& on_found) {
    if (g->order() != h->order()) return false;
    if (g->order() > lim.iso_limit)
        throw LimitExceeded("isomorphism search order limit exceeded");

    const std::vector<std::uint64_t> gorders = element_orders(*g);
    const std::vector<std::uint64_t> horders = element_orders(*h);
    if (sorted_copy(gorders) != sorted_copy(horders)) return false;

    auto class_size_of = [](const FiniteGroup& grp, std::uint64_t n) {
        std::vector<std::uint64_t> size(n, 0);
        for (const auto& cls : conjugacy_classes(grp))
            for (std::uint32_t x : cls) size[x] = cls.size();
        return size;
    };
    const std::vector<std::uint64_t> gclass = class_size_of(*g, g->order());
    const std::vector<std::uint64_t> hclass = class_size_of(*h, h->order());
    if (sorted_copy(gclass) != sorted_copy(hclass)) return false;
    if (center(g).order() != center(h).order()) return false;
    if (derived_subgroup(g).order() != derived_subgroup(h).order()) return false;

    IsoSearch search{*g, *h, extension_ok, on_found, {}, {}, {}, {}, {}, false};
    search.dgens = generating_ids(*g);
    search.candidates.resize(search.dgens.size());
    for (std::size_t j = 0; j < search.dgens.size(); ++j) {
        const std::uint32_t x = search.dgens[j];
        for (std::uint32_t y = 0; y < h->order(); ++y)
            if (gorders[x] == horders[y] && gclass[x] == hclass[y])
                search.candidates[j].push_back(y);
        if (search.candidates[j].empty()) return false;
    }
    search.map.assign(g->order(), unset);
    search.used.assign(h->order(), 0);
    search.map[FiniteGroup::identity_id] = FiniteGroup::identity_id;
    search.used[FiniteGroup::identity_id] = 1;
    search.span.push_back(FiniteGroup::identity_id);
    search.dfs(0);
    return search.stopped;
}

std::optional<GroupHom> is_isomorphic(GroupPtr g, GroupPtr h, const Limits& lim) {
    if (g->order() == 1 && h->order() == 1)
        return GroupHom::checked(g, h, {FiniteGroup::identity_id});
    std::vector<std::uint32_t> witness;
    bool found = enumerate_isomorphisms(
        g, h, lim, nullptr,
        [&](const std::vector<std::uint32_t>& map) {
            witness = map;
            return true;
        });
    if (!found) return std::nullopt;
    return GroupHom::checked(std::move(g), std::move(h), std::move(witness));
}

} // namespace gtower
