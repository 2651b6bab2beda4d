#include "gtower/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gtower {

std::int64_t add_i64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer addition overflow");
    return r;
}

std::int64_t sub_i64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow("integer subtraction overflow");
    return r;
}

std::int64_t mul_i64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer multiplication overflow");
    return r;
}

std::uint64_t mul_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer multiplication overflow");
    return r;
}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat mat_mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    IntMat out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const std::int64_t v = x.at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                out.at(i, j) = add_i64(out.at(i, j), mul_i64(v, y.at(k, j)));
        }
    return out;
}

std::int64_t determinant(const IntMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    IntMat w = m;
    std::int64_t prev = 1;
    std::int64_t sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && w.at(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                const std::int64_t num =
                    sub_i64(mul_i64(w.at(i, j), w.at(k, k)), mul_i64(w.at(i, k), w.at(k, j)));
                w.at(i, j) = num / prev; // exact in fraction-free elimination
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return mul_i64(sign, w.at(n - 1, n - 1));
}

namespace {

struct SnfWork {
    IntMat d, u, v;

    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < d.cols; ++j) std::swap(d.at(a, j), d.at(b, j));
        for (std::size_t j = 0; j < u.cols; ++j) std::swap(u.at(a, j), u.at(b, j));
    }
    void col_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < d.rows; ++i) std::swap(d.at(i, a), d.at(i, b));
        for (std::size_t i = 0; i < v.rows; ++i) std::swap(v.at(i, a), v.at(i, b));
    }
    // row a -= q * row b
    void row_sub(std::size_t a, std::size_t b, std::int64_t q) {
        for (std::size_t j = 0; j < d.cols; ++j)
            d.at(a, j) = sub_i64(d.at(a, j), mul_i64(q, d.at(b, j)));
        for (std::size_t j = 0; j < u.cols; ++j)
            u.at(a, j) = sub_i64(u.at(a, j), mul_i64(q, u.at(b, j)));
    }
    // col a -= q * col b
    void col_sub(std::size_t a, std::size_t b, std::int64_t q) {
        for (std::size_t i = 0; i < d.rows; ++i)
            d.at(i, a) = sub_i64(d.at(i, a), mul_i64(q, d.at(i, b)));
        for (std::size_t i = 0; i < v.rows; ++i)
            v.at(i, a) = sub_i64(v.at(i, a), mul_i64(q, v.at(i, b)));
    }
    void row_negate(std::size_t a) {
        for (std::size_t j = 0; j < d.cols; ++j) d.at(a, j) = sub_i64(0, d.at(a, j));
        for (std::size_t j = 0; j < u.cols; ++j) u.at(a, j) = sub_i64(0, u.at(a, j));
    }
};

} // namespace

SmithResult smith_normal_form(const IntMat& m) {
    SnfWork w{m, IntMat::identity(m.rows), IntMat::identity(m.cols)};
    const std::size_t steps = std::min(m.rows, m.cols);

    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block as pivot.
            std::size_t pi = t, pj = t;
            std::int64_t best = 0;
            for (std::size_t i = t; i < w.d.rows; ++i)
                for (std::size_t j = t; j < w.d.cols; ++j) {
                    const std::int64_t x = w.d.at(i, j);
                    if (x == 0) continue;
                    const std::int64_t ax = x < 0 ? -x : x;
                    if (best == 0 || ax < best) {
                        best = ax;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) { t = steps; break; }
            w.row_swap(t, pi);
            w.col_swap(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < w.d.rows; ++i) {
                if (w.d.at(i, t) == 0) continue;
                const std::int64_t q = w.d.at(i, t) / w.d.at(t, t);
                if (q != 0) w.row_sub(i, t, q);
                if (w.d.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < w.d.cols; ++j) {
                if (w.d.at(t, j) == 0) continue;
                const std::int64_t q = w.d.at(t, j) / w.d.at(t, t);
                if (q != 0) w.col_sub(j, t, q);
                if (w.d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue; // leftover remainders become smaller pivots

            // Pivot must divide the trailing block; drag a witness row up if not.
            bool fixed = false;
            for (std::size_t i = t + 1; i < w.d.rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < w.d.cols && !fixed; ++j)
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                        w.row_sub(t, i, -1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (t == steps) break;
        if (w.d.at(t, t) < 0) w.row_negate(t);
    }

    SmithResult res{w.d, w.u, w.v, {}};
    for (std::size_t i = 0; i < steps; ++i)
        if (res.d.at(i, i) != 0) res.diagonal.push_back(res.d.at(i, i));

    // Invariants: diagonal form, divisibility chain, unimodular transforms.
    for (std::size_t i = 0; i < res.d.rows; ++i)
        for (std::size_t j = 0; j < res.d.cols; ++j)
            if (i != j && res.d.at(i, j) != 0)
                throw std::logic_error("smith form is not diagonal");
    for (std::size_t i = 0; i + 1 < res.diagonal.size(); ++i)
        if (res.diagonal[i + 1] % res.diagonal[i] != 0)
            throw std::logic_error("smith diagonal is not a divisibility chain");
    const std::int64_t du = determinant(res.u);
    const std::int64_t dv = determinant(res.v);
    if ((du != 1 && du != -1) || (dv != 1 && dv != -1))
        throw std::logic_error("smith transforms are not unimodular");
    if (mat_mul(mat_mul(res.u, m), res.v) != res.d)
        throw std::logic_error("smith factorization does not reproduce the input");
    return res;
}

// ------------------------------------------------------------- AbelianGroup

AbelianGroup AbelianGroup::from_factors(std::vector<std::uint64_t> moduli) {
    for (std::uint64_t m : moduli)
        if (m == 0) throw std::invalid_argument("modulus must be positive");
    std::erase(moduli, 1u);
    // Pairwise gcd/lcm passes converge to the invariant factor chain.
    bool changed = true;
    int guard = 0;
    while (changed) {
        if (++guard > 10000) throw std::logic_error("invariant factor normalization diverged");
        changed = false;
        std::sort(moduli.begin(), moduli.end());
        for (std::size_t i = 0; i < moduli.size(); ++i)
            for (std::size_t j = i + 1; j < moduli.size(); ++j) {
                const std::uint64_t g = std::gcd(moduli[i], moduli[j]);
                if (g == moduli[i]) continue;
                const std::uint64_t l = mul_u64(moduli[i] / g, moduli[j]);
                moduli[i] = g;
                moduli[j] = l;
                changed = true;
            }
    }
    std::erase(moduli, 1u);
    std::sort(moduli.begin(), moduli.end());
    AbelianGroup a;
    a.d_ = std::move(moduli);
    return a;
}

std::uint64_t AbelianGroup::order() const {
    std::uint64_t o = 1;
    for (std::uint64_t d : d_) o = mul_u64(o, d);
    return o;
}

std::string AbelianGroup::to_string() const {
    if (d_.empty()) return "1";
    std::ostringstream out;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        if (i) out << " x ";
        out << "Z/" << d_[i];
    }
    return out.str();
}

AbelianGroup exterior_square(const AbelianGroup& a) {
    const auto& d = a.invariant_factors();
    std::vector<std::uint64_t> parts;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            parts.push_back(std::gcd(d[i], d[j]));
    return AbelianGroup::from_factors(std::move(parts));
}

AbelianGroup abelian_from_group(const FiniteGroup& g) {
    if (!is_abelian(g)) throw NotAbelian("group is not abelian");
    const std::uint64_t n = g.order();
    if (n == 1) return AbelianGroup{};
    const std::vector<std::uint64_t> orders = element_orders(g);

    std::vector<std::uint64_t> primes;
    {
        std::uint64_t rest = n;
        for (std::uint64_t p = 2; p * p <= rest; ++p)
            if (rest % p == 0) {
                primes.push_back(p);
                while (rest % p == 0) rest /= p;
            }
        if (rest > 1) primes.push_back(rest);
    }

    // Per prime: layer sizes |{x : x^(p^j) = 1}| = p^(m_j); the differences
    // m_j - m_(j-1) form the conjugate of the partition of prime exponents.
    std::vector<std::vector<std::uint32_t>> partitions; // descending parts per prime
    for (std::uint64_t p : primes) {
        std::vector<std::uint32_t> conj;
        std::uint64_t prev_log = 0;
        for (std::uint32_t j = 1;; ++j) {
            std::uint64_t pj = 1;
            for (std::uint32_t t = 0; t < j; ++t) pj = mul_u64(pj, p);
            std::uint64_t count = 0;
            for (std::uint64_t o : orders)
                if (pj % o == 0) ++count;
            std::uint64_t logc = 0;
            for (std::uint64_t c = count; c > 1; c /= p) {
                if (c % p != 0) throw std::logic_error("torsion layer size is not a prime power");
                ++logc;
            }
            if (logc == prev_log) break;
            conj.push_back(static_cast<std::uint32_t>(logc - prev_log));
            prev_log = logc;
        }
        std::uint32_t maxpart = conj.empty() ? 0 : conj[0];
        std::vector<std::uint32_t> parts;
        for (std::uint32_t i = 1; i <= maxpart; ++i) {
            std::uint32_t cnt = 0;
            for (std::uint32_t c : conj)
                if (c >= i) ++cnt;
            parts.push_back(cnt);
        }
        // parts is the partition sorted ascending by construction; flip it.
        std::reverse(parts.begin(), parts.end());
        partitions.push_back(std::move(parts));
    }

    std::size_t k = 0;
    for (const auto& parts : partitions) k = std::max(k, parts.size());
    std::vector<std::uint64_t> factors;
    for (std::size_t t = 0; t < k; ++t) { // t = 0 is the largest factor
        std::uint64_t f = 1;
        for (std::size_t pi = 0; pi < primes.size(); ++pi)
            if (t < partitions[pi].size())
                for (std::uint32_t e = 0; e < partitions[pi][t]; ++e)
                    f = mul_u64(f, primes[pi]);
        factors.push_back(f);
    }
    AbelianGroup a = AbelianGroup::from_factors(std::move(factors));
    if (a.order() != n) throw std::logic_error("recovered abelian type has the wrong order");
    return a;
}

// ------------------------------------------------------------- AbelianModel

std::uint32_t AbelianModel::element_for(const std::vector<std::uint32_t>& c) const {
    const auto& d = type.invariant_factors();
    if (c.size() != d.size()) throw std::invalid_argument("coordinate arity mismatch");
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (c[i] >= d[i]) throw std::invalid_argument("coordinate out of range");
        rank = rank * d[i] + c[i];
    }
    return rank_to_id[rank];
}

AbelianModel abelian_perm_model(const AbelianGroup& a, const Limits& lim) {
    const std::uint64_t n = a.order();
    if (n > lim.max_order) throw LimitExceeded("abelian model order exceeds the limit");
    const auto& d = a.invariant_factors();
    const std::size_t k = d.size();

    // Disjoint cycle blocks from the primary decomposition of each factor.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> blocks(k); // (offset, length)
    std::uint32_t degree = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t rest = d[i];
        for (std::uint64_t p = 2; p * p <= rest; ++p)
            if (rest % p == 0) {
                std::uint64_t q = 1;
                while (rest % p == 0) {
                    rest /= p;
                    q *= p;
                }
                blocks[i].push_back({degree, static_cast<std::uint32_t>(q)});
                degree += static_cast<std::uint32_t>(q);
            }
        if (rest > 1) {
            blocks[i].push_back({degree, static_cast<std::uint32_t>(rest)});
            degree += static_cast<std::uint32_t>(rest);
        }
    }
    if (degree == 0) degree = 1;

    AbelianModel model;
    model.type = a;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::uint16_t> img(degree);
        for (std::uint32_t x = 0; x < degree; ++x) img[x] = static_cast<std::uint16_t>(x);
        for (auto [off, len] : blocks[i])
            for (std::uint32_t x = 0; x < len; ++x)
                img[off + x] = static_cast<std::uint16_t>(off + (x + 1) % len);
        model.factor_generators.emplace_back(std::move(img));
    }

    std::vector<std::vector<Perm>> powers(k);
    for (std::size_t i = 0; i < k; ++i) {
        powers[i].push_back(Perm::identity(degree));
        for (std::uint64_t e = 1; e < d[i]; ++e)
            powers[i].push_back(powers[i].back().then(model.factor_generators[i]));
    }

    std::vector<Perm> elems;
    elems.reserve(n);
    std::vector<std::vector<std::uint32_t>> digit_of_rank(n);
    std::vector<std::uint32_t> digits(k, 0);
    for (std::uint64_t rank = 0;; ++rank) {
        Perm e = Perm::identity(degree);
        for (std::size_t i = 0; i < k; ++i) e = e.then(powers[i][digits[i]]);
        elems.push_back(std::move(e));
        digit_of_rank[rank] = digits;
        // mixed-radix increment, last coordinate fastest
        bool wrapped = true;
        for (std::size_t i = k; i-- > 0;) {
            if (++digits[i] < d[i]) {
                wrapped = false;
                break;
            }
            digits[i] = 0;
        }
        if (wrapped) break;
    }

    std::vector<Perm> gens = model.factor_generators;
    if (gens.empty()) gens.push_back(Perm::identity(degree));
    Limits closed = lim;
    closed.max_order = n;
    model.group = FiniteGroup::from_elements(elems, gens, closed);

    model.coords.resize(n);
    model.rank_to_id.resize(n);
    for (std::uint64_t rank = 0; rank < n; ++rank) {
        const std::uint32_t id = model.group->index_of(elems[rank]);
        model.coords[id] = digit_of_rank[rank];
        model.rank_to_id[rank] = id;
    }
    return model;
}

} // namespace gtower
