#include "gtower/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "gtower/kernels.hpp"
#include "gtower/limits.hpp"

namespace gtower {

Perm::Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {
    if (img_.size() > max_degree)
        throw LimitExceeded("permutation degree exceeds 65535");
    std::vector<bool> seen(img_.size(), false);
    for (std::uint16_t v : img_) {
        if (v >= img_.size() || seen[v])
            throw std::invalid_argument("image list is not a permutation");
        seen[v] = true;
    }
}

Perm Perm::unchecked(std::vector<std::uint16_t> images) {
    Perm p;
    p.img_ = std::move(images);
    return p;
}

Perm Perm::identity(std::uint32_t degree) {
    std::vector<std::uint16_t> img(degree);
    std::iota(img.begin(), img.end(), static_cast<std::uint16_t>(0));
    Perm p;
    p.img_ = std::move(img);
    return p;
}

Perm Perm::from_cycles(const std::vector<std::vector<std::uint32_t>>& cycles,
                       std::uint32_t degree) {
    if (degree > max_degree) throw LimitExceeded("degree exceeds 65535");
    Perm result = identity(degree);
    for (const auto& cyc : cycles) {
        Perm step = identity(degree);
        std::vector<bool> used(degree, false);
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            std::uint32_t from = cyc[k];
            std::uint32_t to = cyc[(k + 1) % cyc.size()];
            if (from >= degree || to >= degree)
                throw std::invalid_argument("cycle point out of range");
            if (used[from])
                throw std::invalid_argument("repeated point within a cycle");
            used[from] = true;
            step.img_[from] = static_cast<std::uint16_t>(to);
        }
        result = result.then(step);
    }
    return result;
}

Perm Perm::then(const Perm& q) const {
    if (degree() != q.degree())
        throw DegreeMismatch("compose of permutations of different degree");
    std::vector<std::uint32_t> wide(q.img_.size());
    kern::widen_u16_to_u32(q.img_.data(), wide.data(), q.img_.size());
    return then_widened(wide.data());
}

Perm Perm::then_widened(const std::uint32_t* wide_rhs) const {
    Perm out;
    out.img_.resize(img_.size());
    kern::compose_u16(img_.data(), wide_rhs, out.img_.data(), img_.size());
    return out;
}

Perm Perm::inverse() const {
    Perm out;
    out.img_.resize(img_.size());
    for (std::uint32_t i = 0; i < img_.size(); ++i)
        out.img_[img_[i]] = static_cast<std::uint16_t>(i);
    return out;
}

bool Perm::is_identity() const {
    for (std::uint32_t i = 0; i < img_.size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

std::vector<std::uint32_t> Perm::cycle_lengths() const {
    std::vector<bool> seen(img_.size(), false);
    std::vector<std::uint32_t> lens;
    for (std::uint32_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        std::uint32_t len = 0;
        for (std::uint32_t j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    return lens;
}

std::uint64_t Perm::order() const {
    std::uint64_t ord = 1;
    for (std::uint32_t len : cycle_lengths()) {
        std::uint64_t g = std::gcd(ord, static_cast<std::uint64_t>(len));
        std::uint64_t q = ord / g;
        if (q != 0 && len > 0 && q > UINT64_MAX / len)
            throw Overflow("element order overflows 64 bits");
        ord = q * len;
    }
    return ord;
}

std::string Perm::to_cycle_string() const {
    std::vector<bool> seen(img_.size(), false);
    std::string s;
    for (std::uint32_t i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == i) {
            seen[i] = true;
            continue;
        }
        s += '(';
        bool first = true;
        for (std::uint32_t j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            if (!first) s += ' ';
            s += std::to_string(j);
            first = false;
        }
        s += ')';
    }
    if (s.empty()) s = "()";
    return s;
}

} // namespace gtower
