#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gtower {

// Resource bounds for the search routines. Defaults are sized for groups that
// can be fully enumerated in memory; every bound can be raised by the caller.
struct Limits {
    std::uint64_t max_order = 20000;        // largest group we fully enumerate
    std::uint64_t iso_limit = 512;          // isomorphism / isoclinism search bound
    std::uint64_t normal_enum_limit = 4096; // normal-subgroup lattice enumeration bound
    std::uint64_t complement_tuples = 10000000; // lift tuples tried per complement search
    std::uint64_t exhaustive_pairs = 50000; // |K| up to which hom checks stay exhaustive
    std::uint64_t sample_pairs = 100000;    // fixed-seed sample size above that
};

struct LimitExceeded : std::runtime_error {
    explicit LimitExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct DegreeMismatch : std::runtime_error {
    explicit DegreeMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct NotNormal : std::runtime_error {
    explicit NotNormal(const std::string& what) : std::runtime_error(what) {}
};
struct NotAbelian : std::runtime_error {
    explicit NotAbelian(const std::string& what) : std::runtime_error(what) {}
};
struct NotAHomomorphism : std::runtime_error {
    explicit NotAHomomorphism(const std::string& what) : std::runtime_error(what) {}
};
struct NotAnAction : std::runtime_error {
    explicit NotAnAction(const std::string& what) : std::runtime_error(what) {}
};
struct NotMonomial : std::runtime_error {
    explicit NotMonomial(const std::string& what) : std::runtime_error(what) {}
};
struct NotClassTwo : std::runtime_error {
    explicit NotClassTwo(const std::string& what) : std::runtime_error(what) {}
};
struct Overflow : std::runtime_error {
    explicit Overflow(const std::string& what) : std::runtime_error(what) {}
};
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gtower
