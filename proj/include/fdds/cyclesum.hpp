#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdds/fdds.hpp"

namespace fdds {

using BigInt = boost::multiprecision::cpp_int;

// Compact encoding of a sum of cycles: sorted (length, count) pairs with
// arbitrary-precision entries. Lengths are strictly increasing, counts are
// positive; an empty entry list is the zero system.
struct CycleEntry {
    BigInt len;
    BigInt count;
    bool operator==(const CycleEntry&) const = default;
};

struct CycleSum {
    std::vector<CycleEntry> entries;

    bool is_zero() const { return entries.empty(); }
    bool operator==(const CycleSum&) const = default;

    static CycleSum zero() { return {}; }
    static CycleSum single(BigInt len, BigInt count = 1);
    // Merges duplicates, drops zero counts, sorts; rejects nonpositive values.
    static CycleSum from_pairs(std::vector<CycleEntry> raw);
};

// Text format: '+'-joined terms "Nxl" (count N, length l, decimal, arbitrary
// precision); "0" is the empty sum; whitespace is ignored.
CycleSum parse_cycle_sum(std::string_view text);
std::string format_cycle_sum(const CycleSum& a);

CycleSum cs_add(const CycleSum& a, const CycleSum& b);
std::optional<CycleSum> cs_sub(const CycleSum& a, const CycleSum& b);
bool cs_is_subset(const CycleSum& a, const CycleSum& b);  // a contained in b

// Direct product: each entry pair (la,na) x (lb,nb) contributes
// na*nb*gcd(la,lb) cycles of length lcm(la,lb).
CycleSum cs_product(const CycleSum& a, const CycleSum& b);

BigInt cs_size(const CycleSum& a);  // total number of states
BigInt cs_min_length(const CycleSum& a);  // UndefinedValueError on zero
bool cs_is_pseudo_cancelable(const CycleSum& a);
BigInt cs_count_of_length(const CycleSum& a, const BigInt& len);

// The least c with lcm(a, c) = b, for a dividing b; equivalently the product
// of the primes of b whose exponent strictly exceeds their exponent in a,
// taken with their exponent in b. Factorization-free: with K = ceil(log2 b),
// each such prime p satisfies (e_b(p) - e_a(p)) * K >= e_b(p), so
// gcd(b, (b/a)^K) picks exactly p^e_b(p) for those primes.
BigInt anti_lcm(const BigInt& b, const BigInt& a);

// Polynomial with CycleSum coefficients; only nonzero coefficients stored.
struct CyclePoly {
    std::map<std::uint32_t, CycleSum> coeffs;  // degree -> coefficient

    bool operator==(const CyclePoly&) const = default;
};

CycleSum poly_nonconstant_sum(const CyclePoly& p);  // union of coefficients of degree >= 1
bool poly_is_pseudo_injective(const CyclePoly& p);

// Evaluates sum A_i x^i with repeated squaring, aborting with nullopt the
// moment any intermediate state count would exceed cap. State counts are
// multiplicative over products, so the check runs on sizes before any
// product is materialized.
std::optional<CycleSum> poly_eval_capped(const CyclePoly& p, const CycleSum& x, const BigInt& cap);

// Explicit expansion (SizeOverflowError past cap) and compact summary
// (nullopt when the input has a transient state).
Fdds cs_to_fdds(const CycleSum& a, std::uint64_t state_cap = kDefaultStateCap);
std::optional<CycleSum> fdds_to_cs(const Fdds& f);

unsigned ceil_log2(const BigInt& b);  // b >= 1

}  // namespace fdds
