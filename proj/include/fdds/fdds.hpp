#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdds {

using State = std::uint32_t;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeOverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by queries that are undefined on the empty system (minimum cycle
// length and friends).
class UndefinedValueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ceiling on the number of states a product (or the expansion of a compact
// encoding) may materialize. Exceeding it raises SizeOverflowError; there is
// no silent truncation.
inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

// A finite discrete dynamical system as a successor table: succ[i] is the
// image of state i. The empty table is the additive identity, a single fixed
// point the multiplicative identity. Values are immutable by convention:
// every operation returns a fresh system.
struct Fdds {
    std::vector<State> succ;

    std::size_t size() const { return succ.size(); }
    bool empty() const { return succ.empty(); }
    bool operator==(const Fdds&) const = default;
};

// Text format: whitespace-separated decimal successor indices; lines starting
// with '#' are comments; empty input is the empty system.
Fdds parse_fdds(std::string_view text);
std::string serialize_fdds(const Fdds& f);

Fdds fdds_zero();
Fdds fdds_one();
Fdds make_cycle(std::uint64_t len);

// Disjoint union.
Fdds sum(const Fdds& a, const Fdds& b);

// Direct product: states are pairs, successor acts componentwise. The pair
// (u, v) is encoded as u * |b| + v.
Fdds product(const Fdds& a, const Fdds& b, std::uint64_t state_cap = kDefaultStateCap);

// One weakly connected component: a unique cycle plus in-trees rooted on it.
struct Component {
    std::vector<State> states;                // cycle states first, then tree states
    std::vector<State> cycle;                 // the cycle in successor order
    std::vector<std::uint32_t> tree_heights;  // per cycle node, height of its in-tree

    std::uint64_t cycle_len() const { return cycle.size(); }
    std::size_t size() const { return states.size(); }
};

std::vector<Component> components(const Fdds& f);

// Induced sub-system on one component, relabeled to 0..size-1.
Fdds component_to_fdds(const Fdds& f, const Component& c);

struct CycleLengths {
    std::vector<std::uint64_t> lengths;  // sorted, distinct
    std::uint64_t min = 0;
};

CycleLengths cycle_lengths(const Fdds& f);  // UndefinedValueError on empty input
std::uint64_t min_cycle_length(const Fdds& f);

// True iff the minimum cycle length divides every cycle length.
bool is_pseudo_cancelable(const Fdds& f);  // UndefinedValueError on empty input

bool has_fixed_point(const Fdds& f);

bool is_permutation(const Fdds& f);

// Canonical code, total-ordered; equal iff the systems are isomorphic.
// Built from rooted-tree encodings of the in-trees, the least cyclic rotation
// of the per-cycle tree-code sequence, and the sorted component codes.
struct CanonForm {
    std::string code;
    auto operator<=>(const CanonForm&) const = default;
    bool operator==(const CanonForm&) const = default;
};

CanonForm canon(const Fdds& f);
std::string canon_component(const Fdds& f, const Component& c);
bool is_isomorphic(const Fdds& a, const Fdds& b);

// All components with their canonical codes in one pass.
struct ComponentWithCode {
    Component comp;
    std::string code;
};
std::vector<ComponentWithCode> components_with_codes(const Fdds& f);

// Removes the components of s (matched by canonical code) from b; nullopt
// when they are not a sub-multiset of b's components.
std::optional<Fdds> sub_components(const Fdds& b, const Fdds& s);

// Components whose cycle length divides p / equals p. Both preserve the
// relative order of the surviving states.
Fdds restrict_dividing(const Fdds& f, std::uint64_t p);
Fdds restrict_exact(const Fdds& f, std::uint64_t p);

// Deterministic relabeling such that isomorphic inputs produce identical
// successor tables.
Fdds canonical_relabel(const Fdds& f);

// Index of the least cyclic rotation of a symbol sequence (Booth).
std::size_t booth_least_rotation(const std::vector<std::uint32_t>& symbols);

}  // namespace fdds
