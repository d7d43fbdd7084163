#pragma once

#include <compare>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fdds/fdds.hpp"

namespace fdds {

// Hash-consed store of depth-truncated rooted trees. A tree is identified by
// its node id; structurally equal trees always share an id, so isomorphism
// checks are id comparisons. Children are kept sorted under the arena's
// canonical order. Not safe for concurrent mutation: use one arena per
// thread of work.
class TreeArena {
public:
    using Id = std::uint32_t;
    static constexpr Id kLeaf = 0;  // the childless node

    TreeArena();

    Id node(std::vector<Id> children);
    const std::vector<Id>& children(Id id) const { return nodes_[id]; }
    std::uint32_t height(Id id) const { return heights_[id]; }
    std::uint64_t node_count(Id id) const { return counts_[id]; }

    // Canonical strict total order: fewer children first, then the sorted
    // child lists lexicographically.
    std::strong_ordering compare(Id a, Id b);

    // Levelwise product: level-k nodes of the result are the pairs of level-k
    // nodes, parents act componentwise.
    Id product(Id a, Id b);
    Id power(Id x, std::uint32_t e);  // e >= 1

    // Drops everything below the given depth.
    Id truncate(Id t, std::uint32_t depth);

    std::vector<std::uint64_t> level_widths(Id t) const;
    // Sorted node ids per level (the canonical level sequences).
    std::vector<std::vector<Id>> level_ids(Id t);

private:
    Id intern(std::vector<Id> sorted_children);

    std::vector<std::vector<Id>> nodes_;
    std::vector<std::uint32_t> heights_;
    std::vector<std::uint64_t> counts_;
    std::unordered_map<std::uint64_t, std::vector<Id>> intern_buckets_;
    std::unordered_map<std::uint64_t, std::strong_ordering> cmp_memo_;
    std::unordered_map<std::uint64_t, Id> prod_memo_;
    std::unordered_map<std::uint64_t, Id> trunc_memo_;
};

// A truncated unroll tree: the root is a periodic state, level k holds its
// k-th preimages, and exactly one full-depth (spine) branch survives to the
// truncation depth. period is the smallest spine shift fixing the tree.
struct UnrollTree {
    TreeArena::Id root = TreeArena::kLeaf;
    std::uint32_t depth = 0;
    std::uint64_t period = 0;  // 0 when no period could be detected
};

// One tree per cycle state of the component, all at the same depth, with the
// shared rotation period. The trees appear in cycle (successor) order.
std::vector<UnrollTree> unroll_truncated(const Fdds& f, const Component& c, std::uint32_t depth,
                                         TreeArena& arena);

UnrollTree tree_product(const UnrollTree& a, const UnrollTree& b, TreeArena& arena);

// Level-by-level order: first level whose node count differs decides (fewer
// is smaller); with all widths equal, the first level whose sorted id
// sequence differs decides under the arena order. Depths must match.
std::strong_ordering tree_compare(const UnrollTree& a, const UnrollTree& b, TreeArena& arena);

// Smallest p >= 1 such that the subtree rooted p spine steps down equals the
// tree truncated to the remaining depth; 0 when none exists within depth.
std::uint64_t detect_period(TreeArena& arena, TreeArena::Id root, std::uint32_t depth);

// The unique connected system with the prescribed cycle length whose unroll
// trees (at the tree's depth) are the spine shifts of t. Requires t.period to
// divide len and t to be deep enough to contain every transient level.
Fdds deroll(const UnrollTree& t, std::uint64_t len, TreeArena& arena,
            std::uint64_t state_cap = kDefaultStateCap);

}  // namespace fdds
