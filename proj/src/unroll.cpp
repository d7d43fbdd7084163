#include "fdds/unroll.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace fdds {

namespace {

inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::uint64_t hash_children(const std::vector<TreeArena::Id>& ch) {
    std::uint64_t h = 1469598103934665603ull;
    for (TreeArena::Id c : ch) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

TreeArena::TreeArena() {
    nodes_.push_back({});
    heights_.push_back(0);
    counts_.push_back(1);
    intern_buckets_[hash_children({})].push_back(kLeaf);
}

TreeArena::Id TreeArena::intern(std::vector<Id> sorted_children) {
    const std::uint64_t h = hash_children(sorted_children);
    auto& bucket = intern_buckets_[h];
    for (Id id : bucket) {
        if (nodes_[id] == sorted_children) return id;
    }
    const Id id = static_cast<Id>(nodes_.size());
    std::uint32_t height = 0;
    std::uint64_t count = 1;
    for (Id c : sorted_children) {
        height = std::max(height, heights_[c] + 1);
        count += counts_[c];
    }
    nodes_.push_back(std::move(sorted_children));
    heights_.push_back(height);
    counts_.push_back(count);
    bucket.push_back(id);
    return id;
}

TreeArena::Id TreeArena::node(std::vector<Id> children) {
    std::sort(children.begin(), children.end(),
              [this](Id a, Id b) { return compare(a, b) == std::strong_ordering::less; });
    return intern(std::move(children));
}

std::strong_ordering TreeArena::compare(Id a, Id b) {
    if (a == b) return std::strong_ordering::equal;
    const std::uint64_t key = pair_key(std::min(a, b), std::max(a, b));
    auto it = cmp_memo_.find(key);
    if (it != cmp_memo_.end()) return a < b ? it->second : (0 <=> it->second);
    const std::vector<Id>& ca = nodes_[a];
    const std::vector<Id>& cb = nodes_[b];
    std::strong_ordering result = std::strong_ordering::equal;
    if (ca.size() != cb.size()) {
        result = ca.size() <=> cb.size();
    } else {
        for (std::size_t i = 0; i < ca.size(); ++i) {
            std::strong_ordering c = compare(ca[i], cb[i]);
            if (c != std::strong_ordering::equal) {
                result = c;
                break;
            }
        }
        // distinct ids cannot have identical sorted children
        assert(result != std::strong_ordering::equal);
    }
    cmp_memo_.emplace(key, a < b ? result : (0 <=> result));
    return result;
}

TreeArena::Id TreeArena::product(Id a, Id b) {
    if (a == kLeaf || b == kLeaf) return kLeaf;
    const std::uint64_t key = pair_key(std::min(a, b), std::max(a, b));
    auto it = prod_memo_.find(key);
    if (it != prod_memo_.end()) return it->second;
    std::vector<Id> ch;
    ch.reserve(nodes_[a].size() * nodes_[b].size());
    // take copies: node() below may reallocate nodes_
    const std::vector<Id> ca = nodes_[a];
    const std::vector<Id> cb = nodes_[b];
    for (Id x : ca) {
        for (Id y : cb) ch.push_back(product(x, y));
    }
    const Id id = node(std::move(ch));
    prod_memo_.emplace(key, id);
    return id;
}

TreeArena::Id TreeArena::power(Id x, std::uint32_t e) {
    if (e == 0) throw std::invalid_argument("tree power needs a positive exponent");
    Id result = x;
    for (std::uint32_t i = 1; i < e; ++i) result = product(result, x);
    return result;
}

TreeArena::Id TreeArena::truncate(Id t, std::uint32_t depth) {
    if (depth == 0) return kLeaf;
    if (height(t) <= depth) return t;
    const std::uint64_t key = (static_cast<std::uint64_t>(t) << 20) ^ depth;
    auto it = trunc_memo_.find(key);
    if (it != trunc_memo_.end()) return it->second;
    std::vector<Id> ch;
    const std::vector<Id> cs = nodes_[t];
    ch.reserve(cs.size());
    for (Id c : cs) ch.push_back(truncate(c, depth - 1));
    const Id id = node(std::move(ch));
    trunc_memo_.emplace(key, id);
    return id;
}

std::vector<std::uint64_t> TreeArena::level_widths(Id t) const {
    std::vector<std::uint64_t> widths;
    std::vector<Id> level = {t};
    while (!level.empty()) {
        widths.push_back(level.size());
        std::vector<Id> next;
        for (Id v : level) {
            const std::vector<Id>& ch = nodes_[v];
            next.insert(next.end(), ch.begin(), ch.end());
        }
        level = std::move(next);
    }
    return widths;
}

std::vector<std::vector<TreeArena::Id>> TreeArena::level_ids(Id t) {
    std::vector<std::vector<Id>> out;
    std::vector<Id> level = {t};
    while (!level.empty()) {
        std::sort(level.begin(), level.end(),
                  [this](Id a, Id b) { return compare(a, b) == std::strong_ordering::less; });
        out.push_back(level);
        std::vector<Id> next;
        for (Id v : level) {
            const std::vector<Id>& ch = nodes_[v];
            next.insert(next.end(), ch.begin(), ch.end());
        }
        level = std::move(next);
    }
    return out;
}

namespace {

struct UnrollBuilder {
    TreeArena& arena;
    std::vector<std::vector<State>> preds;  // predecessors within the component
    std::unordered_map<std::uint64_t, TreeArena::Id> memo;

    TreeArena::Id build(State v, std::uint32_t remaining) {
        if (remaining == 0) return TreeArena::kLeaf;
        const std::uint64_t key = (static_cast<std::uint64_t>(v) << 24) | remaining;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<TreeArena::Id> ch;
        ch.reserve(preds[v].size());
        for (State w : preds[v]) ch.push_back(build(w, remaining - 1));
        TreeArena::Id id = arena.node(std::move(ch));
        memo.emplace(key, id);
        return id;
    }
};

}  // namespace

std::vector<UnrollTree> unroll_truncated(const Fdds& f, const Component& c, std::uint32_t depth,
                                         TreeArena& arena) {
    if (depth < 1) throw std::invalid_argument("unroll depth must be at least 1");
    UnrollBuilder builder{arena, {}, {}};
    builder.preds.resize(f.size());
    for (State v : c.states) builder.preds[f.succ[v]].push_back(v);
    std::vector<UnrollTree> trees;
    const std::size_t L = c.cycle.size();
    trees.reserve(L);
    for (State z : c.cycle) trees.push_back({builder.build(z, depth), depth, 0});
    // the rotation period: smallest divisor p of the cycle length such that
    // shifting every root by p fixes the multiset of trees pointwise
    std::uint64_t period = L;
    for (std::uint64_t p = 1; p <= L; ++p) {
        if (L % p != 0) continue;
        bool ok = true;
        for (std::size_t i = 0; i < L && ok; ++i) ok = trees[i].root == trees[(i + p) % L].root;
        if (ok) {
            period = p;
            break;
        }
    }
    for (UnrollTree& t : trees) t.period = period;
    return trees;
}

namespace {

// The spine child: the unique child that persists to the full remaining
// depth. Returns kLeaf-marker failure via optional-like bool.
bool spine_child(TreeArena& arena, TreeArena::Id node, std::uint32_t remaining, TreeArena::Id& out) {
    const std::vector<TreeArena::Id>& ch = arena.children(node);
    if (ch.empty() || remaining == 0) return false;
    TreeArena::Id best = ch.front();
    for (TreeArena::Id c : ch) {
        if (arena.height(c) > arena.height(best)) best = c;
    }
    if (arena.height(best) != remaining - 1) return false;
    out = best;
    return true;
}

}  // namespace

std::uint64_t detect_period(TreeArena& arena, TreeArena::Id root, std::uint32_t depth) {
    TreeArena::Id cur = root;
    for (std::uint32_t p = 1; p <= depth; ++p) {
        TreeArena::Id next;
        if (!spine_child(arena, cur, depth - (p - 1), next)) return 0;
        cur = next;
        if (arena.truncate(root, depth - p) == cur) return p;
    }
    return 0;
}

UnrollTree tree_product(const UnrollTree& a, const UnrollTree& b, TreeArena& arena) {
    if (a.depth != b.depth) throw std::invalid_argument("tree_product requires equal depths");
    UnrollTree out;
    out.depth = a.depth;
    out.root = arena.product(a.root, b.root);
    out.period = detect_period(arena, out.root, out.depth);
    return out;
}

std::strong_ordering tree_compare(const UnrollTree& a, const UnrollTree& b, TreeArena& arena) {
    if (a.depth != b.depth) throw std::invalid_argument("tree_compare requires equal depths");
    if (a.root == b.root) return std::strong_ordering::equal;
    std::vector<std::vector<TreeArena::Id>> la = arena.level_ids(a.root);
    std::vector<std::vector<TreeArena::Id>> lb = arena.level_ids(b.root);
    const std::size_t levels = std::max(la.size(), lb.size());
    // widths of all levels first; they are multiplicative under products, so
    // this prefix of the order is compatible with tree_product
    for (std::size_t k = 0; k < levels; ++k) {
        const std::size_t wa = k < la.size() ? la[k].size() : 0;
        const std::size_t wb = k < lb.size() ? lb[k].size() : 0;
        if (wa != wb) return wa <=> wb;
    }
    for (std::size_t k = 0; k < la.size(); ++k) {
        for (std::size_t i = 0; i < la[k].size(); ++i) {
            std::strong_ordering c = arena.compare(la[k][i], lb[k][i]);
            if (c != std::strong_ordering::equal) return c;
        }
    }
    return std::strong_ordering::equal;
}

Fdds deroll(const UnrollTree& t, std::uint64_t len, TreeArena& arena, std::uint64_t state_cap) {
    if (t.period == 0 || len == 0 || len % t.period != 0) {
        throw std::invalid_argument("deroll requires the tree period to divide the cycle length");
    }
    if (t.period > t.depth) throw std::invalid_argument("deroll: tree is shallower than its period");
    const std::uint64_t p = t.period;
    // hanging forests along the first p spine steps
    std::vector<std::vector<TreeArena::Id>> forests(p);
    std::uint64_t forest_states = 0;
    TreeArena::Id cur = t.root;
    for (std::uint64_t k = 0; k < p; ++k) {
        TreeArena::Id spine;
        if (!spine_child(arena, cur, t.depth - static_cast<std::uint32_t>(k), spine)) {
            throw std::invalid_argument("deroll: tree has no full-depth spine");
        }
        bool removed = false;
        for (TreeArena::Id c : arena.children(cur)) {
            if (!removed && c == spine) {
                removed = true;
                continue;
            }
            forests[k].push_back(c);
            forest_states += arena.node_count(c);
        }
        cur = spine;
    }
    const std::uint64_t total = len + (len / p) * forest_states;
    if (total > state_cap) {
        throw SizeOverflowError("deroll would materialize " + std::to_string(total) + " states");
    }
    Fdds out;
    out.succ.resize(total);
    for (std::uint64_t j = 0; j < len; ++j) out.succ[j] = static_cast<State>((j + 1) % len);
    State next = static_cast<State>(len);
    std::vector<std::pair<TreeArena::Id, State>> stack;
    for (std::uint64_t k = 0; k < len; ++k) {
        const State cycle_node = static_cast<State>((len - k) % len);
        for (TreeArena::Id root : forests[k % p]) stack.emplace_back(root, cycle_node);
        while (!stack.empty()) {
            auto [id, parent] = stack.back();
            stack.pop_back();
            const State s = next++;
            out.succ[s] = parent;
            for (TreeArena::Id c : arena.children(id)) stack.emplace_back(c, s);
        }
    }
    return out;
}

}  // namespace fdds
