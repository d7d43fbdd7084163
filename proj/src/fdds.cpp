#include "fdds/fdds.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace fdds {

Fdds parse_fdds(std::string_view text) {
    Fdds f;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (c == '#') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '#') ++j;
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
        if (ec != std::errc() || ptr != text.data() + j) {
            throw ParseError("invalid successor token: '" + std::string(text.substr(i, j - i)) + "'");
        }
        if (value > 0xFFFFFFFFull) throw ParseError("successor index out of range");
        f.succ.push_back(static_cast<State>(value));
        i = j;
    }
    for (State s : f.succ) {
        if (s >= f.succ.size()) {
            throw ParseError("successor index " + std::to_string(s) + " out of range for " +
                             std::to_string(f.succ.size()) + " states");
        }
    }
    return f;
}

std::string serialize_fdds(const Fdds& f) {
    std::string out;
    for (std::size_t i = 0; i < f.succ.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(f.succ[i]);
    }
    return out;
}

Fdds fdds_zero() { return Fdds{}; }

Fdds fdds_one() { return Fdds{{0}}; }

Fdds make_cycle(std::uint64_t len) {
    Fdds f;
    f.succ.resize(len);
    for (std::uint64_t i = 0; i < len; ++i) f.succ[i] = static_cast<State>((i + 1) % len);
    return f;
}

Fdds sum(const Fdds& a, const Fdds& b) {
    Fdds out;
    out.succ.reserve(a.size() + b.size());
    out.succ = a.succ;
    const State offset = static_cast<State>(a.size());
    for (State s : b.succ) out.succ.push_back(s + offset);
    return out;
}

Fdds product(const Fdds& a, const Fdds& b, std::uint64_t state_cap) {
    const std::uint64_t n = static_cast<std::uint64_t>(a.size()) * b.size();
    if (n > state_cap) {
        throw SizeOverflowError("product would have " + std::to_string(n) +
                                " states (cap " + std::to_string(state_cap) + ")");
    }
    Fdds out;
    out.succ.resize(n);
    const std::uint64_t nb = b.size();
    for (std::uint64_t u = 0; u < a.size(); ++u) {
        const std::uint64_t su = static_cast<std::uint64_t>(a.succ[u]) * nb;
        for (std::uint64_t v = 0; v < nb; ++v) {
            out.succ[u * nb + v] = static_cast<State>(su + b.succ[v]);
        }
    }
    return out;
}

namespace {

// Periodic states are exactly the ones that survive repeated removal of
// in-degree-zero states.
std::vector<bool> periodic_mask(const Fdds& f) {
    const std::size_t n = f.size();
    std::vector<std::uint32_t> indeg(n, 0);
    for (State s : f.succ) ++indeg[s];
    std::vector<State> stack;
    for (State i = 0; i < n; ++i) {
        if (indeg[i] == 0) stack.push_back(i);
    }
    std::vector<bool> periodic(n, true);
    while (!stack.empty()) {
        State v = stack.back();
        stack.pop_back();
        periodic[v] = false;
        State w = f.succ[v];
        if (--indeg[w] == 0) stack.push_back(w);
    }
    return periodic;
}

struct PredLists {
    std::vector<std::uint32_t> offset;  // size n+1
    std::vector<State> data;
};

PredLists predecessor_lists(const Fdds& f) {
    const std::size_t n = f.size();
    PredLists p;
    p.offset.assign(n + 1, 0);
    for (State s : f.succ) ++p.offset[s + 1];
    for (std::size_t i = 0; i < n; ++i) p.offset[i + 1] += p.offset[i];
    p.data.resize(n);
    std::vector<std::uint32_t> cursor(p.offset.begin(), p.offset.end() - 1);
    for (State v = 0; v < n; ++v) p.data[cursor[f.succ[v]]++] = v;
    return p;
}

}  // namespace

std::vector<Component> components(const Fdds& f) {
    const std::size_t n = f.size();
    std::vector<Component> out;
    if (n == 0) return out;
    std::vector<bool> periodic = periodic_mask(f);
    PredLists preds = predecessor_lists(f);
    std::vector<bool> seen(n, false);
    for (State i = 0; i < n; ++i) {
        if (!periodic[i] || seen[i]) continue;
        Component c;
        State cur = i;
        do {
            c.cycle.push_back(cur);
            seen[cur] = true;
            cur = f.succ[cur];
        } while (cur != i);
        c.states = c.cycle;
        c.tree_heights.assign(c.cycle.size(), 0);
        // BFS over transient predecessors of each cycle node.
        for (std::size_t ci = 0; ci < c.cycle.size(); ++ci) {
            std::queue<std::pair<State, std::uint32_t>> q;
            q.emplace(c.cycle[ci], 0);
            while (!q.empty()) {
                auto [v, depth] = q.front();
                q.pop();
                c.tree_heights[ci] = std::max(c.tree_heights[ci], depth);
                for (std::uint32_t k = preds.offset[v]; k < preds.offset[v + 1]; ++k) {
                    State w = preds.data[k];
                    if (periodic[w]) continue;
                    seen[w] = true;
                    c.states.push_back(w);
                    q.emplace(w, depth + 1);
                }
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

Fdds component_to_fdds(const Fdds& f, const Component& c) {
    std::unordered_map<State, State> relabel;
    relabel.reserve(c.states.size());
    for (std::size_t i = 0; i < c.states.size(); ++i) relabel[c.states[i]] = static_cast<State>(i);
    Fdds out;
    out.succ.resize(c.states.size());
    for (std::size_t i = 0; i < c.states.size(); ++i) out.succ[i] = relabel.at(f.succ[c.states[i]]);
    return out;
}

CycleLengths cycle_lengths(const Fdds& f) {
    if (f.empty()) throw UndefinedValueError("cycle lengths of the empty system are undefined");
    CycleLengths r;
    for (const Component& c : components(f)) r.lengths.push_back(c.cycle_len());
    std::sort(r.lengths.begin(), r.lengths.end());
    r.lengths.erase(std::unique(r.lengths.begin(), r.lengths.end()), r.lengths.end());
    r.min = r.lengths.front();
    return r;
}

std::uint64_t min_cycle_length(const Fdds& f) { return cycle_lengths(f).min; }

bool is_pseudo_cancelable(const Fdds& f) {
    CycleLengths r = cycle_lengths(f);
    for (std::uint64_t l : r.lengths) {
        if (l % r.min != 0) return false;
    }
    return true;
}

bool has_fixed_point(const Fdds& f) {
    for (State i = 0; i < f.size(); ++i) {
        if (f.succ[i] == i) return true;
    }
    return false;
}

bool is_permutation(const Fdds& f) {
    std::vector<bool> hit(f.size(), false);
    for (State s : f.succ) {
        if (hit[s]) return false;
        hit[s] = true;
    }
    return true;
}

std::size_t booth_least_rotation(const std::vector<std::uint32_t>& symbols) {
    const std::size_t n = symbols.size();
    if (n <= 1) return 0;
    // Booth's least-rotation algorithm over the doubled sequence.
    std::vector<std::uint32_t> s(symbols);
    s.insert(s.end(), symbols.begin(), symbols.end());
    std::vector<std::ptrdiff_t> fail(s.size(), -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < s.size(); ++j) {
        std::uint32_t sj = s[j];
        std::ptrdiff_t i = fail[j - k - 1];
        while (i != -1 && sj != s[k + i + 1]) {
            if (sj < s[k + i + 1]) k = j - i - 1;
            i = fail[i];
        }
        if (sj != s[k + i + 1]) {
            if (sj < s[k]) k = j;
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    return k % n;
}

namespace {

struct ComponentCanon {
    std::vector<std::string> tree_codes;  // per cycle node, successor order
    std::size_t rotation = 0;
    std::string code;
    // per-state rooted-tree code of the in-tree hanging below that state
    std::unordered_map<State, std::string> state_codes;
    // transient children of each state, sorted by code
    std::unordered_map<State, std::vector<State>> tree_children;
};

// Rooted-tree code: "(" + concatenation of sorted child codes + ")". Codes of
// two in-trees are equal iff the trees are isomorphic.
ComponentCanon component_canon_data(const Fdds&, const Component& c, const PredLists& preds,
                                    const std::vector<bool>& periodic) {
    ComponentCanon cc;
    // states are stored cycle-first, then trees in BFS order, so a reverse
    // sweep sees children before parents.
    for (auto it = c.states.rbegin(); it != c.states.rend(); ++it) {
        State v = *it;
        std::vector<State> kids;
        for (std::uint32_t k = preds.offset[v]; k < preds.offset[v + 1]; ++k) {
            State w = preds.data[k];
            if (!periodic[w]) kids.push_back(w);
        }
        std::sort(kids.begin(), kids.end(), [&](State x, State y) {
            const std::string& cx = cc.state_codes.at(x);
            const std::string& cy = cc.state_codes.at(y);
            if (cx != cy) return cx < cy;
            return x < y;
        });
        std::string code = "(";
        for (State w : kids) code += cc.state_codes.at(w);
        code += ')';
        cc.state_codes.emplace(v, std::move(code));
        cc.tree_children.emplace(v, std::move(kids));
    }
    cc.tree_codes.reserve(c.cycle.size());
    for (State z : c.cycle) cc.tree_codes.push_back(cc.state_codes.at(z));
    // rank the distinct codes so Booth runs on small integers
    std::vector<std::string> sorted_codes = cc.tree_codes;
    std::sort(sorted_codes.begin(), sorted_codes.end());
    sorted_codes.erase(std::unique(sorted_codes.begin(), sorted_codes.end()), sorted_codes.end());
    std::vector<std::uint32_t> ranks(cc.tree_codes.size());
    for (std::size_t i = 0; i < cc.tree_codes.size(); ++i) {
        ranks[i] = static_cast<std::uint32_t>(
            std::lower_bound(sorted_codes.begin(), sorted_codes.end(), cc.tree_codes[i]) -
            sorted_codes.begin());
    }
    cc.rotation = booth_least_rotation(ranks);
    cc.code = "[";
    for (std::size_t i = 0; i < cc.tree_codes.size(); ++i) {
        cc.code += cc.tree_codes[(cc.rotation + i) % cc.tree_codes.size()];
    }
    cc.code += ']';
    return cc;
}

}  // namespace

std::string canon_component(const Fdds& f, const Component& c) {
    PredLists preds = predecessor_lists(f);
    std::vector<bool> periodic = periodic_mask(f);
    return component_canon_data(f, c, preds, periodic).code;
}

CanonForm canon(const Fdds& f) {
    PredLists preds = predecessor_lists(f);
    std::vector<bool> periodic = periodic_mask(f);
    std::vector<std::string> codes;
    for (const Component& c : components(f)) {
        codes.push_back(component_canon_data(f, c, preds, periodic).code);
    }
    std::sort(codes.begin(), codes.end());
    std::string out = "{";
    for (const std::string& code : codes) out += code;
    out += '}';
    return CanonForm{std::move(out)};
}

std::vector<ComponentWithCode> components_with_codes(const Fdds& f) {
    PredLists preds = predecessor_lists(f);
    std::vector<bool> periodic = periodic_mask(f);
    std::vector<ComponentWithCode> out;
    for (Component& c : components(f)) {
        std::string code = component_canon_data(f, c, preds, periodic).code;
        out.push_back({std::move(c), std::move(code)});
    }
    return out;
}

bool is_isomorphic(const Fdds& a, const Fdds& b) { return canon(a) == canon(b); }

namespace {

Fdds rebuild_keeping(const Fdds& f, const std::vector<bool>& keep_state) {
    std::vector<State> relabel(f.size(), 0);
    State next = 0;
    for (State i = 0; i < f.size(); ++i) {
        if (keep_state[i]) relabel[i] = next++;
    }
    Fdds out;
    out.succ.reserve(next);
    for (State i = 0; i < f.size(); ++i) {
        if (keep_state[i]) out.succ.push_back(relabel[f.succ[i]]);
    }
    return out;
}

}  // namespace

std::optional<Fdds> sub_components(const Fdds& b, const Fdds& s) {
    if (s.empty()) return b;
    std::vector<Component> bc = components(b);
    PredLists preds = predecessor_lists(b);
    std::vector<bool> periodic = periodic_mask(b);
    std::multimap<std::string, std::size_t> by_code;
    for (std::size_t i = 0; i < bc.size(); ++i) {
        by_code.emplace(component_canon_data(b, bc[i], preds, periodic).code, i);
    }
    PredLists spreds = predecessor_lists(s);
    std::vector<bool> speriodic = periodic_mask(s);
    std::vector<bool> removed(bc.size(), false);
    for (const Component& c : components(s)) {
        std::string code = component_canon_data(s, c, spreds, speriodic).code;
        auto it = by_code.find(code);
        if (it == by_code.end()) return std::nullopt;
        removed[it->second] = true;
        by_code.erase(it);
    }
    std::vector<bool> keep(b.size(), false);
    for (std::size_t i = 0; i < bc.size(); ++i) {
        if (removed[i]) continue;
        for (State v : bc[i].states) keep[v] = true;
    }
    return rebuild_keeping(b, keep);
}

namespace {

Fdds restrict_by(const Fdds& f, std::uint64_t p, bool exact) {
    std::vector<bool> keep(f.size(), false);
    for (const Component& c : components(f)) {
        const std::uint64_t l = c.cycle_len();
        const bool ok = exact ? (l == p) : (p % l == 0);
        if (!ok) continue;
        for (State v : c.states) keep[v] = true;
    }
    return rebuild_keeping(f, keep);
}

}  // namespace

Fdds restrict_dividing(const Fdds& f, std::uint64_t p) { return restrict_by(f, p, false); }

Fdds restrict_exact(const Fdds& f, std::uint64_t p) { return restrict_by(f, p, true); }

Fdds canonical_relabel(const Fdds& f) {
    PredLists preds = predecessor_lists(f);
    std::vector<bool> periodic = periodic_mask(f);
    std::vector<Component> comps = components(f);
    std::vector<ComponentCanon> data;
    data.reserve(comps.size());
    for (const Component& c : comps) data.push_back(component_canon_data(f, c, preds, periodic));
    std::vector<std::size_t> order(comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return data[x].code < data[y].code; });

    std::vector<State> relabel(f.size(), 0);
    State next = 0;
    std::vector<State> dfs;
    for (std::size_t idx : order) {
        const Component& c = comps[idx];
        const ComponentCanon& cc = data[idx];
        const std::size_t L = c.cycle.size();
        // cycle states first, starting from the canonical rotation
        for (std::size_t i = 0; i < L; ++i) relabel[c.cycle[(cc.rotation + i) % L]] = next++;
        for (std::size_t i = 0; i < L; ++i) {
            dfs.assign(1, c.cycle[(cc.rotation + i) % L]);
            while (!dfs.empty()) {
                State v = dfs.back();
                dfs.pop_back();
                const std::vector<State>& kids = cc.tree_children.at(v);
                for (State w : kids) relabel[w] = next++;
                // reversed push keeps the sorted-code order on pop
                for (auto it = kids.rbegin(); it != kids.rend(); ++it) dfs.push_back(*it);
            }
        }
    }
    Fdds out;
    out.succ.resize(f.size());
    for (State i = 0; i < f.size(); ++i) out.succ[relabel[i]] = relabel[f.succ[i]];
    return out;
}

}  // namespace fdds
