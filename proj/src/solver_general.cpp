#include "fdds/solver_general.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <set>

#include "fdds/cyclesum.hpp"

namespace fdds {

Fdds fdds_poly_nonconstant_sum(const FddsPoly& p) {
    Fdds acc;
    for (const auto& [deg, coeff] : p.coeffs) {
        if (deg >= 1) acc = sum(acc, coeff);
    }
    return acc;
}

bool fdds_poly_is_pseudo_injective(const FddsPoly& p) {
    Fdds nc = fdds_poly_nonconstant_sum(p);
    if (nc.empty()) return false;
    return is_pseudo_cancelable(nc);
}

std::optional<Fdds> eval_fdds_poly(const FddsPoly& p, const Fdds& x, std::uint64_t cap) {
    BigInt total = 0;
    const BigInt sx = x.size();
    for (const auto& [deg, coeff] : p.coeffs) {
        if (coeff.empty()) continue;
        BigInt term = coeff.size();
        for (std::uint32_t i = 0; i < deg; ++i) {
            term *= sx;
            if (term > cap) return std::nullopt;
        }
        total += term;
        if (total > cap) return std::nullopt;
    }
    Fdds acc;
    std::vector<Fdds> squares = {x};
    auto power = [&](std::uint32_t e) {
        Fdds r = fdds_one();
        std::uint32_t bit = 0;
        std::uint64_t v = 1;
        while (v <= e) {
            if (bit >= squares.size()) squares.push_back(product(squares.back(), squares.back(), cap));
            if (e & v) r = product(r, squares[bit], cap);
            ++bit;
            v <<= 1;
        }
        return r;
    };
    for (const auto& [deg, coeff] : p.coeffs) {
        if (coeff.empty()) continue;
        if (deg == 0) {
            acc = sum(acc, coeff);
        } else {
            acc = sum(acc, product(coeff, power(deg), cap));
        }
    }
    return acc;
}

namespace {

// ---- component multisets keyed by canonical code ----

struct CompRec {
    Fdds rep;  // the component as a standalone system
    std::uint64_t cycle_len = 0;
    std::uint64_t count = 0;
};

struct CompMultiset {
    std::map<std::string, CompRec> recs;

    static CompMultiset of(const Fdds& f) {
        CompMultiset m;
        for (ComponentWithCode& cwc : components_with_codes(f)) {
            auto it = m.recs.find(cwc.code);
            if (it == m.recs.end()) {
                m.recs.emplace(std::move(cwc.code),
                               CompRec{component_to_fdds(f, cwc.comp), cwc.comp.cycle_len(), 1});
            } else {
                ++it->second.count;
            }
        }
        return m;
    }

    bool empty() const { return recs.empty(); }

    std::uint64_t component_count() const {
        std::uint64_t n = 0;
        for (const auto& [code, rec] : recs) n += rec.count;
        return n;
    }

    std::uint64_t min_cycle_len() const {
        std::uint64_t m = UINT64_MAX;
        for (const auto& [code, rec] : recs) m = std::min(m, rec.cycle_len);
        return m;
    }

    bool contains(const CompMultiset& small) const {
        for (const auto& [code, rec] : small.recs) {
            auto it = recs.find(code);
            if (it == recs.end() || it->second.count < rec.count) return false;
        }
        return true;
    }

    void subtract(const CompMultiset& small) {
        for (const auto& [code, rec] : small.recs) {
            auto it = recs.find(code);
            it->second.count -= rec.count;
            if (it->second.count == 0) recs.erase(it);
        }
    }

    Fdds assemble_dividing(std::uint64_t q) const {
        Fdds out;
        for (const auto& [code, rec] : recs) {
            if (q % rec.cycle_len != 0) continue;
            for (std::uint64_t i = 0; i < rec.count; ++i) out = sum(out, rec.rep);
        }
        return out;
    }
};

// ---- bounded tree division ----

using Id = TreeArena::Id;

struct SearchBudget {
    std::uint64_t left;
    bool exhausted = false;
    bool take() {
        if (left == 0) {
            exhausted = true;
            return false;
        }
        --left;
        return true;
    }
};

constexpr std::size_t kMaxCandidatesPerNode = 64;

struct TreeDivider {
    TreeArena& arena;
    SearchBudget& budget;
    std::map<std::pair<Id, Id>, std::vector<Id>> divide_memo;
    std::map<std::pair<Id, std::uint32_t>, std::vector<Id>> root_memo;

    // all w with a (x) w == t; complete as long as a keeps a full-height
    // child at every level (true along the spine of an unroll tree)
    std::vector<Id> divide(Id t, Id a) {
        const auto key = std::make_pair(t, a);
        auto memo = divide_memo.find(key);
        if (memo != divide_memo.end()) return memo->second;
        std::vector<Id> result;
        // copies: recursive calls may grow the arena and move its storage
        const std::vector<Id> cht = arena.children(t);
        const std::vector<Id> cha = arena.children(a);
        if (cha.empty()) {
            if (cht.empty()) result.push_back(TreeArena::kLeaf);
        } else if (cht.empty()) {
            result.push_back(TreeArena::kLeaf);
        } else if (cht.size() % cha.size() == 0) {
            const std::size_t k = cht.size() / cha.size();
            Id probe = cha.front();
            for (Id c : cha) {
                if (arena.height(c) > arena.height(probe)) probe = c;
            }
            // the children of any valid w all appear among the divisions of
            // t's children by the probe
            std::vector<Id> pool;
            {
                std::set<Id> distinct(cht.begin(), cht.end());
                std::set<Id> seen;
                for (Id tc : distinct) {
                    for (Id w : divide(tc, probe)) {
                        if (seen.insert(w).second) pool.push_back(w);
                    }
                }
            }
            std::sort(pool.begin(), pool.end(), [&](Id x, Id y) {
                return arena.compare(x, y) == std::strong_ordering::less;
            });
            // each copy of w consumes the products {a_i (x) w}
            std::vector<std::vector<Id>> signatures(pool.size());
            for (std::size_t i = 0; i < pool.size(); ++i) {
                signatures[i].reserve(cha.size());
                for (Id ac : cha) signatures[i].push_back(arena.product(ac, pool[i]));
                std::sort(signatures[i].begin(), signatures[i].end());
            }
            std::map<Id, std::uint32_t> remaining;
            for (Id tc : cht) ++remaining[tc];
            std::vector<Id> chosen;
            std::function<void(std::size_t)> rec = [&](std::size_t pi) {
                if (result.size() >= kMaxCandidatesPerNode || !budget.take()) return;
                if (chosen.size() == k) {
                    result.push_back(arena.node(chosen));
                    return;
                }
                if (pi == pool.size()) return;
                const std::vector<Id>& sig = signatures[pi];
                // multiplicity 0 first keeps exploration ascending
                rec(pi + 1);
                std::uint32_t used = 0;
                while (chosen.size() < k) {
                    std::size_t taken = 0;
                    bool ok = true;
                    for (Id s : sig) {
                        auto it = remaining.find(s);
                        if (it == remaining.end() || it->second == 0) {
                            ok = false;
                            break;
                        }
                        --it->second;
                        ++taken;
                    }
                    if (!ok) {
                        // restore only what this attempt actually took
                        for (std::size_t t = 0; t < taken; ++t) ++remaining[sig[t]];
                        break;
                    }
                    ++used;
                    chosen.push_back(pool[pi]);
                    rec(pi + 1);
                }
                for (std::uint32_t u = 0; u < used; ++u) {
                    chosen.pop_back();
                    for (Id s : sig) ++remaining[s];
                }
            };
            rec(0);
            std::sort(result.begin(), result.end());
            result.erase(std::unique(result.begin(), result.end()), result.end());
        }
        divide_memo.emplace(key, result);
        return result;
    }

    // all x with x^(x)e == w
    std::vector<Id> kth_root(Id w, std::uint32_t e) {
        if (e == 1) return {w};
        const auto key = std::make_pair(w, e);
        auto memo = root_memo.find(key);
        if (memo != root_memo.end()) return memo->second;
        std::vector<Id> result;
        const std::vector<Id> chw = arena.children(w);
        if (chw.empty()) {
            result.push_back(TreeArena::kLeaf);
        } else {
            std::size_t k = 0;
            while (true) {
                std::size_t pw = 1;
                bool over = false;
                for (std::uint32_t i = 0; i < e; ++i) {
                    pw *= k + 1;
                    if (pw > chw.size()) {
                        over = true;
                        break;
                    }
                }
                if (over) break;
                ++k;
                if (pw == chw.size()) break;
            }
            std::size_t check = 1;
            for (std::uint32_t i = 0; i < e && k > 0; ++i) check *= k;
            if (k > 0 && check == chw.size()) {
                std::vector<Id> pool;
                {
                    std::set<Id> distinct(chw.begin(), chw.end());
                    std::set<Id> seen;
                    for (Id wc : distinct) {
                        for (Id x : kth_root(wc, e)) {
                            if (seen.insert(x).second) pool.push_back(x);
                        }
                    }
                }
                std::sort(pool.begin(), pool.end());
                std::vector<Id> target(chw);
                std::sort(target.begin(), target.end());
                std::vector<Id> chosen;
                std::function<void(std::size_t)> rec = [&](std::size_t pi) {
                    if (result.size() >= kMaxCandidatesPerNode || !budget.take()) return;
                    if (chosen.size() == k) {
                        // e-fold ordered product multiset must reproduce chw
                        std::vector<Id> s = chosen;
                        for (std::uint32_t j = 1; j < e; ++j) {
                            std::vector<Id> next;
                            next.reserve(s.size() * chosen.size());
                            for (Id u : s) {
                                for (Id v : chosen) next.push_back(arena.product(u, v));
                            }
                            s = std::move(next);
                        }
                        std::sort(s.begin(), s.end());
                        if (s == target) result.push_back(arena.node(chosen));
                        return;
                    }
                    if (pi == pool.size()) return;
                    rec(pi + 1);
                    std::size_t used = 0;
                    while (chosen.size() < k) {
                        chosen.push_back(pool[pi]);
                        ++used;
                        rec(pi + 1);
                    }
                    chosen.resize(chosen.size() - used);
                };
                rec(0);
                std::sort(result.begin(), result.end());
                result.erase(std::unique(result.begin(), result.end()), result.end());
            }
        }
        root_memo.emplace(key, result);
        return result;
    }
};

UnrollTree min_tree_of(const Fdds& f, std::uint32_t depth, TreeArena& arena) {
    std::optional<UnrollTree> best;
    for (const Component& c : components(f)) {
        for (const UnrollTree& t : unroll_truncated(f, c, depth, arena)) {
            if (!best || tree_compare(t, *best, arena) == std::strong_ordering::less) best = t;
        }
    }
    return *best;
}

}  // namespace

std::vector<TreeCandidate> tree_divide_candidates(const FddsPoly& p_restricted,
                                                  const Fdds& b_restricted, std::uint32_t depth,
                                                  TreeArena& arena, std::uint64_t search_budget) {
    std::vector<TreeCandidate> out;
    if (b_restricted.empty()) return out;
    UnrollTree b_min = min_tree_of(b_restricted, depth, arena);
    SearchBudget budget{search_budget};
    TreeDivider divider{arena, budget, {}, {}};
    std::set<std::pair<Id, std::uint32_t>> seen;
    for (const auto& [deg, coeff] : p_restricted.coeffs) {
        if (deg == 0 || coeff.empty()) continue;
        UnrollTree a_min = min_tree_of(coeff, depth, arena);
        for (Id w : divider.divide(b_min.root, a_min.root)) {
            for (Id x : divider.kth_root(w, deg)) {
                if (arena.product(a_min.root, arena.power(x, deg)) != b_min.root) continue;
                if (!seen.insert({x, deg}).second) continue;
                std::uint64_t period = detect_period(arena, x, depth);
                if (period == 0) continue;
                out.push_back({UnrollTree{x, depth, period}, deg});
            }
        }
    }
    std::sort(out.begin(), out.end(), [&](const TreeCandidate& l, const TreeCandidate& r) {
        std::strong_ordering c = tree_compare(l.tree, r.tree, arena);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        return l.degree < r.degree;
    });
    return out;
}

std::optional<TreeCandidate> min_tree_divide(const FddsPoly& p_restricted, const Fdds& b_restricted,
                                             std::uint32_t depth, TreeArena& arena) {
    std::vector<TreeCandidate> all = tree_divide_candidates(p_restricted, b_restricted, depth, arena);
    if (all.empty()) return std::nullopt;
    return all.front();
}

std::uint64_t candidate_cycle_length(std::uint64_t a_min, std::uint64_t b_min, std::uint64_t p) {
    if (a_min == 0 || b_min % a_min != 0) {
        throw std::invalid_argument("candidate_cycle_length requires a_min dividing b_min");
    }
    if (p == 0) throw std::invalid_argument("candidate_cycle_length requires a positive period");
    const std::uint64_t al = static_cast<std::uint64_t>(anti_lcm(BigInt(b_min), BigInt(a_min)));
    return std::lcm(p, al);
}

namespace {

GeneralOutcome general_fail(SolveReason reason, std::string why) {
    GeneralOutcome out;
    out.reason = reason;
    out.diagnostic = std::move(why);
    return out;
}

std::uint32_t max_transient_height(const Fdds& f) {
    std::uint32_t h = 0;
    for (const Component& c : components(f)) {
        for (std::uint32_t th : c.tree_heights) h = std::max(h, th);
    }
    return h;
}

}  // namespace

GeneralOutcome solve_poly_general(const FddsPoly& p, const Fdds& b, const SolveOptions& opts) {
    FddsPoly q;
    for (const auto& [deg, coeff] : p.coeffs) {
        if (!coeff.empty()) q.coeffs[deg] = coeff;
    }
    Fdds nc = fdds_poly_nonconstant_sum(q);
    if (nc.empty()) {
        return general_fail(SolveReason::precondition_failed, "polynomial has no nonconstant term");
    }
    if (!is_pseudo_cancelable(nc)) {
        return general_fail(SolveReason::precondition_failed, "polynomial is not pseudo-injective");
    }
    const std::uint64_t a_min = min_cycle_length(nc);

    Fdds b_stripped = b;
    auto a0 = q.coeffs.find(0);
    Fdds constant;
    if (a0 != q.coeffs.end()) {
        constant = a0->second;
        std::optional<Fdds> stripped = sub_components(b_stripped, constant);
        if (!stripped) {
            return general_fail(SolveReason::no_solution,
                                "constant term is not contained in the right-hand side");
        }
        b_stripped = std::move(*stripped);
        q.coeffs.erase(a0);
    }
    const std::uint64_t cap = b_stripped.size();
    const std::uint32_t full_depth = static_cast<std::uint32_t>(std::max<std::size_t>(b.size(), 1));

    CompMultiset b_rem = CompMultiset::of(b_stripped);
    Fdds y;
    CompMultiset py = CompMultiset::of(Fdds{});
    GeneralOutcome out;
    std::uint64_t backtracks = std::max<std::uint64_t>(b.size(), 8);
    std::uint64_t guard = b_rem.component_count() + 1;
    while (!b_rem.empty()) {
        if (guard-- == 0) return general_fail(SolveReason::no_solution, "iteration guard exceeded");
        const std::uint64_t qlen = b_rem.min_cycle_len();
        if (qlen % a_min != 0) {
            return general_fail(SolveReason::no_solution, "minimum cycle lengths are incompatible");
        }
        Fdds b_q = b_rem.assemble_dividing(qlen);
        // candidate trees divide the restriction of P(Y + C) - P(Y) as a
        // polynomial in the new component C, whose degree-j coefficient is
        // sum_i binom(i, j) A_i Y^(i-j); the pure-power form misses the
        // cross terms with the components already committed
        Fdds y_q = restrict_dividing(y, qlen);
        FddsPoly p_q;
        std::uint32_t h = max_transient_height(b_q);
        for (const auto& [deg, coeff] : q.coeffs) {
            Fdds a_q = restrict_dividing(coeff, qlen);
            if (a_q.empty()) continue;
            Fdds y_pow = fdds_one();  // (Y|q)^(deg - j), built from the top down
            BigInt binom = 1;         // binom(deg, j) at j = deg, deg-1, ...
            for (std::uint32_t j = deg; j >= 1; --j) {
                if (!y_pow.empty()) {
                    BigInt term_size = binom * a_q.size() * y_pow.size();
                    if (term_size > opts.state_cap) {
                        return general_fail(SolveReason::no_solution,
                                            "difference coefficient exceeds the state cap");
                    }
                    Fdds base = product(a_q, y_pow, opts.state_cap);
                    Fdds term;
                    const std::uint64_t copies = static_cast<std::uint64_t>(binom);
                    term.succ.reserve(copies * base.size());
                    for (std::uint64_t r = 0; r < copies; ++r) {
                        const State offset = static_cast<State>(term.succ.size());
                        for (State s : base.succ) term.succ.push_back(s + offset);
                    }
                    auto slot = p_q.coeffs.find(j);
                    if (slot == p_q.coeffs.end()) {
                        p_q.coeffs.emplace(j, std::move(term));
                    } else {
                        slot->second = sum(slot->second, term);
                    }
                }
                if (j > 1) {
                    binom = binom * j / (deg - j + 1);
                    if (y_q.empty()) break;  // deeper cross terms vanish
                    if (static_cast<std::uint64_t>(y_pow.size()) * y_q.size() > opts.state_cap) {
                        return general_fail(SolveReason::no_solution,
                                            "difference coefficient exceeds the state cap");
                    }
                    y_pow = product(y_pow, y_q, opts.state_cap);
                }
            }
        }
        for (const auto& [deg, coeff] : p_q.coeffs) h = std::max(h, max_transient_height(coeff));
        if (p_q.coeffs.empty()) {
            return general_fail(SolveReason::no_solution, "no coefficient survives the restriction");
        }
        // depth: enough to hold every transient level plus a full period
        const std::uint32_t depth =
            static_cast<std::uint32_t>(std::min<std::uint64_t>(full_depth, h + qlen + 1));
        TreeArena arena;
        std::vector<TreeCandidate> candidates = tree_divide_candidates(p_q, b_q, depth, arena);
        if (candidates.empty()) {
            return general_fail(SolveReason::no_solution, "tree division found no candidate");
        }
        bool committed = false;
        for (const TreeCandidate& cand : candidates) {
            std::uint64_t len;
            Fdds c;
            try {
                len = candidate_cycle_length(a_min, qlen, cand.tree.period);
                c = deroll(cand.tree, len, arena, opts.state_cap);
            } catch (const std::exception&) {
                continue;
            }
            Fdds y_next = sum(y, c);
            std::optional<Fdds> eval = eval_fdds_poly(q, y_next, cap);
            if (!eval) {
                if (backtracks-- == 0) {
                    return general_fail(SolveReason::no_solution, "backtracking budget exhausted");
                }
                continue;
            }
            CompMultiset eval_ms = CompMultiset::of(*eval);
            CompMultiset delta = eval_ms;
            bool fits = delta.contains(py);
            if (fits) {
                delta.subtract(py);
                fits = b_rem.contains(delta);
            }
            if (!fits) {
                if (backtracks-- == 0) {
                    return general_fail(SolveReason::no_solution, "backtracking budget exhausted");
                }
                continue;
            }
            b_rem.subtract(delta);
            y = std::move(y_next);
            py = std::move(eval_ms);
            out.components_added.push_back(std::move(c));
            committed = true;
            break;
        }
        if (!committed) {
            return general_fail(SolveReason::no_solution, "no candidate component fits the remainder");
        }
    }
    // final gate: answers are only reported after full re-verification
    std::optional<Fdds> check = eval_fdds_poly(p, y, b.size());
    if (!check || !is_isomorphic(*check, b)) {
        return general_fail(SolveReason::no_solution, "final verification failed");
    }
    out.reason = SolveReason::solved;
    out.solution = std::move(y);
    out.verified = true;
    return out;
}

// ---- exhaustive enumeration up to isomorphism ----

namespace {

struct RTree {
    std::vector<std::uint32_t> child_ids;  // indexes into the size-class pools
    std::vector<std::uint32_t> child_sizes;
    std::string code;
};

// all rooted trees with k nodes, pools[k] sorted by code
void fill_rtrees(std::uint32_t k, std::vector<std::vector<RTree>>& pools) {
    if (pools.size() > k && !pools[k].empty()) return;
    if (pools.size() <= k) pools.resize(k + 1);
    if (k == 0) return;
    if (k == 1) {
        pools[1] = {RTree{{}, {}, "()"}};
        return;
    }
    for (std::uint32_t s = 1; s < k; ++s) fill_rtrees(s, pools);
    std::vector<RTree>& out = pools[k];
    RTree current;
    // children as a non-increasing (size, index) sequence: each multiset of
    // subtrees is produced exactly once
    std::function<void(std::uint32_t, std::uint32_t, std::uint32_t)> rec =
        [&](std::uint32_t remaining, std::uint32_t max_size, std::uint32_t max_index) {
            if (remaining == 0) {
                RTree t = current;
                std::vector<std::string> codes;
                codes.reserve(t.child_ids.size());
                for (std::size_t i = 0; i < t.child_ids.size(); ++i) {
                    codes.push_back(pools[t.child_sizes[i]][t.child_ids[i]].code);
                }
                std::sort(codes.begin(), codes.end());
                t.code = "(";
                for (const std::string& c : codes) t.code += c;
                t.code += ')';
                out.push_back(std::move(t));
                return;
            }
            for (std::uint32_t s = std::min(remaining, max_size); s >= 1; --s) {
                const std::uint32_t start =
                    (s == max_size) ? std::min<std::uint32_t>(max_index, pools[s].size() - 1)
                                    : static_cast<std::uint32_t>(pools[s].size() - 1);
                for (std::uint32_t i = start + 1; i-- > 0;) {
                    current.child_ids.push_back(i);
                    current.child_sizes.push_back(s);
                    rec(remaining - s, s, i);
                    current.child_ids.pop_back();
                    current.child_sizes.pop_back();
                }
            }
        };
    rec(k - 1, k - 1, UINT32_MAX);
    std::sort(out.begin(), out.end(), [](const RTree& a, const RTree& b) { return a.code < b.code; });
}

void materialize_rtree(const std::vector<std::vector<RTree>>& pools, std::uint32_t size,
                       std::uint32_t index, State root, Fdds& f) {
    const RTree& t = pools[size][index];
    for (std::size_t i = 0; i < t.child_ids.size(); ++i) {
        const State child = static_cast<State>(f.succ.size());
        f.succ.push_back(root);
        materialize_rtree(pools, t.child_sizes[i], t.child_ids[i], child, f);
    }
}

// all connected systems with n states, up to iso
std::vector<Fdds> enumerate_connected(std::uint32_t n, std::vector<std::vector<RTree>>& pools) {
    std::vector<Fdds> out;
    fill_rtrees(n, pools);
    for (std::uint32_t L = 1; L <= n; ++L) {
        // tuples of rooted trees around the cycle, deduped by least rotation
        std::set<std::string> seen;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> slots(L);
        std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t pos,
                                                                    std::uint32_t remaining) {
            if (pos == L) {
                if (remaining != 0) return;
                std::vector<std::string> codes(L);
                for (std::uint32_t i = 0; i < L; ++i) codes[i] = pools[slots[i].first][slots[i].second].code;
                // least rotation, naive scan
                std::uint32_t best = 0;
                for (std::uint32_t s = 1; s < L; ++s) {
                    for (std::uint32_t i = 0; i < L; ++i) {
                        const std::string& x = codes[(s + i) % L];
                        const std::string& y = codes[(best + i) % L];
                        if (x != y) {
                            if (x < y) best = s;
                            break;
                        }
                    }
                }
                std::string key;
                for (std::uint32_t i = 0; i < L; ++i) key += codes[(best + i) % L];
                if (!seen.insert(key).second) return;
                Fdds f;
                f.succ.reserve(n);
                for (std::uint32_t i = 0; i < L; ++i) f.succ.push_back((i + 1) % L);
                for (std::uint32_t i = 0; i < L; ++i) {
                    materialize_rtree(pools, slots[(best + i) % L].first, slots[(best + i) % L].second,
                                      static_cast<State>(i), f);
                }
                out.push_back(std::move(f));
                return;
            }
            const std::uint32_t slack = remaining - (L - pos - 1);  // others need >= 1 each
            for (std::uint32_t s = 1; s <= slack; ++s) {
                for (std::uint32_t i = 0; i < pools[s].size(); ++i) {
                    slots[pos] = {s, i};
                    rec(pos + 1, remaining - s);
                }
            }
        };
        rec(0, n);
    }
    return out;
}

}  // namespace

std::vector<Fdds> enumerate_fdds(std::uint32_t n, std::uint64_t* budget) {
    std::vector<std::vector<RTree>> pools;
    std::vector<std::vector<Fdds>> connected(n + 1);
    std::vector<std::vector<std::string>> conn_codes(n + 1);
    for (std::uint32_t s = 1; s <= n; ++s) {
        connected[s] = enumerate_connected(s, pools);
        for (const Fdds& c : connected[s]) conn_codes[s].push_back(canon(c).code);
        // sort the pool by code for a deterministic non-increasing choice
        std::vector<std::size_t> order(connected[s].size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return conn_codes[s][a] < conn_codes[s][b]; });
        std::vector<Fdds> cs;
        std::vector<std::string> codes;
        for (std::size_t i : order) {
            cs.push_back(std::move(connected[s][i]));
            codes.push_back(std::move(conn_codes[s][i]));
        }
        connected[s] = std::move(cs);
        conn_codes[s] = std::move(codes);
    }
    std::vector<Fdds> out;
    if (n == 0) {
        out.push_back(Fdds{});
        return out;
    }
    Fdds current;
    std::function<void(std::uint32_t, std::uint32_t, std::uint32_t)> rec =
        [&](std::uint32_t remaining, std::uint32_t max_size, std::uint32_t max_index) {
            if (remaining == 0) {
                if (budget) {
                    if (*budget == 0) throw EnumerationBudgetError("enumeration budget exhausted");
                    --*budget;
                }
                out.push_back(current);
                return;
            }
            for (std::uint32_t s = std::min(remaining, max_size); s >= 1; --s) {
                if (connected[s].empty()) continue;
                const std::uint32_t start =
                    (s == max_size) ? std::min<std::uint32_t>(max_index, connected[s].size() - 1)
                                    : static_cast<std::uint32_t>(connected[s].size() - 1);
                for (std::uint32_t i = start + 1; i-- > 0;) {
                    const std::size_t before = current.succ.size();
                    current = sum(current, connected[s][i]);
                    rec(remaining - s, s, i);
                    current.succ.resize(before);
                }
            }
        };
    rec(n, n, UINT32_MAX);
    std::sort(out.begin(), out.end(),
              [](const Fdds& a, const Fdds& b) { return canon(a).code < canon(b).code; });
    return out;
}

std::vector<Fdds> brute_force_solve(const FddsPoly& p, const Fdds& b, std::uint32_t max_states,
                                    std::uint64_t budget) {
    bool has_nonconstant = false;
    for (const auto& [deg, coeff] : p.coeffs) {
        if (deg >= 1 && !coeff.empty()) has_nonconstant = true;
    }
    if (!has_nonconstant) {
        throw std::invalid_argument("brute_force_solve needs a nonconstant polynomial");
    }
    // |P(X)| depends on |X| alone; a single candidate size survives
    std::optional<std::uint32_t> candidate_size;
    for (std::uint32_t s = 0; s <= max_states; ++s) {
        BigInt total = 0;
        for (const auto& [deg, coeff] : p.coeffs) {
            BigInt term = coeff.size();
            for (std::uint32_t i = 0; i < deg; ++i) term *= s;
            total += term;
        }
        if (total == b.size()) {
            candidate_size = s;
            break;
        }
        if (total > b.size() && s >= 1) break;
    }
    std::vector<Fdds> solutions;
    if (!candidate_size) return solutions;
    const CanonForm target = canon(b);
    for (Fdds& x : enumerate_fdds(*candidate_size, &budget)) {
        std::optional<Fdds> eval = eval_fdds_poly(p, x, b.size());
        if (!eval) continue;
        if (canon(*eval) == target) solutions.push_back(canonical_relabel(x));
    }
    std::sort(solutions.begin(), solutions.end(),
              [](const Fdds& a, const Fdds& b2) { return canon(a).code < canon(b2).code; });
    return solutions;
}

std::pair<Fdds, Fdds> count_extreme_solutions(const FddsPoly& p, const Fdds& b,
                                              std::uint32_t max_states) {
    std::vector<Fdds> all = brute_force_solve(p, b, max_states);
    if (all.empty()) throw std::logic_error("count_extreme_solutions: no solutions");
    std::vector<std::size_t> counts;
    counts.reserve(all.size());
    for (const Fdds& x : all) counts.push_back(components(x).size());
    const auto max_it = std::max_element(counts.begin(), counts.end());
    const auto min_it = std::min_element(counts.begin(), counts.end());
    if (std::count(counts.begin(), counts.end(), *max_it) != 1 ||
        std::count(counts.begin(), counts.end(), *min_it) != 1) {
        throw std::logic_error("count_extreme_solutions: extreme solution is not unique");
    }
    return {all[max_it - counts.begin()], all[min_it - counts.begin()]};
}

}  // namespace fdds
