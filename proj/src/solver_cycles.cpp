#include "fdds/solver_cycles.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace fdds {

namespace {

SolveOutcome fail(SolveReason reason, std::string why) {
    SolveOutcome out;
    out.reason = reason;
    out.diagnostic = std::move(why);
    return out;
}

SolveOutcome solved(CycleSum solution, SolveTrace trace) {
    SolveOutcome out;
    out.reason = SolveReason::solved;
    out.solution = std::move(solution);
    out.trace = std::move(trace);
    return out;
}

// Explicit-world multiset of cycle lengths, machine-sized.
using LengthMultiset = std::map<std::uint64_t, std::uint64_t>;

LengthMultiset length_multiset(const Fdds& f) {
    LengthMultiset m;
    for (const Component& c : components(f)) ++m[c.cycle_len()];
    return m;
}

bool lm_subset(const LengthMultiset& a, const LengthMultiset& b) {
    for (const auto& [len, count] : a) {
        auto it = b.find(len);
        if (it == b.end() || it->second < count) return false;
    }
    return true;
}

void lm_subtract(LengthMultiset& b, const LengthMultiset& a) {
    for (const auto& [len, count] : a) {
        auto it = b.find(len);
        it->second -= count;
        if (it->second == 0) b.erase(it);
    }
}

void lm_accumulate(LengthMultiset& b, const LengthMultiset& a) {
    for (const auto& [len, count] : a) b[len] += count;
}

std::uint64_t lm_states(const LengthMultiset& m) {
    std::uint64_t n = 0;
    for (const auto& [len, count] : m) n += len * count;
    return n;
}

CycleSum lm_to_cs(const LengthMultiset& m) {
    std::vector<CycleEntry> raw;
    raw.reserve(m.size());
    for (const auto& [len, count] : m) raw.push_back({BigInt(len), BigInt(count)});
    return CycleSum::from_pairs(std::move(raw));
}

std::uint64_t anti_lcm_u64(std::uint64_t b, std::uint64_t a) {
    return static_cast<std::uint64_t>(anti_lcm(BigInt(b), BigInt(a)));
}

}  // namespace

SolveOutcome solve_linear_explicit(const Fdds& a, const Fdds& b, const SolveOptions& opts) {
    if (a.empty()) return fail(SolveReason::precondition_failed, "left-hand side is empty");
    if (!is_permutation(a) || !is_permutation(b)) {
        return fail(SolveReason::precondition_failed, "operands must be sums of cycles");
    }
    if (!is_pseudo_cancelable(a)) {
        return fail(SolveReason::precondition_failed, "left-hand side is not pseudo-cancelable");
    }
    const LengthMultiset a_ms = length_multiset(a);
    LengthMultiset b_ms = length_multiset(b);
    const std::uint64_t size_a = a.size();
    const std::uint64_t min_a = a_ms.begin()->first;

    LengthMultiset x_ms;
    LengthMultiset ay_ms;  // A * (partial solution)
    SolveTrace trace;
    while (!b_ms.empty()) {
        const std::uint64_t size_b = lm_states(b_ms);
        if (size_b < size_a || size_b % size_a != 0) {
            return fail(SolveReason::no_solution, "state counts cannot match");
        }
        const std::uint64_t min_b = b_ms.begin()->first;
        if (min_b % min_a != 0) {
            return fail(SolveReason::no_solution, "minimum cycle lengths are incompatible");
        }
        const std::uint64_t clen = anti_lcm_u64(min_b, min_a);
        Fdds c = make_cycle(clen);
        Fdds ac = product(a, c, opts.state_cap);
        LengthMultiset ac_ms = length_multiset(ac);
        if (!lm_subset(ac_ms, b_ms)) {
            return fail(SolveReason::no_solution, "required product is not contained in the remainder");
        }
        if (opts.record_trace) {
            LengthMultiset ayc = ay_ms;
            lm_accumulate(ayc, ac_ms);
            trace.rows.push_back({lm_to_cs(b_ms), lm_to_cs(x_ms), CycleSum::single(clen),
                                  lm_to_cs(ayc), lm_to_cs(ay_ms), lm_to_cs(ac_ms)});
        }
        lm_subtract(b_ms, ac_ms);
        ++x_ms[clen];
        lm_accumulate(ay_ms, ac_ms);
    }
    return solved(lm_to_cs(x_ms), std::move(trace));
}

namespace {

// Explicit polynomial evaluation. Sizes multiply over products, so the cap
// check runs on integer sizes before anything is materialized; nullopt once
// the result would exceed cap states.
std::optional<Fdds> eval_poly_explicit(const std::map<std::uint32_t, Fdds>& coeffs, const Fdds& x,
                                       std::uint64_t cap) {
    BigInt total = 0;
    const BigInt sx = x.size();
    for (const auto& [deg, coeff] : coeffs) {
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
    for (const auto& [deg, coeff] : coeffs) {
        if (deg == 0) {
            acc = sum(acc, coeff);
        } else {
            acc = sum(acc, product(coeff, power(deg), cap));
        }
    }
    return acc;
}

}  // namespace

SolveOutcome solve_poly_explicit(const CyclePoly& p, const Fdds& b, const SolveOptions& opts) {
    if (!poly_is_pseudo_injective(p)) {
        return fail(SolveReason::precondition_failed, "polynomial is not pseudo-injective");
    }
    if (!is_permutation(b)) {
        return fail(SolveReason::precondition_failed, "right-hand side must be a sum of cycles");
    }
    // expand the coefficients once; the algorithm below works on explicit
    // digraphs throughout
    std::map<std::uint32_t, Fdds> coeffs;
    for (const auto& [deg, coeff] : p.coeffs) {
        if (coeff.is_zero()) continue;
        if (cs_size(coeff) > opts.state_cap) {
            return fail(SolveReason::precondition_failed, "coefficient exceeds the state cap");
        }
        coeffs[deg] = cs_to_fdds(coeff, opts.state_cap);
    }
    LengthMultiset b_ms = length_multiset(b);
    // strip the constant term
    auto a0 = coeffs.find(0);
    if (a0 != coeffs.end()) {
        LengthMultiset a0_ms = length_multiset(a0->second);
        if (!lm_subset(a0_ms, b_ms)) {
            return fail(SolveReason::no_solution, "constant term is not contained in the right-hand side");
        }
        lm_subtract(b_ms, a0_ms);
        coeffs.erase(a0);
    }
    const std::uint64_t cap = lm_states(b_ms);
    const CycleSum nc = poly_nonconstant_sum(p);
    const std::uint64_t min_a = static_cast<std::uint64_t>(cs_min_length(nc));
    const std::uint64_t size_a = static_cast<std::uint64_t>(cs_size(nc));

    Fdds y;
    LengthMultiset y_ms;
    LengthMultiset py_ms;  // multiset of P(Y) with the constant stripped
    SolveTrace trace;
    std::uint64_t guard = cap + 1;
    while (!b_ms.empty()) {
        if (guard-- == 0) return fail(SolveReason::no_solution, "iteration guard exceeded");
        if (lm_states(b_ms) < size_a) {
            return fail(SolveReason::no_solution, "remainder is smaller than the coefficients");
        }
        const std::uint64_t min_b = b_ms.begin()->first;
        if (min_b % min_a != 0) {
            return fail(SolveReason::no_solution, "minimum cycle lengths are incompatible");
        }
        const std::uint64_t clen = anti_lcm_u64(min_b, min_a);
        Fdds y_next = sum(y, make_cycle(clen));
        std::optional<Fdds> pyc = eval_poly_explicit(coeffs, y_next, cap);
        if (!pyc) return fail(SolveReason::no_solution, "evaluation exceeds the right-hand side size");
        LengthMultiset pyc_ms = length_multiset(*pyc);
        LengthMultiset delta = pyc_ms;
        if (!lm_subset(py_ms, delta)) {
            return fail(SolveReason::no_solution, "evaluation is not monotone over the remainder");
        }
        lm_subtract(delta, py_ms);
        if (!lm_subset(delta, b_ms)) {
            return fail(SolveReason::no_solution, "iteration delta is not contained in the remainder");
        }
        if (opts.record_trace) {
            trace.rows.push_back({lm_to_cs(b_ms), lm_to_cs(y_ms), CycleSum::single(clen),
                                  lm_to_cs(pyc_ms), lm_to_cs(py_ms), lm_to_cs(delta)});
        }
        lm_subtract(b_ms, delta);
        y = std::move(y_next);
        ++y_ms[clen];
        py_ms = std::move(pyc_ms);
    }
    return solved(lm_to_cs(y_ms), std::move(trace));
}

SolveOutcome solve_linear_compact(const CycleSum& a, const CycleSum& b, const SolveOptions& opts) {
    if (a.is_zero()) return fail(SolveReason::precondition_failed, "left-hand side is empty");
    if (!cs_is_pseudo_cancelable(a)) {
        return fail(SolveReason::precondition_failed, "left-hand side is not pseudo-cancelable");
    }
    const BigInt size_a = cs_size(a);
    const BigInt min_a = cs_min_length(a);
    CycleSum b_rem = b;
    CycleSum x;
    CycleSum ax;  // A * (partial solution), for the trace
    SolveTrace trace;
    while (!b_rem.is_zero()) {
        const BigInt size_b = cs_size(b_rem);
        if (size_b < size_a || size_b % size_a != 0) {
            return fail(SolveReason::no_solution, "state counts cannot match");
        }
        const BigInt min_b = cs_min_length(b_rem);
        if (min_b % min_a != 0) {
            return fail(SolveReason::no_solution, "minimum cycle lengths are incompatible");
        }
        const BigInt p = anti_lcm(min_b, min_a);
        // multiplicity of the minimum length in A * C_p
        CycleSum acp = cs_product(a, CycleSum::single(p));
        const BigInt d = cs_count_of_length(acp, min_b);
        if (d == 0) return fail(SolveReason::no_solution, "candidate cycle cannot reach the minimum length");
        const BigInt need = cs_count_of_length(b_rem, min_b);
        if (need % d != 0) {
            return fail(SolveReason::no_solution, "minimum-length multiplicity is not divisible");
        }
        CycleSum s = CycleSum::single(p, need / d);
        CycleSum as = cs_product(a, s);
        if (!cs_is_subset(as, b_rem)) {
            return fail(SolveReason::no_solution, "required product is not contained in the remainder");
        }
        if (opts.record_trace) {
            trace.rows.push_back({b_rem, x, s, cs_add(ax, as), ax, as});
        }
        b_rem = *cs_sub(b_rem, as);
        x = cs_add(x, s);
        ax = cs_add(ax, as);
    }
    return solved(std::move(x), std::move(trace));
}

SolveOutcome solve_poly_compact(const CyclePoly& p, const CycleSum& b, const SolveOptions& opts) {
    if (!poly_is_pseudo_injective(p)) {
        return fail(SolveReason::precondition_failed, "polynomial is not pseudo-injective");
    }
    CyclePoly q = p;
    CycleSum b_rem = b;
    auto a0 = q.coeffs.find(0);
    if (a0 != q.coeffs.end()) {
        std::optional<CycleSum> stripped = cs_sub(b_rem, a0->second);
        if (!stripped) {
            return fail(SolveReason::no_solution, "constant term is not contained in the right-hand side");
        }
        b_rem = std::move(*stripped);
        q.coeffs.erase(a0);
    }
    const BigInt cap = cs_size(b_rem);
    const CycleSum nc = poly_nonconstant_sum(q);
    const BigInt min_a = cs_min_length(nc);
    const BigInt size_a = cs_size(nc);

    CycleSum y;
    CycleSum py;  // P(Y) with the constant stripped
    SolveTrace trace;
    std::size_t guard = b_rem.entries.size() + 1;
    while (!b_rem.is_zero()) {
        if (guard-- == 0) return fail(SolveReason::no_solution, "iteration guard exceeded");
        if (cs_size(b_rem) < size_a) {
            return fail(SolveReason::no_solution, "remainder is smaller than the coefficients");
        }
        const BigInt min_b = cs_min_length(b_rem);
        if (min_b % min_a != 0) {
            return fail(SolveReason::no_solution, "minimum cycle lengths are incompatible");
        }
        const BigInt l = anti_lcm(min_b, min_a);
        const BigInt target = cs_count_of_length(b_rem, min_b);
        // binary search for the unique multiplicity d whose delta consumes
        // exactly the remaining minimum-length cycles: that count grows
        // strictly with d, and containment in the remainder is downward
        // closed
        BigInt lo = 1, hi = target;
        std::optional<BigInt> found;
        CycleSum found_delta, found_pyc, found_y;
        while (lo <= hi) {
            BigInt mid = (lo + hi) / 2;
            CycleSum y_try = cs_add(y, CycleSum::single(l, mid));
            std::optional<CycleSum> pyc = poly_eval_capped(q, y_try, cap);
            if (!pyc) {
                hi = mid - 1;
                continue;
            }
            std::optional<CycleSum> delta = cs_sub(*pyc, py);
            if (!delta || !cs_is_subset(*delta, b_rem)) {
                hi = mid - 1;
                continue;
            }
            const BigInt consumed = cs_count_of_length(*delta, min_b);
            if (consumed < target) {
                lo = mid + 1;
            } else {
                found = mid;
                found_delta = std::move(*delta);
                found_pyc = std::move(*pyc);
                found_y = std::move(y_try);
                break;
            }
        }
        if (!found) {
            return fail(SolveReason::no_solution, "no multiplicity consumes the minimum length exactly");
        }
        if (opts.record_trace) {
            trace.rows.push_back({b_rem, y, CycleSum::single(l, *found), found_pyc, py, found_delta});
        }
        b_rem = *cs_sub(b_rem, found_delta);
        y = std::move(found_y);
        py = std::move(found_pyc);
    }
    return solved(std::move(y), std::move(trace));
}

SolveOutcome solve_linear_explicit_fast(const Fdds& a, const Fdds& b, const SolveOptions& opts) {
    std::optional<CycleSum> ca = fdds_to_cs(a);
    std::optional<CycleSum> cb = fdds_to_cs(b);
    if (!ca || !cb) {
        return fail(SolveReason::precondition_failed, "operands must be sums of cycles");
    }
    if (ca->is_zero()) return fail(SolveReason::precondition_failed, "left-hand side is empty");
    return solve_linear_compact(*ca, *cb, opts);
}

CycleSum rewrite_solution(const CycleSum& x, const BigInt& k, const BigInt& d, const BigInt& l) {
    if (k <= 0 || d <= 0 || l <= 0) throw std::invalid_argument("rewrite parameters must be positive");
    if (k % d != 0) throw std::invalid_argument("rewrite divisor must divide k");
    const BigInt from_len = k * l;
    if (cs_count_of_length(x, from_len) == 0) {
        throw std::invalid_argument("solution has no cycle of length " + from_len.str());
    }
    CycleSum removed = *cs_sub(x, CycleSum::single(from_len));
    return cs_add(removed, CycleSum::single((k / d) * l, d));
}

}  // namespace fdds
