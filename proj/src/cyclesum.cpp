#include "fdds/cyclesum.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace fdds {

namespace mp = boost::multiprecision;

CycleSum CycleSum::single(BigInt len, BigInt count) {
    if (len <= 0) throw std::invalid_argument("cycle length must be positive");
    if (count == 0) return {};
    if (count < 0) throw std::invalid_argument("cycle count must be positive");
    CycleSum s;
    s.entries.push_back({std::move(len), std::move(count)});
    return s;
}

CycleSum CycleSum::from_pairs(std::vector<CycleEntry> raw) {
    std::map<BigInt, BigInt> acc;
    for (CycleEntry& e : raw) {
        if (e.len <= 0) throw std::invalid_argument("cycle length must be positive");
        if (e.count < 0) throw std::invalid_argument("cycle count must be nonnegative");
        if (e.count == 0) continue;
        acc[e.len] += e.count;
    }
    CycleSum s;
    s.entries.reserve(acc.size());
    for (auto& [len, count] : acc) s.entries.push_back({len, count});
    return s;
}

CycleSum parse_cycle_sum(std::string_view text) {
    std::string compactd;
    compactd.reserve(text.size());
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) compactd += c;
    }
    if (compactd.empty()) throw ParseError("empty cycle-sum text");
    if (compactd == "0") return CycleSum::zero();
    std::vector<CycleEntry> raw;
    std::size_t pos = 0;
    while (pos <= compactd.size()) {
        std::size_t plus = compactd.find('+', pos);
        std::string term = compactd.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        std::size_t x = term.find('x');
        if (x == std::string::npos || x == 0 || x + 1 >= term.size()) {
            throw ParseError("bad cycle-sum term '" + term + "' (expected NxL)");
        }
        std::string ns = term.substr(0, x);
        std::string ls = term.substr(x + 1);
        auto digits = [](const std::string& s) {
            return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
        };
        if (!digits(ns) || !digits(ls)) throw ParseError("bad cycle-sum term '" + term + "'");
        CycleEntry e{BigInt(ls), BigInt(ns)};
        if (e.len <= 0 || e.count <= 0) throw ParseError("cycle-sum entries must be positive in '" + term + "'");
        raw.push_back(std::move(e));
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return CycleSum::from_pairs(std::move(raw));
}

std::string format_cycle_sum(const CycleSum& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (i) out += '+';
        out += a.entries[i].count.str();
        out += 'x';
        out += a.entries[i].len.str();
    }
    return out;
}

CycleSum cs_add(const CycleSum& a, const CycleSum& b) {
    CycleSum out;
    auto ia = a.entries.begin(), ib = b.entries.begin();
    while (ia != a.entries.end() || ib != b.entries.end()) {
        if (ib == b.entries.end() || (ia != a.entries.end() && ia->len < ib->len)) {
            out.entries.push_back(*ia++);
        } else if (ia == a.entries.end() || ib->len < ia->len) {
            out.entries.push_back(*ib++);
        } else {
            out.entries.push_back({ia->len, ia->count + ib->count});
            ++ia;
            ++ib;
        }
    }
    return out;
}

std::optional<CycleSum> cs_sub(const CycleSum& a, const CycleSum& b) {
    CycleSum out;
    auto ia = a.entries.begin(), ib = b.entries.begin();
    while (ia != a.entries.end() || ib != b.entries.end()) {
        if (ib == b.entries.end() || (ia != a.entries.end() && ia->len < ib->len)) {
            out.entries.push_back(*ia++);
        } else if (ia == a.entries.end() || ib->len < ia->len) {
            return std::nullopt;
        } else {
            if (ia->count < ib->count) return std::nullopt;
            if (ia->count > ib->count) out.entries.push_back({ia->len, ia->count - ib->count});
            ++ia;
            ++ib;
        }
    }
    return out;
}

bool cs_is_subset(const CycleSum& a, const CycleSum& b) {
    auto ia = a.entries.begin(), ib = b.entries.begin();
    while (ia != a.entries.end()) {
        while (ib != b.entries.end() && ib->len < ia->len) ++ib;
        if (ib == b.entries.end() || ib->len != ia->len || ib->count < ia->count) return false;
        ++ia;
        ++ib;
    }
    return true;
}

CycleSum cs_product(const CycleSum& a, const CycleSum& b) {
    std::map<BigInt, BigInt> acc;
    for (const CycleEntry& ea : a.entries) {
        for (const CycleEntry& eb : b.entries) {
            BigInt g = mp::gcd(ea.len, eb.len);
            BigInt l = (ea.len / g) * eb.len;
            acc[l] += ea.count * eb.count * g;
        }
    }
    CycleSum out;
    out.entries.reserve(acc.size());
    for (auto& [len, count] : acc) out.entries.push_back({len, count});
    return out;
}

BigInt cs_size(const CycleSum& a) {
    BigInt total = 0;
    for (const CycleEntry& e : a.entries) total += e.len * e.count;
    return total;
}

BigInt cs_min_length(const CycleSum& a) {
    if (a.is_zero()) throw UndefinedValueError("minimum cycle length of the empty sum is undefined");
    return a.entries.front().len;
}

bool cs_is_pseudo_cancelable(const CycleSum& a) {
    BigInt m = cs_min_length(a);
    for (const CycleEntry& e : a.entries) {
        if (e.len % m != 0) return false;
    }
    return true;
}

BigInt cs_count_of_length(const CycleSum& a, const BigInt& len) {
    for (const CycleEntry& e : a.entries) {
        if (e.len == len) return e.count;
    }
    return 0;
}

unsigned ceil_log2(const BigInt& b) {
    if (b <= 0) throw std::invalid_argument("ceil_log2 needs a positive argument");
    unsigned m = mp::msb(b);
    BigInt low = BigInt(1) << m;
    return (b == low) ? m : m + 1;
}

BigInt anti_lcm(const BigInt& b, const BigInt& a) {
    if (a <= 0 || b <= 0 || b % a != 0) {
        throw std::invalid_argument("anti_lcm requires positive a dividing b");
    }
    if (b == 1) return 1;
    BigInt q = b / a;
    if (q == 1) return 1;
    unsigned k = ceil_log2(b);
    // gcd(b, q^k) == gcd(b, q^k mod b), so the power never has to be
    // materialized at full size.
    BigInt r = mp::powm(q, k, b);
    if (r == 0) return b;
    return mp::gcd(b, r);
}

CycleSum poly_nonconstant_sum(const CyclePoly& p) {
    CycleSum acc;
    for (const auto& [deg, coeff] : p.coeffs) {
        if (deg >= 1) acc = cs_add(acc, coeff);
    }
    return acc;
}

bool poly_is_pseudo_injective(const CyclePoly& p) {
    CycleSum nc = poly_nonconstant_sum(p);
    if (nc.is_zero()) return false;
    return cs_is_pseudo_cancelable(nc);
}

namespace {

// |x|^e with early abort once the value exceeds cap.
std::optional<BigInt> pow_size_capped(const BigInt& base, std::uint32_t e, const BigInt& cap) {
    BigInt r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        r *= base;
        if (r > cap) return std::nullopt;
        if (r == 0) break;
    }
    return r;
}

}  // namespace

std::optional<CycleSum> poly_eval_capped(const CyclePoly& p, const CycleSum& x, const BigInt& cap) {
    if (cap < 0) throw std::invalid_argument("cap must be nonnegative");
    // Size pass first: |A_i x^i| = |A_i| * |x|^i.
    const BigInt sx = cs_size(x);
    BigInt total = 0;
    for (const auto& [deg, coeff] : p.coeffs) {
        std::optional<BigInt> px = pow_size_capped(sx, deg, cap);
        if (!px) return std::nullopt;
        total += cs_size(coeff) * *px;
        if (total > cap) return std::nullopt;
    }
    // Materialize with repeated squaring, reusing squares across degrees.
    CycleSum acc;
    std::vector<CycleSum> squares = {x};  // squares[j] = x^(2^j)
    auto power = [&](std::uint32_t e) {
        CycleSum r = CycleSum::single(1, 1);  // x^0 = the fixed point
        std::uint32_t bit = 0;
        std::uint64_t v = 1;
        while (v <= e) {
            if (bit >= squares.size()) squares.push_back(cs_product(squares.back(), squares.back()));
            if (e & v) r = cs_product(r, squares[bit]);
            ++bit;
            v <<= 1;
        }
        return r;
    };
    for (const auto& [deg, coeff] : p.coeffs) {
        if (deg == 0) {
            acc = cs_add(acc, coeff);
        } else {
            acc = cs_add(acc, cs_product(coeff, power(deg)));
        }
    }
    assert(cs_size(acc) == total);
    return acc;
}

Fdds cs_to_fdds(const CycleSum& a, std::uint64_t state_cap) {
    BigInt total = cs_size(a);
    if (total > state_cap) {
        throw SizeOverflowError("cycle sum expands to " + total.str() + " states (cap " +
                                std::to_string(state_cap) + ")");
    }
    Fdds out;
    out.succ.reserve(static_cast<std::size_t>(total));
    State base = 0;
    for (const CycleEntry& e : a.entries) {
        const std::uint64_t len = static_cast<std::uint64_t>(e.len);
        const std::uint64_t count = static_cast<std::uint64_t>(e.count);
        for (std::uint64_t c = 0; c < count; ++c) {
            for (std::uint64_t i = 0; i < len; ++i) {
                out.succ.push_back(base + static_cast<State>((i + 1) % len));
            }
            base += static_cast<State>(len);
        }
    }
    return out;
}

std::optional<CycleSum> fdds_to_cs(const Fdds& f) {
    if (!is_permutation(f)) return std::nullopt;
    std::map<std::uint64_t, std::uint64_t> counts;
    std::vector<bool> seen(f.size(), false);
    for (State i = 0; i < f.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        State cur = i;
        do {
            seen[cur] = true;
            ++len;
            cur = f.succ[cur];
        } while (cur != i);
        ++counts[len];
    }
    std::vector<CycleEntry> raw;
    raw.reserve(counts.size());
    for (auto [len, count] : counts) raw.push_back({BigInt(len), BigInt(count)});
    return CycleSum::from_pairs(std::move(raw));
}

}  // namespace fdds
