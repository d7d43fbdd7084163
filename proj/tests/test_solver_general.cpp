#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fdds/cyclesum.hpp"
#include "fdds/generator.hpp"
#include "fdds/solver_general.hpp"

using namespace fdds;

namespace {

CycleSum cs(const char* text) { return parse_cycle_sum(text); }

FddsPoly worked_poly() {
    FddsPoly p;
    p.coeffs[2] = cs_to_fdds(cs("1x2"));
    p.coeffs[1] = cs_to_fdds(cs("1x4+1x6"));
    return p;
}

}  // namespace

TEST_CASE("enumeration matches a canonical dedup of all successor tables") {
    for (std::uint32_t n = 0; n <= 4; ++n) {
        std::set<std::string> codes;
        std::vector<State> table(n, 0);
        std::uint64_t limit = 1;
        for (std::uint32_t i = 0; i < n; ++i) limit *= n;
        for (std::uint64_t code = 0; code < limit; ++code) {
            std::uint64_t c = code;
            for (std::uint32_t i = 0; i < n; ++i) {
                table[i] = static_cast<State>(c % n);
                c /= n;
            }
            codes.insert(canon(Fdds{table}).code);
        }
        std::vector<Fdds> enumerated = enumerate_fdds(n);
        CHECK(enumerated.size() == codes.size());
        std::set<std::string> got;
        for (const Fdds& f : enumerated) got.insert(canon(f).code);
        CHECK(got == codes);
    }
    std::uint64_t tiny = 3;
    CHECK_THROWS_AS(enumerate_fdds(5, &tiny), EnumerationBudgetError);
}

TEST_CASE("brute force oracle on the worked instance") {
    Fdds b = cs_to_fdds(cs("16x2+4x4+18x6+1x12"));
    std::vector<Fdds> sols = brute_force_solve(worked_poly(), b, 8);
    REQUIRE(sols.size() == 3);
    std::set<std::string> got;
    for (const Fdds& s : sols) got.insert(format_cycle_sum(*fdds_to_cs(s)));
    CHECK(got == std::set<std::string>{"4x1+1x3", "2x1+1x2+1x3", "2x2+1x3"});

    auto [maxsol, minsol] = count_extreme_solutions(worked_poly(), b, 8);
    CHECK(*fdds_to_cs(maxsol) == cs("4x1+1x3"));
    CHECK(*fdds_to_cs(minsol) == cs("2x2+1x3"));
    CHECK(components(maxsol).size() == 5);
    CHECK(components(minsol).size() == 3);
}

TEST_CASE("brute force oracle: identity and unsolvable") {
    FddsPoly identity;
    identity.coeffs[1] = fdds_one();
    std::vector<Fdds> sols = brute_force_solve(identity, make_cycle(2), 4);
    REQUIRE(sols.size() == 1);
    CHECK(is_isomorphic(sols[0], make_cycle(2)));

    FddsPoly twice;
    twice.coeffs[1] = make_cycle(2);
    CHECK(brute_force_solve(twice, make_cycle(3), 6).empty());

    FddsPoly constant;
    constant.coeffs[0] = make_cycle(2);
    CHECK_THROWS_AS(brute_force_solve(constant, make_cycle(2), 4), std::invalid_argument);
}

TEST_CASE("candidate cycle lengths") {
    CHECK(candidate_cycle_length(2, 2, 1) == 1);
    CHECK(candidate_cycle_length(12, 252, 2) == 126);
    CHECK(candidate_cycle_length(2, 4, 1) == 4);
    CHECK_THROWS_AS(candidate_cycle_length(5, 12, 1), std::invalid_argument);
}

TEST_CASE("tree division: cycles give bare spines") {
    TreeArena arena;
    FddsPoly p;
    p.coeffs[1] = sum(make_cycle(2), make_cycle(4));
    Fdds b = restrict_dividing(product(p.coeffs[1], make_cycle(1)), 2);
    std::optional<TreeCandidate> cand = min_tree_divide(p, b, 8, arena);
    REQUIRE(cand);
    CHECK(cand->tree.period == 1);
    CHECK(arena.level_widths(cand->tree.root) ==
          std::vector<std::uint64_t>(9, 1));  // a bare spine
}

TEST_CASE("tree division with a transient coefficient") {
    // A is a fixed point with one tail; dividing the unroll of A*C3 by the
    // unroll of A at degree 1 leaves the bare spine of C3
    TreeArena arena;
    Fdds a = parse_fdds("0 0");
    Fdds b = product(a, make_cycle(3));
    FddsPoly p;
    p.coeffs[1] = a;
    std::optional<TreeCandidate> cand = min_tree_divide(p, b, static_cast<std::uint32_t>(b.size()), arena);
    REQUIRE(cand);
    CHECK(cand->degree == 1);
    CHECK(cand->tree.period == 1);
    CHECK(arena.level_widths(cand->tree.root) == std::vector<std::uint64_t>(b.size() + 1, 1));
}

TEST_CASE("tree division round trip") {
    // dividing unroll(A*C) by unroll(A) at degree 1 recovers the minimal
    // tree of C
    SplitRng rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        Fdds a = gen_random_connected(rng, static_cast<std::uint32_t>(rng.in(1, 5)));
        Fdds c = gen_random_connected(rng, static_cast<std::uint32_t>(rng.in(1, 5)));
        Fdds b = product(a, c);
        const std::uint32_t depth = static_cast<std::uint32_t>(a.size() + c.size() + b.size());
        TreeArena arena;
        FddsPoly p;
        p.coeffs[1] = a;
        // restrict both sides the way the solver does
        const std::uint64_t q = min_cycle_length(b);
        Fdds b_q = restrict_dividing(b, q);
        Fdds a_q = restrict_dividing(a, q);
        if (a_q.empty()) continue;
        FddsPoly p_q;
        p_q.coeffs[1] = a_q;
        std::vector<TreeCandidate> cands = tree_divide_candidates(p_q, b_q, depth, arena);
        REQUIRE(!cands.empty());
        // the minimal unroll tree of C's restriction must be among them
        Fdds c_q = restrict_dividing(c, q);
        if (c_q.empty()) continue;
        std::optional<TreeArena::Id> c_min;
        for (const Component& comp : components(c_q)) {
            for (const UnrollTree& t : unroll_truncated(c_q, comp, depth, arena)) {
                if (!c_min ||
                    tree_compare(t, UnrollTree{*c_min, depth, 1}, arena) == std::strong_ordering::less) {
                    c_min = t.root;
                }
            }
        }
        bool found = false;
        for (const TreeCandidate& cand : cands) {
            if (cand.tree.root == *c_min) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("general solver agrees with the cycle solver on all-cycle input") {
    Fdds b = cs_to_fdds(cs("16x2+4x4+18x6+1x12"));
    GeneralOutcome out = solve_poly_general(worked_poly(), b);
    REQUIRE(out.reason == SolveReason::solved);
    CHECK(out.verified);
    CHECK(*fdds_to_cs(*out.solution) == cs("4x1+1x3"));
    CHECK(out.components_added.size() == 5);
    // evaluating the returned solution explicitly reproduces b up to iso
    std::optional<Fdds> eval = eval_fdds_poly(worked_poly(), cs_to_fdds(cs("4x1+1x3")), b.size());
    REQUIRE(eval);
    CHECK(is_isomorphic(*eval, b));
}

TEST_CASE("oracle solution sets are closed under admissible rewrites") {
    // whenever an oracle solution contains a cycle of length k*l with k
    // dividing the minimum coefficient length and coprime to the anti-lcm,
    // splitting it into d shorter cycles stays inside the solution set
    SplitRng rng(66);
    int closures = 0;
    for (int trial = 0; trial < 120 && closures < 25; ++trial) {
        FddsPoly p = gen_pseudo_injective_fdds_poly(rng, 2, 4, false, false);
        Fdds x0 = cs_to_fdds(gen_random_cycle_sum(rng, rng.in(1, 5)));
        std::optional<Fdds> b = eval_fdds_poly(p, x0, kDefaultStateCap);
        REQUIRE(b);
        if (b->size() > 60) continue;
        std::vector<Fdds> oracle = brute_force_solve(p, *b, static_cast<std::uint32_t>(x0.size()));
        REQUIRE(!oracle.empty());
        std::set<std::string> codes;
        for (const Fdds& s : oracle) codes.insert(canon(s).code);
        const BigInt min_a = min_cycle_length(fdds_poly_nonconstant_sum(p));
        for (const Fdds& s : oracle) {
            std::optional<CycleSum> scs = fdds_to_cs(s);
            if (!scs) continue;  // rewriting applies to sums of cycles
            const BigInt al = anti_lcm(cs_min_length(*fdds_to_cs(*b)), min_a);
            for (BigInt k = 2; k <= min_a; ++k) {
                if (min_a % k != 0 || boost::multiprecision::gcd(k, al) != 1) continue;
                if (cs_count_of_length(*scs, k * al) == 0) continue;
                for (BigInt d = 2; d <= k; ++d) {
                    if (k % d != 0) continue;
                    CycleSum rewritten = rewrite_solution(*scs, k, d, al);
                    Fdds candidate = cs_to_fdds(rewritten);
                    CHECK(codes.count(canon(candidate).code) == 1);
                    ++closures;
                }
            }
        }
    }
    CHECK(closures >= 25);
}

TEST_CASE("general solver strictly generalizes the cycle solver") {
    SplitRng rng(67);
    for (int trial = 0; trial < 30; ++trial) {
        CyclePoly p = gen_pseudo_injective_poly(rng, 2, 6, true);
        CycleSum y0 = gen_random_cycle_sum(rng, rng.in(1, 6));
        std::optional<CycleSum> b = poly_eval_capped(p, y0, BigInt(1) << 64);
        REQUIRE(b);
        if (cs_size(*b) > 500) continue;
        FddsPoly fp;
        for (const auto& [deg, coeff] : p.coeffs) fp.coeffs.emplace(deg, cs_to_fdds(coeff));
        GeneralOutcome general = solve_poly_general(fp, cs_to_fdds(*b));
        SolveOutcome cycles = solve_poly_explicit(p, cs_to_fdds(*b));
        REQUIRE(general.reason == SolveReason::solved);
        REQUIRE(cycles.reason == SolveReason::solved);
        CHECK(*fdds_to_cs(*general.solution) == *cycles.solution);
    }
}

TEST_CASE("general solver: identity polynomial with transients") {
    SplitRng rng(62);
    FddsPoly identity;
    identity.coeffs[1] = fdds_one();
    for (int trial = 0; trial < 25; ++trial) {
        Fdds b = gen_random_fdds(rng, static_cast<std::uint32_t>(rng.in(1, 10)));
        GeneralOutcome out = solve_poly_general(identity, b);
        REQUIRE(out.reason == SolveReason::solved);
        CHECK(out.verified);
        CHECK(is_isomorphic(*out.solution, b));
    }
}

TEST_CASE("general solver: preconditions and unsolvable cases") {
    FddsPoly constant;
    constant.coeffs[0] = make_cycle(2);
    CHECK(solve_poly_general(constant, make_cycle(2)).reason == SolveReason::precondition_failed);

    FddsPoly not_pi;
    not_pi.coeffs[1] = sum(make_cycle(2), make_cycle(3));
    CHECK(solve_poly_general(not_pi, make_cycle(6)).reason == SolveReason::precondition_failed);

    FddsPoly twice;
    twice.coeffs[1] = make_cycle(2);
    CHECK(solve_poly_general(twice, make_cycle(3)).reason == SolveReason::no_solution);

    // constant term not contained
    FddsPoly p;
    p.coeffs[0] = make_cycle(5);
    p.coeffs[1] = fdds_one();
    CHECK(solve_poly_general(p, make_cycle(3)).reason == SolveReason::no_solution);
}

TEST_CASE("general solver round trips on generated transient instances") {
    SplitRng rng(63);
    int solved_count = 0;
    for (int trial = 0; trial < 60; ++trial) {
        FddsPoly p = gen_pseudo_injective_fdds_poly(rng, 2, 6, true, true);
        Fdds x0 = gen_random_fdds(rng, static_cast<std::uint32_t>(rng.in(1, 10)));
        std::optional<Fdds> b = eval_fdds_poly(p, x0, kDefaultStateCap);
        REQUIRE(b);
        GeneralOutcome out = solve_poly_general(p, *b);
        REQUIRE(out.reason == SolveReason::solved);
        CHECK(out.verified);
        std::optional<Fdds> check = eval_fdds_poly(p, *out.solution, b->size());
        REQUIRE(check);
        CHECK(is_isomorphic(*check, *b));
        ++solved_count;
    }
    CHECK(solved_count == 60);
}

TEST_CASE("general solver agrees with the oracle on small instances") {
    SplitRng rng(64);
    int agreements = 0;
    for (int trial = 0; trial < 200 && agreements < 40; ++trial) {
        FddsPoly p = gen_pseudo_injective_fdds_poly(rng, 2, 4, false, true);
        Fdds b = gen_random_fdds(rng, static_cast<std::uint32_t>(rng.in(1, 8)));
        if (b.size() > 8) continue;
        std::vector<Fdds> oracle = brute_force_solve(p, b, 8);
        GeneralOutcome out = solve_poly_general(p, b);
        CHECK((out.reason == SolveReason::solved) == !oracle.empty());
        if (out.reason == SolveReason::solved) {
            // the greedy answer is the oracle's max-component solution
            std::size_t best = 0;
            for (const Fdds& x : oracle) best = std::max(best, components(x).size());
            CHECK(components(*out.solution).size() == best);
            bool in_oracle = false;
            for (const Fdds& x : oracle) {
                if (is_isomorphic(x, *out.solution)) in_oracle = true;
            }
            CHECK(in_oracle);
        }
        ++agreements;
    }
    CHECK(agreements >= 40);
}

TEST_CASE("extreme solutions are unique on generated instances") {
    SplitRng rng(65);
    int checked = 0;
    for (int trial = 0; trial < 120 && checked < 50; ++trial) {
        FddsPoly p = gen_pseudo_injective_fdds_poly(rng, 2, 4, false, false);
        Fdds x0 = cs_to_fdds(gen_random_cycle_sum(rng, rng.in(1, 4)));
        std::optional<Fdds> b = eval_fdds_poly(p, x0, kDefaultStateCap);
        REQUIRE(b);
        if (b->size() > 40) continue;
        CHECK_NOTHROW(count_extreme_solutions(p, *b, static_cast<std::uint32_t>(x0.size())));
        ++checked;
    }
    CHECK(checked == 50);
}
