#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdds/bench.hpp"
#include "fdds/equation_io.hpp"
#include "fdds/generator.hpp"

using namespace fdds;

TEST_CASE("equation files parse and round trip") {
    const char* text =
        "# a polynomial over sums of cycles\n"
        "[polynomial]\n"
        "2 = compact: 1x2\n"
        "1 = compact: 1x4+1x6\n"
        "\n"
        "[rhs]\n"
        "compact: 16x2+4x4+18x6+1x12\n";
    Equation eq = parse_equation(text);
    REQUIRE(eq.coeffs.size() == 2);
    CHECK(eq.coeffs.at(2).cs == parse_cycle_sum("1x2"));
    CHECK(eq.coeffs.at(1).cs == parse_cycle_sum("1x4+1x6"));
    CHECK(eq.rhs.cs == parse_cycle_sum("16x2+4x4+18x6+1x12"));
    Equation again = parse_equation(format_equation(eq));
    CHECK(format_equation(again) == format_equation(eq));

    // a "<degree> =" prefix on the rhs line is tolerated
    Equation prefixed = parse_equation("[polynomial]\n1 = compact: 1x1\n[rhs]\n0 = compact: 3x2\n");
    CHECK(prefixed.rhs.cs == parse_cycle_sum("3x2"));

    // explicit operands
    Equation expl = parse_equation("[polynomial]\n1 = explicit: 0\n[rhs]\nexplicit: 1 0\n");
    CHECK(expl.coeffs.at(1).fd == fdds_one());
    CHECK(operand_has_transients(Operand{false, {}, parse_fdds("0 0")}));
    CHECK_FALSE(operand_has_transients(expl.rhs));

    CHECK_THROWS_AS(parse_equation("1 = compact: 1x1\n"), ParseError);
    CHECK_THROWS_AS(parse_equation("[polynomial]\n1 = compact: 1x1\n"), ParseError);
    CHECK_THROWS_AS(parse_equation("[polynomial]\nx = compact: 1x1\n[rhs]\ncompact: 0\n"), ParseError);
    CHECK_THROWS_AS(
        parse_equation("[polynomial]\n1 = compact: 1x1\n1 = compact: 1x2\n[rhs]\ncompact: 0\n"),
        ParseError);
}

TEST_CASE("trace formatting") {
    SolveTrace trace;
    trace.rows.push_back({parse_cycle_sum("2x2"), CycleSum::zero(), parse_cycle_sum("1x1"),
                          parse_cycle_sum("1x2"), CycleSum::zero(), parse_cycle_sum("1x2")});
    CHECK(format_trace(trace) ==
          "B_remaining\tY\tC\tP(Y+C)\tP(Y)\tdelta\n"
          "2x2\t0\t1x1\t1x2\t0\t1x2\n");
}

TEST_CASE("generators are deterministic and honor their contracts") {
    for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
        SplitRng r1(seed), r2(seed);
        CHECK(gen_random_fdds(r1, 20) == gen_random_fdds(r2, 20));
        CHECK(gen_pseudo_cancelable_cs(r1, 24) == gen_pseudo_cancelable_cs(r2, 24));
        CHECK(format_equation(Equation{}) == format_equation(Equation{}));
    }
    SplitRng rng(7);
    for (int i = 0; i < 60; ++i) {
        const std::uint64_t total = rng.in(1, 40);
        CycleSum pc = gen_pseudo_cancelable_cs(rng, total);
        CHECK(cs_size(pc) == total);
        CHECK(cs_is_pseudo_cancelable(pc));
        CycleSum any = gen_random_cycle_sum(rng, total);
        CHECK(cs_size(any) == total);
        CyclePoly p = gen_pseudo_injective_poly(rng, 3, 8, true);
        CHECK(poly_is_pseudo_injective(p));
        FddsPoly fp = gen_pseudo_injective_fdds_poly(rng, 2, 6, true, true);
        CHECK(fdds_poly_is_pseudo_injective(fp));
        Fdds f = gen_random_connected(rng, static_cast<std::uint32_t>(rng.in(1, 10)));
        CHECK(components(f).size() == 1);
    }
}

TEST_CASE("bench report shape") {
    BenchReport report = bench_linear_compact({10, 100, 1000}, 3, 1);
    REQUIRE(report.points.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(report.points[i].seconds >= 0.0);
    std::string text = format_bench_report(report);
    CHECK(text.find("kind: compact-linear") == 0);
    CHECK(text.find("fitted exponent:") != std::string::npos);
    // the layout is stable run to run; only the timing digits move
    BenchReport again = bench_linear_compact({10, 100, 1000}, 3, 1);
    CHECK(format_bench_report(again).substr(0, 28) == text.substr(0, 28));
}
