#include "fdds/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "fdds/generator.hpp"
#include "fdds/solver_cycles.hpp"

namespace fdds {

namespace {

double time_once(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

double best_of(int reps, const std::function<void()>& fn) {
    double best = time_once(fn);
    for (int i = 1; i < reps; ++i) best = std::min(best, time_once(fn));
    return best;
}

}  // namespace

BenchReport bench_linear_explicit_fast(const std::vector<std::uint64_t>& sizes, std::uint64_t seed,
                                       int reps) {
    BenchReport report;
    report.kind = "explicit-fast";
    SolveOptions opts;
    opts.record_trace = false;
    for (std::uint64_t n : sizes) {
        SplitRng rng(seed ^ n);
        const std::uint64_t a_states = 2 * rng.in(1, 4);  // small pseudo-cancelable divisor
        CycleSum a_cs = gen_pseudo_cancelable_cs(rng, a_states);
        CycleSum x_cs = gen_random_cycle_sum(rng, std::max<std::uint64_t>(n / a_states, 1),
                                             std::max<std::uint64_t>(n / 50, 4));
        CycleSum b_cs = cs_product(a_cs, x_cs);
        Fdds a = shuffle_labels(rng, cs_to_fdds(a_cs, n + a_states));
        Fdds b = shuffle_labels(rng, cs_to_fdds(b_cs, 2 * n + a_states));
        double t = best_of(reps, [&] {
            SolveOutcome out = solve_linear_explicit_fast(a, b, opts);
            if (out.reason != SolveReason::solved) throw std::runtime_error("bench instance unsolved");
        });
        report.points.push_back({b.size(), t});
    }
    report.fitted_exponent = fit_exponent(report.points);
    return report;
}

BenchReport bench_linear_compact(const std::vector<std::uint64_t>& sizes, std::uint64_t seed,
                                 int reps) {
    BenchReport report;
    report.kind = "compact-linear";
    SolveOptions opts;
    opts.record_trace = false;
    for (std::uint64_t c : sizes) {
        SplitRng rng(seed ^ (c * 0x9e3779b97f4a7c15ull));
        CycleSum a = gen_pseudo_cancelable_cs(rng, 2 * rng.in(1, 4));
        // right-hand side with roughly c distinct lengths and huge counts
        std::vector<CycleEntry> raw;
        for (std::uint64_t i = 1; i <= c; ++i) {
            raw.push_back({BigInt(2 * i), BigInt(rng.next() | 1)});
        }
        CycleSum x = CycleSum::from_pairs(std::move(raw));
        CycleSum b = cs_product(a, x);
        double t = best_of(reps, [&] {
            SolveOutcome out = solve_linear_compact(a, b, opts);
            if (out.reason != SolveReason::solved) throw std::runtime_error("bench instance unsolved");
        });
        report.points.push_back({c, t});
    }
    report.fitted_exponent = fit_exponent(report.points);
    return report;
}

double fit_exponent(const std::vector<BenchPoint>& points) {
    if (points.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    for (const BenchPoint& p : points) {
        const double x = std::log(static_cast<double>(p.size));
        const double y = std::log(std::max(p.seconds, 1e-9));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string format_bench_report(const BenchReport& report) {
    std::string out = "kind: " + report.kind + "\n";
    out += "size\tseconds\n";
    char buf[64];
    for (const BenchPoint& p : report.points) {
        std::snprintf(buf, sizeof(buf), "%llu\t%.6f\n", static_cast<unsigned long long>(p.size),
                      p.seconds);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "fitted exponent: %.3f\n", report.fitted_exponent);
    out += buf;
    return out;
}

}  // namespace fdds
