#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fdds {

struct BenchPoint {
    std::uint64_t size = 0;
    double seconds = 0.0;
};

struct BenchReport {
    std::string kind;
    std::vector<BenchPoint> points;
    double fitted_exponent = 0.0;  // least-squares slope of log t over log n
};

// AX = B on explicit sums of cycles with n states on the right-hand side,
// solved through the compact encoding. reps runs per size, fastest kept.
BenchReport bench_linear_explicit_fast(const std::vector<std::uint64_t>& sizes, std::uint64_t seed,
                                       int reps);

// Compact AX = B where the size parameter is the number of distinct cycle
// lengths of the right-hand side.
BenchReport bench_linear_compact(const std::vector<std::uint64_t>& sizes, std::uint64_t seed,
                                 int reps);

double fit_exponent(const std::vector<BenchPoint>& points);

// Table plus the fitted exponent; timings vary run to run, the layout does
// not.
std::string format_bench_report(const BenchReport& report);

}  // namespace fdds
