// Command-line front end: equation solving, semiring algebra on files,
// instance generation, conversions, and benchmarking.
//
// Exit codes for `solve`: 0 solved, 1 no solution, 2 precondition failed,
// 3 parse error, 4 size-cap overflow.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fdds/bench.hpp"
#include "fdds/equation_io.hpp"
#include "fdds/generator.hpp"
#include "fdds/solver_cycles.hpp"
#include "fdds/solver_general.hpp"

namespace {

using namespace fdds;

constexpr int kExitSolved = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitParse = 3;
constexpr int kExitOverflow = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

// Operand files outside equations: compact when the content has an 'x' term
// or is the single token "0", explicit successor table otherwise.
Operand load_operand(const std::string& path) {
    std::string text = read_file(path);
    std::string stripped;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
    }
    Operand op;
    if (stripped.find('x') != std::string::npos || stripped == "0") {
        op.compact = true;
        op.cs = parse_cycle_sum(text);
    } else {
        op.compact = false;
        op.fd = parse_fdds(text);
    }
    return op;
}

std::string render_fdds(const Fdds& f) { return serialize_fdds(canonical_relabel(f)) + "\n"; }

std::string render_operand_like(bool compact, const Fdds& f) {
    if (compact) {
        std::optional<CycleSum> cs = fdds_to_cs(f);
        if (cs) return format_cycle_sum(*cs) + "\n";
    }
    return render_fdds(f);
}

struct SolveArgs {
    std::string file;
    std::string mode = "auto";
    std::string out;
    bool trace = false;
    std::uint64_t cap = kDefaultStateCap;
};

int run_solve(const SolveArgs& args) {
    Equation eq = parse_equation(read_file(args.file));
    bool all_compact = eq.rhs.compact;
    bool any_transients = operand_has_transients(eq.rhs);
    for (const auto& [deg, op] : eq.coeffs) {
        all_compact = all_compact && op.compact;
        any_transients = any_transients || operand_has_transients(op);
    }
    std::string mode = args.mode;
    if (mode == "auto") {
        mode = all_compact ? "compact" : (any_transients ? "general" : "explicit");
    }
    SolveOptions opts;
    opts.record_trace = args.trace;
    opts.state_cap = args.cap;

    const bool linear = eq.coeffs.size() == 1 && eq.coeffs.begin()->first == 1;
    std::string body;
    SolveReason reason;
    SolveTrace trace;
    if (mode == "general") {
        FddsPoly poly = equation_to_fdds_poly(eq, args.cap);
        GeneralOutcome out = solve_poly_general(poly, operand_to_fdds(eq.rhs, args.cap), opts);
        reason = out.reason;
        if (out.reason == SolveReason::solved) body = render_fdds(*out.solution);
        if (out.reason == SolveReason::precondition_failed) body = out.diagnostic + "\n";
    } else if (mode == "compact") {
        CyclePoly poly = equation_to_cycle_poly(eq);
        CycleSum rhs = operand_to_cs(eq.rhs);
        SolveOutcome out = linear ? solve_linear_compact(poly.coeffs.begin()->second, rhs, opts)
                                  : solve_poly_compact(poly, rhs, opts);
        reason = out.reason;
        trace = std::move(out.trace);
        if (out.reason == SolveReason::solved) body = format_cycle_sum(*out.solution) + "\n";
        if (out.reason == SolveReason::precondition_failed) body = out.diagnostic + "\n";
    } else if (mode == "explicit") {
        CyclePoly poly = equation_to_cycle_poly(eq);
        Fdds rhs = operand_to_fdds(eq.rhs, args.cap);
        SolveOutcome out;
        if (linear) {
            out = solve_linear_explicit(cs_to_fdds(poly.coeffs.begin()->second, args.cap), rhs, opts);
        } else {
            out = solve_poly_explicit(poly, rhs, opts);
        }
        reason = out.reason;
        trace = std::move(out.trace);
        if (out.reason == SolveReason::solved) {
            // answer in the operand encoding
            if (eq.rhs.compact) {
                body = format_cycle_sum(*out.solution) + "\n";
            } else {
                body = render_fdds(cs_to_fdds(*out.solution, args.cap));
            }
        }
        if (out.reason == SolveReason::precondition_failed) body = out.diagnostic + "\n";
    } else {
        throw CLI::ValidationError("--mode must be auto, explicit, compact or general");
    }

    switch (reason) {
        case SolveReason::solved: {
            std::string text = body;
            if (args.trace) text += format_trace(trace);
            write_output(args.out, text);
            return kExitSolved;
        }
        case SolveReason::no_solution:
            write_output(args.out, "no solution\n");
            return kExitNoSolution;
        case SolveReason::precondition_failed:
            std::cerr << "precondition failed: " << body;
            return kExitPrecondition;
    }
    return kExitPrecondition;
}

int run_binary_op(const std::string& a_path, const std::string& b_path, const std::string& op,
                  std::uint64_t cap, const std::string& out_path) {
    Operand a = load_operand(a_path);
    Operand b = load_operand(b_path);
    const bool compact = a.compact && b.compact;
    std::string text;
    if (op == "mul") {
        if (compact) {
            text = format_cycle_sum(cs_product(a.cs, b.cs)) + "\n";
        } else {
            text = render_operand_like(false, product(operand_to_fdds(a, cap), operand_to_fdds(b, cap), cap));
        }
    } else {  // add
        if (compact) {
            text = format_cycle_sum(cs_add(a.cs, b.cs)) + "\n";
        } else {
            text = render_operand_like(false, sum(operand_to_fdds(a, cap), operand_to_fdds(b, cap)));
        }
    }
    write_output(out_path, text);
    return 0;
}

int run_gen(const std::string& type, std::uint64_t seed, std::uint64_t max_states,
            std::uint32_t degree, const std::string& out_prefix) {
    SplitRng rng(seed);
    if (type == "fdds") {
        Fdds f = gen_random_fdds(rng, static_cast<std::uint32_t>(std::max<std::uint64_t>(max_states, 1)));
        write_output(out_prefix.empty() ? "" : out_prefix + ".fdds", serialize_fdds(f) + "\n");
        return 0;
    }
    if (type == "cyclesum") {
        CycleSum cs = gen_random_cycle_sum(rng, std::max<std::uint64_t>(max_states, 1));
        write_output(out_prefix.empty() ? "" : out_prefix + ".cs", format_cycle_sum(cs) + "\n");
        return 0;
    }
    if (type == "pc-cyclesum") {
        CycleSum cs = gen_pseudo_cancelable_cs(rng, std::max<std::uint64_t>(max_states, 1));
        write_output(out_prefix.empty() ? "" : out_prefix + ".cs", format_cycle_sum(cs) + "\n");
        return 0;
    }
    if (type == "equation" || type == "general-equation") {
        const bool general = type == "general-equation";
        Equation eq;
        std::string truth;
        if (general) {
            FddsPoly poly = gen_pseudo_injective_fdds_poly(rng, degree, 6, true, true);
            Fdds x0 = gen_random_fdds(rng, static_cast<std::uint32_t>(std::max<std::uint64_t>(max_states, 1)));
            std::optional<Fdds> b = eval_fdds_poly(poly, x0, kDefaultStateCap);
            for (const auto& [deg, coeff] : poly.coeffs) {
                eq.coeffs.emplace(deg, Operand{false, {}, coeff});
            }
            eq.rhs = Operand{false, {}, *b};
            truth = serialize_fdds(canonical_relabel(x0)) + "\n";
        } else {
            CyclePoly poly = gen_pseudo_injective_poly(rng, degree, 8, true);
            CycleSum x0 = gen_random_cycle_sum(rng, std::max<std::uint64_t>(max_states, 1));
            CycleSum b = *poly_eval_capped(poly, x0, BigInt(1) << 512);
            for (const auto& [deg, coeff] : poly.coeffs) {
                eq.coeffs.emplace(deg, Operand{true, coeff, {}});
            }
            eq.rhs = Operand{true, b, {}};
            truth = format_cycle_sum(x0) + "\n";
        }
        write_output(out_prefix.empty() ? "" : out_prefix + ".eq", format_equation(eq));
        if (!out_prefix.empty()) write_output(out_prefix + ".truth", truth);
        return 0;
    }
    throw CLI::ValidationError("unknown --type " + type);
}

std::vector<std::uint64_t> parse_sizes(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    if (out.empty()) throw CLI::ValidationError("--sizes needs a comma-separated list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebra and equation solving for finite discrete dynamical systems"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "solve an equation file P(X) = B");
    solve->add_option("file", solve_args.file, "equation file")->required();
    solve->add_option("--mode", solve_args.mode, "auto|explicit|compact|general");
    solve->add_option("--cap", solve_args.cap, "state-count cap for explicit materialization");
    solve->add_option("--out", solve_args.out, "write the answer to a file");
    solve->add_flag("--trace", solve_args.trace, "append one row per solver iteration");

    std::string a_path, b_path, out_path;
    std::uint64_t cap = kDefaultStateCap;
    CLI::App* mul = app.add_subcommand("mul", "product of two operand files");
    mul->add_option("a", a_path)->required();
    mul->add_option("b", b_path)->required();
    mul->add_option("--cap", cap);
    mul->add_option("--out", out_path);
    CLI::App* add = app.add_subcommand("add", "sum of two operand files");
    add->add_option("a", a_path)->required();
    add->add_option("b", b_path)->required();
    add->add_option("--cap", cap);
    add->add_option("--out", out_path);
    CLI::App* iso = app.add_subcommand("iso", "isomorphism test; exit 0 iff isomorphic");
    iso->add_option("a", a_path)->required();
    iso->add_option("b", b_path)->required();
    iso->add_option("--cap", cap);
    CLI::App* canon_cmd = app.add_subcommand("canon", "canonical successor table / normalized sum");
    canon_cmd->add_option("a", a_path)->required();
    canon_cmd->add_option("--cap", cap);
    canon_cmd->add_option("--out", out_path);
    CLI::App* convert = app.add_subcommand("convert", "rewrite an operand in the other encoding");
    std::string to = "compact";
    convert->add_option("a", a_path)->required();
    convert->add_option("--to", to, "compact|explicit");
    convert->add_option("--cap", cap);
    convert->add_option("--out", out_path);

    std::uint32_t depth = 0;
    CLI::App* unroll_cmd = app.add_subcommand("unroll", "level sizes of every unroll tree");
    unroll_cmd->add_option("a", a_path)->required();
    unroll_cmd->add_option("--depth", depth, "truncation depth (default: number of states)");
    unroll_cmd->add_option("--out", out_path);

    std::string gen_type = "fdds";
    std::uint64_t seed = 1;
    std::uint64_t max_states = 16;
    std::uint32_t degree = 2;
    CLI::App* gen = app.add_subcommand("gen", "deterministic instance generation");
    gen->add_option("--type", gen_type, "fdds|cyclesum|pc-cyclesum|equation|general-equation");
    gen->add_option("--seed", seed);
    gen->add_option("--max-states", max_states);
    gen->add_option("--degree", degree);
    gen->add_option("--out", out_path, "output path prefix (default: stdout)");

    std::string bench_kind = "explicit-fast";
    std::string bench_sizes = "1000,10000,100000,1000000";
    int reps = 3;
    CLI::App* bench = app.add_subcommand("bench", "timing sweep with a fitted growth exponent");
    bench->add_option("--kind", bench_kind, "explicit-fast|compact-linear");
    bench->add_option("--sizes", bench_sizes, "comma-separated sweep");
    bench->add_option("--reps", reps);
    bench->add_option("--seed", seed);
    bench->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (mul->parsed()) return run_binary_op(a_path, b_path, "mul", cap, out_path);
        if (add->parsed()) return run_binary_op(a_path, b_path, "add", cap, out_path);
        if (iso->parsed()) {
            Fdds a = operand_to_fdds(load_operand(a_path), cap);
            Fdds b = operand_to_fdds(load_operand(b_path), cap);
            const bool same = is_isomorphic(a, b);
            std::cout << (same ? "isomorphic" : "not-isomorphic") << "\n";
            return same ? 0 : 1;
        }
        if (canon_cmd->parsed()) {
            Operand op = load_operand(a_path);
            if (op.compact) {
                write_output(out_path, format_cycle_sum(op.cs) + "\n");
            } else {
                write_output(out_path, render_fdds(op.fd));
            }
            return 0;
        }
        if (convert->parsed()) {
            Operand op = load_operand(a_path);
            if (to == "compact") {
                std::optional<CycleSum> cs =
                    op.compact ? std::optional<CycleSum>(op.cs) : fdds_to_cs(op.fd);
                if (!cs) {
                    std::cerr << "operand has transient states; no compact form\n";
                    return kExitPrecondition;
                }
                write_output(out_path, format_cycle_sum(*cs) + "\n");
            } else {
                write_output(out_path, render_fdds(operand_to_fdds(op, cap)));
            }
            return 0;
        }
        if (unroll_cmd->parsed()) {
            Fdds f = operand_to_fdds(load_operand(a_path), cap);
            const std::uint32_t d = depth ? depth : static_cast<std::uint32_t>(std::max<std::size_t>(f.size(), 1));
            TreeArena arena;
            std::string text;
            std::size_t comp_index = 0;
            for (const Component& c : components(f)) {
                std::size_t tree_index = 0;
                for (const UnrollTree& t : unroll_truncated(f, c, d, arena)) {
                    text += "component " + std::to_string(comp_index) + " tree " +
                            std::to_string(tree_index++) + " period " + std::to_string(t.period) + ":";
                    for (std::uint64_t w : arena.level_widths(t.root)) text += " " + std::to_string(w);
                    text += "\n";
                }
                ++comp_index;
            }
            write_output(out_path, text);
            return 0;
        }
        if (gen->parsed()) return run_gen(gen_type, seed, max_states, degree, out_path);
        if (bench->parsed()) {
            BenchReport report =
                bench_kind == "compact-linear"
                    ? bench_linear_compact(parse_sizes(bench_sizes), seed, reps)
                    : bench_linear_explicit_fast(parse_sizes(bench_sizes), seed, reps);
            write_output(out_path, format_bench_report(report));
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const SizeOverflowError& e) {
        std::cerr << "size overflow: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return 0;
}
