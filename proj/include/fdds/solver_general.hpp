#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fdds/fdds.hpp"
#include "fdds/solver_cycles.hpp"
#include "fdds/unroll.hpp"

namespace fdds {

class EnumerationBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Polynomial with explicit-digraph coefficients; only nonzero ones stored.
struct FddsPoly {
    std::map<std::uint32_t, Fdds> coeffs;  // degree -> coefficient
};

Fdds fdds_poly_nonconstant_sum(const FddsPoly& p);
bool fdds_poly_is_pseudo_injective(const FddsPoly& p);

// Explicit evaluation with the state-count cap checked on sizes before any
// product is materialized; nullopt once the result would exceed cap states.
std::optional<Fdds> eval_fdds_poly(const FddsPoly& p, const Fdds& x, std::uint64_t cap);

struct GeneralOutcome {
    SolveReason reason = SolveReason::no_solution;
    std::optional<Fdds> solution;       // present iff reason == solved
    std::vector<Fdds> components_added;  // connected systems, in greedy order
    bool verified = false;               // final canon(P(Y)) == canon(B) check
    std::string diagnostic;
};

// P(X) = B for arbitrary systems (transients allowed), P pseudo-injective.
// Every returned solution passes the final canonical verification.
GeneralOutcome solve_poly_general(const FddsPoly& p, const Fdds& b, const SolveOptions& opts = {});

struct TreeCandidate {
    UnrollTree tree;
    std::uint32_t degree = 0;
};

// Candidate trees x with min(U(A_i)) * x^i = min(U(B_restricted)) for some
// degree i >= 1, found by backtracking over levelwise factorizations and
// verified by tree products. Sorted ascending under tree_compare.
std::vector<TreeCandidate> tree_divide_candidates(const FddsPoly& p_restricted,
                                                  const Fdds& b_restricted, std::uint32_t depth,
                                                  TreeArena& arena,
                                                  std::uint64_t search_budget = 1u << 20);

// The minimal candidate, or nullopt when the division has no solution within
// the budget.
std::optional<TreeCandidate> min_tree_divide(const FddsPoly& p_restricted, const Fdds& b_restricted,
                                             std::uint32_t depth, TreeArena& arena);

// lcm(p, anti_lcm(b_min, a_min)): the normalized cycle length of the next
// component to add. a_min must divide b_min.
std::uint64_t candidate_cycle_length(std::uint64_t a_min, std::uint64_t b_min, std::uint64_t p);

// All systems with exactly n states, one per isomorphism class. Deterministic
// order (sorted canonical codes).
std::vector<Fdds> enumerate_fdds(std::uint32_t n, std::uint64_t* budget = nullptr);

// Exhaustive oracle: every X with |X| <= max_states and P(X) = B, as
// canonically relabeled systems sorted by canonical code.
std::vector<Fdds> brute_force_solve(const FddsPoly& p, const Fdds& b, std::uint32_t max_states,
                                    std::uint64_t budget = 4'000'000);

// The unique solutions maximizing / minimizing the component count among the
// oracle's answers; throws std::logic_error when either is not unique.
std::pair<Fdds, Fdds> count_extreme_solutions(const FddsPoly& p, const Fdds& b,
                                              std::uint32_t max_states);

}  // namespace fdds
