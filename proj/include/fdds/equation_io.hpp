#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "fdds/cyclesum.hpp"
#include "fdds/fdds.hpp"
#include "fdds/solver_cycles.hpp"
#include "fdds/solver_general.hpp"

namespace fdds {

// One operand of an equation file, in whichever encoding the file used.
struct Operand {
    bool compact = false;
    CycleSum cs;  // valid when compact
    Fdds fd;      // valid otherwise
};

bool operand_has_transients(const Operand& op);
CycleSum operand_to_cs(const Operand& op);  // invalid_argument when transients are present
Fdds operand_to_fdds(const Operand& op, std::uint64_t state_cap = kDefaultStateCap);

// Equation file:
//   [polynomial]
//   <degree> = compact: <cycle sum>        (or "explicit: <successor table>")
//   ...
//   [rhs]
//   compact: <cycle sum>                   (an optional "<degree> =" prefix is accepted)
// '#' comments and blank lines are ignored.
struct Equation {
    std::map<std::uint32_t, Operand> coeffs;
    Operand rhs;
};

Equation parse_equation(std::string_view text);
std::string format_equation(const Equation& eq);

CyclePoly equation_to_cycle_poly(const Equation& eq);
FddsPoly equation_to_fdds_poly(const Equation& eq, std::uint64_t state_cap = kDefaultStateCap);

// Tab-separated trace: header, then one row per iteration in compact
// notation.
std::string format_trace(const SolveTrace& trace);

}  // namespace fdds
