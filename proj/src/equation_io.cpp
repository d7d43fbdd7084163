#include "fdds/equation_io.hpp"

#include <charconv>
#include <sstream>

namespace fdds {

bool operand_has_transients(const Operand& op) {
    if (op.compact) return false;
    return !is_permutation(op.fd);
}

CycleSum operand_to_cs(const Operand& op) {
    if (op.compact) return op.cs;
    std::optional<CycleSum> cs = fdds_to_cs(op.fd);
    if (!cs) throw std::invalid_argument("operand has transient states and no compact form");
    return *cs;
}

Fdds operand_to_fdds(const Operand& op, std::uint64_t state_cap) {
    if (!op.compact) return op.fd;
    return cs_to_fdds(op.cs, state_cap);
}

namespace {

std::string_view trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

Operand parse_operand(std::string_view body) {
    Operand op;
    if (body.starts_with("compact:")) {
        op.compact = true;
        op.cs = parse_cycle_sum(trim(body.substr(8)));
    } else if (body.starts_with("explicit:")) {
        op.compact = false;
        op.fd = parse_fdds(body.substr(9));
    } else {
        throw ParseError("operand must start with 'compact:' or 'explicit:'");
    }
    return op;
}

}  // namespace

Equation parse_equation(std::string_view text) {
    Equation eq;
    enum class Section { none, polynomial, rhs } section = Section::none;
    bool have_rhs = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                                   : nl - pos));
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        if (line.empty() || line.front() == '#') continue;
        if (line == "[polynomial]") {
            section = Section::polynomial;
            continue;
        }
        if (line == "[rhs]") {
            section = Section::rhs;
            continue;
        }
        if (section == Section::none) throw ParseError("content before any section header");
        if (section == Section::polynomial) {
            std::size_t eqpos = line.find('=');
            if (eqpos == std::string_view::npos) throw ParseError("polynomial line needs '<degree> ='");
            std::string_view degs = trim(line.substr(0, eqpos));
            std::uint32_t degree = 0;
            auto [ptr, ec] = std::from_chars(degs.data(), degs.data() + degs.size(), degree);
            if (ec != std::errc() || ptr != degs.data() + degs.size()) {
                throw ParseError("bad degree '" + std::string(degs) + "'");
            }
            if (eq.coeffs.count(degree)) throw ParseError("duplicate degree " + std::to_string(degree));
            eq.coeffs.emplace(degree, parse_operand(trim(line.substr(eqpos + 1))));
        } else {
            if (have_rhs) throw ParseError("multiple [rhs] lines");
            std::string_view body = line;
            // tolerate a "<degree> =" prefix on the right-hand side
            std::size_t eqpos = line.find('=');
            if (eqpos != std::string_view::npos && line.find(':') > eqpos) {
                body = trim(line.substr(eqpos + 1));
            }
            eq.rhs = parse_operand(body);
            have_rhs = true;
        }
    }
    if (eq.coeffs.empty()) throw ParseError("equation has no [polynomial] coefficients");
    if (!have_rhs) throw ParseError("equation has no [rhs]");
    return eq;
}

namespace {

std::string format_operand(const Operand& op) {
    if (op.compact) return "compact: " + format_cycle_sum(op.cs);
    return "explicit: " + serialize_fdds(op.fd);
}

}  // namespace

std::string format_equation(const Equation& eq) {
    std::string out = "[polynomial]\n";
    for (const auto& [deg, op] : eq.coeffs) {
        out += std::to_string(deg);
        out += " = ";
        out += format_operand(op);
        out += '\n';
    }
    out += "[rhs]\n";
    out += format_operand(eq.rhs);
    out += '\n';
    return out;
}

CyclePoly equation_to_cycle_poly(const Equation& eq) {
    CyclePoly p;
    for (const auto& [deg, op] : eq.coeffs) {
        CycleSum cs = operand_to_cs(op);
        if (!cs.is_zero()) p.coeffs.emplace(deg, std::move(cs));
    }
    return p;
}

FddsPoly equation_to_fdds_poly(const Equation& eq, std::uint64_t state_cap) {
    FddsPoly p;
    for (const auto& [deg, op] : eq.coeffs) {
        Fdds fd = operand_to_fdds(op, state_cap);
        if (!fd.empty()) p.coeffs.emplace(deg, std::move(fd));
    }
    return p;
}

std::string format_trace(const SolveTrace& trace) {
    std::string out = "B_remaining\tY\tC\tP(Y+C)\tP(Y)\tdelta\n";
    for (const SolveTraceRow& row : trace.rows) {
        out += format_cycle_sum(row.b_remaining);
        out += '\t';
        out += format_cycle_sum(row.y_partial);
        out += '\t';
        out += format_cycle_sum(row.c_chosen);
        out += '\t';
        out += format_cycle_sum(row.p_of_y_plus_c);
        out += '\t';
        out += format_cycle_sum(row.p_of_y);
        out += '\t';
        out += format_cycle_sum(row.delta);
        out += '\n';
    }
    return out;
}

}  // namespace fdds
