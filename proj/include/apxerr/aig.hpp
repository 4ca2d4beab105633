#pragma once

#include "apxerr/netlist.hpp"

#include <string>
#include <string_view>

namespace apxerr {

/// Reads the ASCII and-inverter-graph dialect ("aag", combinational subset):
/// header `aag M I L O A`, I input literal lines, O output literal lines,
/// A lines `lhs rhs0 rhs1` (rhs variables already defined), then optional
/// symbol/comment sections. Latches (L > 0) are rejected. Input/output order
/// follows the declaration order. Errors carry the offending line number.
Netlist parse_aig(std::string_view text);

/// Writes a netlist in the same dialect; non-AND gates are decomposed into
/// AND/inverter structure (inverters ride on literal polarity).
std::string write_aig(const Netlist& netlist);

} // namespace apxerr
