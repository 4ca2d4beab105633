#pragma once

#include "apxerr/netlist.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace apxerr {

using Clause = std::vector<int>; // DIMACS-style literals, var ids from 1

/// CNF of the composed system (exact circuit, approximate circuit and the
/// two's-complement subtractor producing the error bits), plus variable roles.
/// Immutable after construction.
struct CnfSystem {
  int numVars = 0;
  std::vector<Clause> clauses;
  std::vector<int> inputVars; // bit i of the shared input word -> var
  std::vector<int> errorVars; // e_0 .. e_m (e_m is the sign bit)

  int n() const { return static_cast<int>(inputVars.size()); }
  int m() const { return static_cast<int>(errorVars.size()) - 1; }

  enum class Role : uint8_t { kInput, kError, kInternal };
  Role role_of(int var) const;
  int error_index_of(int var) const; // -1 when not an error var

  void check() const;

  bool operator==(const CnfSystem& other) const = default;
};

class VarAllocator {
 public:
  int fresh() { return next_++; }
  int count() const { return next_ - 1; }

 private:
  int next_ = 1;
};

struct TseitinResult {
  std::vector<Clause> clauses;
  std::vector<int> inputVars;
  std::vector<int> outputVars;
};

/// Standard Tseitin encoding of a netlist; one variable per gate output,
/// constants as unit clauses on fresh variables. When `sharedInputVars` is
/// nonempty it supplies the variables for the primary inputs (positional).
TseitinResult tseitin(const Netlist& netlist, VarAllocator& vars,
                      std::span<const int> sharedInputVars = {});

/// Composes exact ∥ approx over shared inputs followed by an (m+1)-bit
/// subtractor E = y - ŷ = y + ~ŷ + 1 (zero-extended operands, carry beyond
/// bit m discarded). Throws InputError on input-arity mismatch.
CnfSystem build_system(const Netlist& exact, const Netlist& approx);

/// Annotated DIMACS: `p cnf V C` header, then `c input <var> <bit>` and
/// `c err <var> <bit>` comment lines, then clauses. read(write(s)) == s.
std::string write_dimacs(const CnfSystem& sys);
CnfSystem read_dimacs(std::string_view text);

} // namespace apxerr
