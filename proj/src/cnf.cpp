#include "apxerr/cnf.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace apxerr {

CnfSystem::Role CnfSystem::role_of(int var) const {
  for (int v : inputVars)
    if (v == var) return Role::kInput;
  for (int v : errorVars)
    if (v == var) return Role::kError;
  return Role::kInternal;
}

int CnfSystem::error_index_of(int var) const {
  for (size_t i = 0; i < errorVars.size(); ++i)
    if (errorVars[i] == var) return static_cast<int>(i);
  return -1;
}

void CnfSystem::check() const {
  for (const Clause& c : clauses)
    for (int lit : c) {
      int v = lit < 0 ? -lit : lit;
      if (lit == 0 || v > numVars) throw InputError("cnf: literal out of range");
    }
  std::set<int> seen;
  for (int v : inputVars) {
    if (v < 1 || v > numVars) throw InputError("cnf: input var out of range");
    if (!seen.insert(v).second) throw InputError("cnf: duplicate input var");
  }
  for (int v : errorVars) {
    if (v < 1 || v > numVars) throw InputError("cnf: error var out of range");
    if (!seen.insert(v).second)
      throw InputError("cnf: error vars must be distinct from inputs and each other");
  }
  if (errorVars.empty()) throw InputError("cnf: error bits unannotated");
}

namespace {

struct GateEmitter {
  VarAllocator& vars;
  std::vector<Clause>& out;

  int fresh_const(bool value) {
    int v = vars.fresh();
    out.push_back({value ? v : -v});
    return v;
  }

  int and_gate(std::span<const int> in) {
    int z = vars.fresh();
    Clause all{z};
    for (int x : in) {
      out.push_back({-z, x});
      all.push_back(-x);
    }
    out.push_back(std::move(all));
    return z;
  }

  int or_gate(std::span<const int> in) {
    int z = vars.fresh();
    Clause any{-z};
    for (int x : in) {
      out.push_back({z, -x});
      any.push_back(x);
    }
    out.push_back(std::move(any));
    return z;
  }

  int not_gate(int x) {
    int z = vars.fresh();
    out.push_back({z, x});
    out.push_back({-z, -x});
    return z;
  }

  int xor_gate(int x, int y) {
    int z = vars.fresh();
    out.push_back({-z, x, y});
    out.push_back({-z, -x, -y});
    out.push_back({z, -x, y});
    out.push_back({z, x, -y});
    return z;
  }

  int xnor_gate(int x, int y) {
    int z = vars.fresh();
    out.push_back({-z, x, -y});
    out.push_back({-z, -x, y});
    out.push_back({z, x, y});
    out.push_back({z, -x, -y});
    return z;
  }

  int nand_gate(std::span<const int> in) {
    int z = vars.fresh();
    Clause some{-z};
    for (int x : in) {
      out.push_back({z, x});
      some.push_back(-x);
    }
    out.push_back(std::move(some));
    return z;
  }

  int nor_gate(std::span<const int> in) {
    int z = vars.fresh();
    Clause none{z};
    for (int x : in) {
      out.push_back({-z, -x});
      none.push_back(x);
    }
    out.push_back(std::move(none));
    return z;
  }
};

} // namespace

TseitinResult tseitin(const Netlist& netlist, VarAllocator& vars,
                      std::span<const int> sharedInputVars) {
  netlist.check();
  if (!sharedInputVars.empty() && sharedInputVars.size() != netlist.inputs.size())
    throw InputError("tseitin: shared input vars arity mismatch");

  TseitinResult res;
  GateEmitter em{vars, res.clauses};
  std::vector<int> varOf(netlist.net_count(), 0);

  for (size_t i = 0; i < netlist.inputs.size(); ++i) {
    int v = sharedInputVars.empty() ? vars.fresh() : sharedInputVars[i];
    varOf[netlist.inputs[i]] = v;
    res.inputVars.push_back(v);
  }

  for (const Gate& g : netlist.gates) {
    std::vector<int> in;
    in.reserve(g.inputs.size());
    for (NetId net : g.inputs) in.push_back(varOf[net]);
    int z = 0;
    switch (g.kind) {
      case GateKind::kAnd: z = em.and_gate(in); break;
      case GateKind::kOr: z = em.or_gate(in); break;
      case GateKind::kNot: z = em.not_gate(in[0]); break;
      case GateKind::kXor: z = em.xor_gate(in[0], in[1]); break;
      case GateKind::kXnor: z = em.xnor_gate(in[0], in[1]); break;
      case GateKind::kNand: z = em.nand_gate(in); break;
      case GateKind::kNor: z = em.nor_gate(in); break;
      case GateKind::kConst0: z = em.fresh_const(false); break;
      case GateKind::kConst1: z = em.fresh_const(true); break;
    }
    varOf[g.output] = z;
  }

  for (NetId out : netlist.outputs) res.outputVars.push_back(varOf[out]);
  return res;
}

CnfSystem build_system(const Netlist& exact, const Netlist& approx) {
  if (exact.inputs.size() != approx.inputs.size())
    throw InputError("build_system: input-arity mismatch (" +
                     std::to_string(exact.inputs.size()) + " vs " +
                     std::to_string(approx.inputs.size()) + ")");

  CnfSystem sys;
  VarAllocator vars;
  for (size_t i = 0; i < exact.inputs.size(); ++i) sys.inputVars.push_back(vars.fresh());

  TseitinResult ex = tseitin(exact, vars, sys.inputVars);
  TseitinResult ap = tseitin(approx, vars, sys.inputVars);
  sys.clauses = std::move(ex.clauses);
  sys.clauses.insert(sys.clauses.end(), ap.clauses.begin(), ap.clauses.end());

  GateEmitter em{vars, sys.clauses};
  size_t m = std::max(ex.outputVars.size(), ap.outputVars.size());

  // E = y + ~ŷ + 1 over m+1 bits; operands zero-extended per bit with fresh
  // constants so no single variable couples distant subtractor positions.
  int carry = em.fresh_const(true);
  for (size_t i = 0; i <= m; ++i) {
    int yb = i < ex.outputVars.size() ? ex.outputVars[i] : em.fresh_const(false);
    int nyb = i < ap.outputVars.size() ? em.not_gate(ap.outputVars[i])
                                       : em.fresh_const(true);
    int t = em.xor_gate(yb, nyb);
    int e = em.xor_gate(t, carry);
    sys.errorVars.push_back(e);
    if (i < m) {
      int g = em.and_gate(std::array{yb, nyb});
      int p = em.and_gate(std::array{t, carry});
      carry = em.or_gate(std::array{g, p});
    }
  }

  sys.numVars = vars.count();
  sys.check();
  return sys;
}

std::string write_dimacs(const CnfSystem& sys) {
  std::ostringstream os;
  os << "p cnf " << sys.numVars << ' ' << sys.clauses.size() << '\n';
  for (size_t i = 0; i < sys.inputVars.size(); ++i)
    os << "c input " << sys.inputVars[i] << ' ' << i << '\n';
  for (size_t i = 0; i < sys.errorVars.size(); ++i)
    os << "c err " << sys.errorVars[i] << ' ' << i << '\n';
  for (const Clause& c : sys.clauses) {
    for (int lit : c) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

long parse_long(const std::string& s, int lineNo) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError("dimacs: line " + std::to_string(lineNo) + ": bad integer '" + s + "'");
  return v;
}

} // namespace

CnfSystem read_dimacs(std::string_view text) {
  CnfSystem sys;
  long declaredClauses = -1;
  std::map<long, int> inputAt, errAt; // bit index -> var
  Clause current;
  int lineNo = 0;

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string> tok = tokens_of(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (tok[0] == "c") {
      if (tok.size() == 4 && (tok[1] == "input" || tok[1] == "err")) {
        long var = parse_long(tok[2], lineNo);
        long bit = parse_long(tok[3], lineNo);
        auto& m = tok[1] == "input" ? inputAt : errAt;
        if (bit < 0 || m.count(bit))
          throw ParseError("dimacs: line " + std::to_string(lineNo) +
                           ": duplicate or negative bit annotation");
        m[bit] = static_cast<int>(var);
      }
      if (end == text.size()) break;
      continue;
    }
    if (tok[0] == "p") {
      if (declaredClauses >= 0 || tok.size() != 4 || tok[1] != "cnf")
        throw ParseError("dimacs: line " + std::to_string(lineNo) + ": malformed header");
      sys.numVars = static_cast<int>(parse_long(tok[2], lineNo));
      declaredClauses = parse_long(tok[3], lineNo);
      if (sys.numVars < 0 || declaredClauses < 0)
        throw ParseError("dimacs: line " + std::to_string(lineNo) + ": malformed header");
      if (end == text.size()) break;
      continue;
    }
    if (declaredClauses < 0)
      throw ParseError("dimacs: line " + std::to_string(lineNo) + ": clause before header");
    for (const std::string& t : tok) {
      long lit = parse_long(t, lineNo);
      if (lit == 0) {
        sys.clauses.push_back(std::move(current));
        current.clear();
      } else {
        long v = lit < 0 ? -lit : lit;
        if (v > sys.numVars)
          throw ParseError("dimacs: line " + std::to_string(lineNo) + ": literal out of range");
        current.push_back(static_cast<int>(lit));
      }
    }
    if (end == text.size()) break;
  }

  if (declaredClauses < 0) throw ParseError("dimacs: malformed header (missing)");
  if (!current.empty()) throw ParseError("dimacs: unterminated clause");
  if (static_cast<long>(sys.clauses.size()) != declaredClauses)
    throw ParseError("dimacs: clause count mismatch (declared " +
                     std::to_string(declaredClauses) + ", got " +
                     std::to_string(sys.clauses.size()) + ")");

  if (errAt.empty()) throw ParseError("dimacs: error bits unannotated");
  for (size_t i = 0; i < errAt.size(); ++i)
    if (!errAt.count(static_cast<long>(i)))
      throw ParseError("dimacs: error-bit annotations not contiguous from 0");
  for (size_t i = 0; i < inputAt.size(); ++i)
    if (!inputAt.count(static_cast<long>(i)))
      throw ParseError("dimacs: input-bit annotations not contiguous from 0");

  for (auto& [bit, var] : inputAt) sys.inputVars.push_back(var);
  for (auto& [bit, var] : errAt) sys.errorVars.push_back(var);
  sys.check();
  return sys;
}

} // namespace apxerr
